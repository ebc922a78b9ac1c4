#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace recmon {

/* Base class for all library errors. */
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/* Malformed concrete syntax; position is a byte offset into the input. */
struct SyntaxError : Error {
  size_t position;
  SyntaxError(const std::string& what, size_t pos)
      : Error(what + " (at offset " + std::to_string(pos) + ")"),
        position(pos) {}
};

/* An action outside the session alphabet. */
struct UnknownActionError : Error {
  std::string action;
  explicit UnknownActionError(const std::string& a)
      : Error("unknown action '" + a + "'"), action(a) {}
};

struct UnboundVariableError : Error {
  std::string variable;
  explicit UnboundVariableError(const std::string& v)
      : Error("unbound variable '" + v + "'"), variable(v) {}
};

struct NotAFixpointError : Error {
  NotAFixpointError() : Error("formula is not a fixpoint") {}
};

struct OpenFormulaError : Error {
  explicit OpenFormulaError(const std::string& v)
      : Error("formula has free variable '" + v + "'") {}
};

struct UnguardedError : Error {
  explicit UnguardedError(const std::string& v)
      : Error("variable '" + v + "' is not guarded by a modality") {}
};

struct NotInFragmentError : Error {
  explicit NotInFragmentError(const std::string& what) : Error(what) {}
};

struct NotRegularError : Error {
  NotRegularError() : Error("monitor contains parallel operators") {}
};

struct NotInformativeError : Error {
  explicit NotInformativeError(const std::string& what) : Error(what) {}
};

/* Interned-state cap exceeded while executing a monitor. */
struct StateExplosionError : Error {
  size_t cap;
  explicit StateExplosionError(size_t c)
      : Error("state cap exceeded (" + std::to_string(c) + " states)"),
        cap(c) {}
};

/* A monitor reaches both verdicts on one word; witness is that word. */
struct ConflictingVerdictsError : Error {
  std::vector<std::string> witness;
  explicit ConflictingVerdictsError(std::vector<std::string> word);
};

}  // namespace recmon
