#pragma once

#include <string>
#include <vector>

#include "recmon/errors.hpp"

namespace recmon {

using Action = std::string;

/* Finite action alphabet with a fixed declaration order.  The order is
   observable: summation completion, trace enumeration and tie-breaking all
   follow it. */
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Action> actions);

  /* Parses "f,s,r".  Whitespace around names is ignored. */
  static Alphabet parse(const std::string& comma_separated);

  const std::vector<Action>& actions() const { return actions_; }
  size_t size() const { return actions_.size(); }
  bool empty() const { return actions_.empty(); }
  bool contains(const Action& a) const;
  size_t index_of(const Action& a) const;  // throws UnknownActionError
  const Action& at(size_t i) const { return actions_[i]; }
  std::string to_string() const;
  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<Action> actions_;
};

bool is_action_name(const std::string& s);    // [a-z][a-z0-9_]*
bool is_variable_name(const std::string& s);  // [A-Z][A-Za-z0-9_]*

}  // namespace recmon
