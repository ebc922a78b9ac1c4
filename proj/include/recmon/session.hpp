#pragma once

#include <cstddef>

#include "recmon/alphabet.hpp"

namespace recmon {

/* Analysis configuration shared by the oracles, the classifiers and the
   CLI.  The bounds define the finite universes every brute-force check
   runs over. */
struct Session {
  Alphabet alphabet;
  size_t oracle_bound = 6;   // max extension size searched by determination
  size_t prefix_depth = 3;   // prefix universe bound for universal checks
  size_t trace_len = 5;      // finite-trace bound for semantic cross-checks
  size_t lasso_size = 4;     // |u|+|v| bound for lasso cross-checks
  size_t state_cap = 100000; // interned monitor-state cap
  bool strict_implicit_conjunct = false;  // reject f1 & tt style coercions

  explicit Session(Alphabet sigma) : alphabet(std::move(sigma)) {}
};

}  // namespace recmon
