#pragma once

#include <functional>
#include <string>
#include <vector>

#include "recmon/alphabet.hpp"

namespace recmon {

using FiniteTrace = std::vector<Action>;

/* A finite or ultimately-periodic trace.  Text forms:

     eps         the empty trace
     a.b.c       finite trace
     a.b(c.d)^w  lasso: prefix a.b, then c.d repeated forever
     (c)^w       lasso with empty prefix
*/
class FinfiniteTrace {
 public:
  FinfiniteTrace() = default;  // eps
  static FinfiniteTrace finite(FiniteTrace events);
  static FinfiniteTrace lasso(FiniteTrace prefix, FiniteTrace loop);
  static FinfiniteTrace parse(const std::string& text);

  bool is_finite() const { return loop_.empty(); }
  const FiniteTrace& prefix() const { return prefix_; }
  const FiniteTrace& loop() const { return loop_; }
  /* Total number of distinct suffix positions (prefix + loop states). */
  size_t position_count() const { return prefix_.size() + loop_.size() + (loop_.empty() ? 1 : 0); }
  std::string to_string() const;
  FinfiniteTrace prepend(const FiniteTrace& s) const;
  bool operator==(const FinfiniteTrace&) const = default;

 private:
  FiniteTrace prefix_;
  FiniteTrace loop_;
};

std::string print_trace(const FiniteTrace& t);
/* Parses a finite trace; rejects lassos. */
FiniteTrace parse_finite_trace(const std::string& text);

/* All finite traces of length <= max_len, in length-lexicographic order
   with respect to the alphabet's declaration order. */
std::vector<FiniteTrace> finite_traces_upto(const Alphabet& sigma,
                                            size_t max_len);

/* Extension stream used by the determination oracles: sizes 0..max_size;
   within one size first the finite traces in lexicographic order, then the
   lassos u(v)^w with |u|+|v| equal to the size (|u| ascending, then u, then
   v lexicographically).  visit returns false to stop early. */
void for_each_extension(const Alphabet& sigma, size_t max_size,
                        const std::function<bool(const FinfiniteTrace&)>& visit);

/* Finite traces (length <= finite_len) followed by lassos (|u|+|v| <=
   lasso_size): the bounded universe the semantic cross-checks run on. */
std::vector<FinfiniteTrace> bounded_universe(const Alphabet& sigma,
                                             size_t finite_len,
                                             size_t lasso_size);

}  // namespace recmon
