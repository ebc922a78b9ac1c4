#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recmon/formula.hpp"
#include "recmon/session.hpp"
#include "recmon/trace.hpp"

namespace recmon {

/* Exact membership t ∈ ⟦f⟧.  The trace becomes a finite linear state graph
   (a finite trace ends in a dead-end state, a lasso closes a cycle) and
   fixpoints are computed by iteration over state subsets.  A box holds
   vacuously at a state without a matching edge, so the finished trace
   satisfies every box.  Throws OpenFormulaError / UnguardedError. */
bool eval(const FormulaPtr& f, const FinfiniteTrace& t);

/* Syntactic derivative of f by one action (then by a word, left to right):
   <b>p by a is p when b = a and ff otherwise; [b]p by a is p when b = a and
   tt otherwise; fixpoints unfold first.  s·t ∈ ⟦f⟧ iff t ∈ ⟦residual(f,s)⟧. */
FormulaPtr residual(const FormulaPtr& f, const Action& a);
FormulaPtr residual(const FormulaPtr& f, const FiniteTrace& s);

enum class Polarity { Positive, Negative };

enum class DeterminationStatus { Determined, NotDetermined, UnknownUpToBound };

/* Which rule produced a determination answer. */
enum class DecisionPath { FragmentExact, Residual, Decomposition, BoundedSearch };

struct DeterminationResult {
  DeterminationStatus status = DeterminationStatus::UnknownUpToBound;
  Polarity polarity = Polarity::Positive;
  /* NotDetermined only: a full trace s·e with eval(f, s·e) refuting the
     claimed determination. */
  std::optional<FinfiniteTrace> counterexample;
  size_t bound = 0;  // extension sizes searched (bounded path only)
  DecisionPath path = DecisionPath::BoundedSearch;

  bool determined() const { return status == DeterminationStatus::Determined; }
};

/* Does s positively (negatively) determine f: is every finfinite extension
   of s inside (outside) ⟦f⟧?  Exact when a fragment, residual or
   decomposition rule applies; otherwise a bounded search over extensions of
   size ≤ session.oracle_bound (finite words before lassos of equal size,
   length-lexicographic), returning the first counterexample or
   UnknownUpToBound. */
DeterminationResult determines(const FormulaPtr& f, const FiniteTrace& s,
                               Polarity polarity, const Session& session);

struct DeterminingSets {
  std::vector<FiniteTrace> minimal_positive;
  std::vector<FiniteTrace> minimal_negative;
  size_t probe_bound = 0;  // oracle bound used per candidate
};

/* Prefix-minimal positively / negatively determining traces of length ≤ n.
   Only exact or search-confirmed determinations enter the sets; the probe
   bound (default 2n) is recorded so callers can treat non-membership as a
   semi-decision. */
DeterminingSets d_sets_upto(const FormulaPtr& f, size_t n,
                            const Session& session,
                            std::optional<size_t> probe = std::nullopt);

std::string polarity_name(Polarity p);
std::string decision_path_name(DecisionPath p);

}  // namespace recmon
