#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recmon/formula.hpp"
#include "recmon/semantics.hpp"
#include "recmon/session.hpp"

namespace recmon {

enum class PzStatus { Monitorable, NotMonitorableUpToBound, NotMonitorable };
enum class PzQuantifier { Existential, Universal };

/* Outcome of a monitorability probe.  A Monitorable result from the
   existential checks carries the witness extension (which passes
   determines); the universal check carries one witness per probed prefix
   or the first failing prefix.  exact marks answers backed by a fragment
   argument rather than the bounded search. */
struct PzResult {
  PzStatus status = PzStatus::NotMonitorableUpToBound;
  PzQuantifier quantifier = PzQuantifier::Existential;
  std::optional<FiniteTrace> witness;
  Polarity witness_polarity = Polarity::Negative;
  std::vector<std::pair<FiniteTrace, FiniteTrace>> prefix_witnesses;
  std::optional<FiniteTrace> failing_prefix;
  size_t bound = 0;
  size_t probed_prefixes = 0;
  bool exact = false;
  std::string reason;
};

/* Is some extension r (|r| ≤ bound) of s positively or negatively
   determining?  Extensions are probed in length-lexicographic order,
   positive polarity first per candidate. */
PzResult s_monitorable(const FormulaPtr& f, const FiniteTrace& s,
                       size_t bound, const Session& session);

/* s_monitorable at the empty trace, upgraded to an exact answer via the
   informative-fragment witness when membership holds. */
PzResult epz_monitorable(const FormulaPtr& f, size_t bound,
                         const Session& session);

/* s_monitorable for every prefix of length ≤ prefix_depth; exact fast
   path through the persistently-informative fragment's extension
   constructions. */
PzResult upz_monitorable(const FormulaPtr& f, size_t prefix_depth,
                         size_t bound, const Session& session);

/* The three truth domains a prefix evaluation may range over:
   {ff,?}, {tt,?}, and {tt,ff,?}. */
enum class TruthDomain { FfUnknown, TtUnknown, TtFfUnknown };

enum class ThreeVal { True, False, Unknown };

struct FfmValue {
  ThreeVal value = ThreeVal::Unknown;
  bool exact = false;  // fragment- or counterexample-backed
};

/* Per-prefix evaluation: ff when s negatively determines (domains
   containing ff), tt when s satisfies and positively determines (domains
   containing tt), otherwise unknown. */
FfmValue ffm_evaluate(const FormulaPtr& f, const FiniteTrace& s,
                      TruthDomain domain, const Session& session);

struct FfmMonitorability {
  bool monitorable = true;
  /* A pair s ∈ P, s' ∉ P whose evaluations coincide. */
  std::optional<std::pair<FiniteTrace, FiniteTrace>> witness_pair;
  size_t prefix_depth = 0;
  size_t bound = 0;
};

/* Bounded check that evaluation distinguishes members from non-members:
   over all finite s, s' up to session.prefix_depth, s ∈ P and s' ∉ P must
   yield different domain values. */
FfmMonitorability ffm_monitorable(const FormulaPtr& f, TruthDomain domain,
                                  const Session& session);

std::string pz_status_name(PzStatus s);
std::string truth_domain_name(TruthDomain d);
std::string three_val_name(ThreeVal v);

}  // namespace recmon
