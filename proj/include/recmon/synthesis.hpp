#pragma once

#include <string>
#include <vector>

#include "recmon/formula.hpp"
#include "recmon/monitor.hpp"
#include "recmon/session.hpp"

namespace recmon {

/* What a synthesized monitor promises.  SoundViolationComplete: rejects
   exactly the violating traces (safety fragment); SoundSatisfactionComplete:
   accepts exactly the satisfying ones (co-safety fragment); BoundedMaximal:
   verdicts exactly at the oracle-confirmed determining prefixes up to the
   recorded bound. */
enum class Guarantee {
  SoundOnly,
  SoundViolationComplete,
  SoundSatisfactionComplete,
  BoundedMaximal,
};

struct SynthesisOutput {
  MonitorPtr monitor;
  Guarantee guarantee = Guarantee::SoundOnly;
  size_t bound = 0;  // BoundedMaximal only
};

/* Fragment synthesis: no for ff, yes for tt, & to the conjunctive product,
   | to the disjunctive one, fixpoints to rec, [a]p to a.p + sum of b.yes
   over the other actions (b.no for <a>p), summands in alphabet order with
   the matching action first.  Throws NotInFragmentError unless the formula
   is in the safety or co-safety grammar; the co-safety guarantee is
   reported when the formula is in both. */
SynthesisOutput synthesize(const FormulaPtr& f, const Alphabet& sigma);

/* Inverse direction for regular monitors: no becomes ff, yes and end
   become tt, + becomes a conjunction, a.m a box, rec a greatest fixpoint.
   A no standing as a choice branch only fires after the next event, so it
   translates to a box of ff per alphabet action rather than bare ff; a rec
   around a verdict is the verdict.  The monitor is sound and
   violation-complete for the result.  Throws NotRegularError on parallel
   operators. */
FormulaPtr monitor_to_formula(const MonitorPtr& m, const Alphabet& sigma);

/* Same, with the alphabet read off the monitor's own action prefixes. */
FormulaPtr monitor_to_formula(const MonitorPtr& m);

/* Prefix-tree monitor with verdicts exactly at the minimal determining
   traces of length ≤ n that the oracle confirmed (d_sets_upto).  Sound
   relative to those confirmations; traces whose status stayed unknown
   never produce a verdict. */
SynthesisOutput bounded_maximal_monitor(const FormulaPtr& f, size_t n,
                                        const Session& session);

struct SoundnessViolation {
  FinfiniteTrace trace;
  bool accepted = false;  // otherwise rejected
  bool holds = false;     // eval(f, trace)
};

struct SoundnessReport {
  std::vector<SoundnessViolation> violations;
  size_t traces_checked = 0;
  bool sound() const { return violations.empty(); }
};

/* Replays the monitor against eval on every finite trace of length ≤
   max_len and every lasso with |u|+|v| ≤ max_lasso: acceptance of a
   non-model or rejection of a model is a violation. */
SoundnessReport check_soundness_upto(const MonitorPtr& m, const FormulaPtr& f,
                                     size_t max_len, size_t max_lasso,
                                     const Alphabet& sigma,
                                     size_t state_cap = 100000);

std::string guarantee_name(Guarantee g);

}  // namespace recmon
