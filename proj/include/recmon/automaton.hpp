#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recmon/alphabet.hpp"
#include "recmon/monitor.hpp"

namespace recmon {

/* Verdict carried by an automaton state.  Both marks a nondeterministic
   state set holding both verdicts; determinization refuses such inputs. */
enum class VerdictMark { None, Yes, No, Both };

/* Finite-state carrier for monitor analyses.  States of the
   nondeterministic form are silent-closed reachable term sets; names list
   the member terms, sorted, so output is reproducible.  Yes/No states are
   sinks.  The deterministic form has a total transition function. */
struct VerdictAutomaton {
  Alphabet alphabet;
  size_t initial = 0;
  std::vector<std::string> names;
  std::vector<std::map<Action, std::vector<size_t>>> edges;
  std::vector<VerdictMark> marks;
  bool deterministic = false;

  size_t state_count() const { return names.size(); }
};

/* Explores all monitor derivatives; the Yes-reaching (No-reaching) words
   are exactly the accepted (rejected) finite traces. */
VerdictAutomaton to_automaton(const MonitorPtr& m, const Alphabet& sigma,
                              size_t state_cap = 100000);

/* Subset construction.  A subset holding a Yes (No) source collapses to a
   Yes (No) sink; missing transitions go to a verdict-free sink.  Throws
   ConflictingVerdictsError with a shortest witness word if some reachable
   subset holds both verdicts. */
VerdictAutomaton determinize(const VerdictAutomaton& a);

/* Deterministic automaton back to a monitor term: one summand per edge
   that can still reach a verdict, one rec binder per looping state.  A
   state from which no verdict is reachable renders as end (by omission of
   summands). */
MonitorPtr to_regular_monitor(const VerdictAutomaton& det);

struct EquivalenceResult {
  bool equivalent = false;
  std::optional<FiniteTrace> counterexample;  // word with differing verdicts
};

/* Exact comparison of both verdict languages via the product of the
   determinized automata. */
EquivalenceResult verdict_equivalent(const MonitorPtr& m1, const MonitorPtr& m2,
                                     const Alphabet& sigma,
                                     size_t state_cap = 100000);

enum class VerdictSide { Yes, No };

/* Compares a single verdict language (the Yes-reaching or No-reaching
   words) of two monitors.  Unlike verdict_equivalent this tolerates a
   monitor whose other verdict conflicts, since only one side is tracked. */
EquivalenceResult language_equal(const MonitorPtr& m1, const MonitorPtr& m2,
                                 VerdictSide side, const Alphabet& sigma,
                                 size_t state_cap = 100000);

/* Reachability facts about a monitor's verdicts: informative means the
   verdict is reachable at all, persistent means it stays reachable from
   every reachable state.  persistent_any asks that every reachable state
   can still reach some verdict (the two polarities combined). */
struct MonitorClass {
  bool informative_sat = false;
  bool informative_viol = false;
  bool persistent_sat = false;
  bool persistent_viol = false;
  bool persistent_any = false;

  bool informative() const { return informative_sat || informative_viol; }
};

MonitorClass classify_monitor(const MonitorPtr& m, const Alphabet& sigma,
                              size_t state_cap = 100000);

std::string to_dot(const VerdictAutomaton& a);

}  // namespace recmon
