#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "recmon/alphabet.hpp"
#include "recmon/trace.hpp"

namespace recmon {

class Monitor;
using MonitorPtr = std::shared_ptr<const Monitor>;

/* Monitor term.  Concrete grammar ('.' binds tightest, then '+', then '&',
   then '|'; variables uppercase, actions lowercase; rec extends as far
   right as possible):

     M ::= yes | no | end | a.M | M + M | M & M | M | M | rec X.M | X

   '&' is the conjunctive parallel product and '|' the disjunctive one;
   '+' is nondeterministic choice. */
class Monitor {
 public:
  enum class Kind { Yes, No, End, Act, Choice, ParAnd, ParOr, Rec, Var };

  Kind kind() const { return kind_; }
  const Action& action() const { return action_; }      // Act
  const std::string& variable() const { return var_; }  // Rec, Var
  const MonitorPtr& child() const { return left_; }     // Act prefix, Rec body
  const MonitorPtr& left() const { return left_; }      // Choice/ParAnd/ParOr
  const MonitorPtr& right() const { return right_; }

  bool is_verdict() const {
    return kind_ == Kind::Yes || kind_ == Kind::No || kind_ == Kind::End;
  }

  static MonitorPtr yes();
  static MonitorPtr no();
  static MonitorPtr end();
  static MonitorPtr act(Action a, MonitorPtr m);
  static MonitorPtr choice(MonitorPtr l, MonitorPtr r);
  static MonitorPtr par_and(MonitorPtr l, MonitorPtr r);
  static MonitorPtr par_or(MonitorPtr l, MonitorPtr r);
  static MonitorPtr rec(std::string var, MonitorPtr body);
  static MonitorPtr var(std::string name);

 private:
  Monitor(Kind k, Action a, std::string v, MonitorPtr l, MonitorPtr r)
      : kind_(k),
        action_(std::move(a)),
        var_(std::move(v)),
        left_(std::move(l)),
        right_(std::move(r)) {}

  Kind kind_;
  Action action_;
  std::string var_;
  MonitorPtr left_;
  MonitorPtr right_;
};

bool equal(const MonitorPtr& a, const MonitorPtr& b);

/* Minimal-parenthesis text form; parse_monitor(print_monitor(m)) is
   structurally equal to m. */
std::string print_monitor(const MonitorPtr& m);
MonitorPtr parse_monitor(const std::string& text);

/* True iff the term contains no parallel operator. */
bool is_regular(const MonitorPtr& m);

std::set<std::string> free_monitor_variables(const MonitorPtr& m);

MonitorPtr substitute_monitor(const MonitorPtr& m, const std::string& var,
                              const MonitorPtr& value);

/* Executable monitor semantics.  States are hash-consed canonical terms:
   choice and the parallel products are flattened, deduplicated and sorted,
   and verdicts inside a parallel product are combined on the spot (no
   absorbs a conjunctive product, yes a disjunctive one, the opposite
   verdict drops out), all of which is verdict-preserving.  Transitions
   follow the small-step rules: action prefixes fire, verdicts self-loop on
   every action, recursion unfolds inside the step without emitting
   anything, choice commits on any step of a summand, parallel products
   synchronise on actions.  Since verdict combination happens when terms
   are built, no silent transitions remain. */
class MonitorRuntime {
 public:
  using Id = uint32_t;
  using StateSet = std::vector<Id>;  // sorted, unique

  MonitorRuntime(MonitorPtr root, Alphabet sigma, size_t state_cap = 100000);

  const Alphabet& alphabet() const { return sigma_; }
  Id root() const { return root_; }

  /* Initial state set: the silent closure of the root term. */
  StateSet initial();

  /* Silent closure followed by a-derivatives followed by silent closure. */
  StateSet step(const StateSet& states, const Action& a);

  bool contains_yes(const StateSet& states) const;
  bool contains_no(const StateSet& states) const;

  MonitorPtr term(Id id) const;
  size_t interned_count() const { return nodes_.size(); }

  std::vector<Id> silent_successors(Id id);
  std::vector<std::pair<Action, Id>> action_successors(Id id);

 private:
  struct Node {
    Monitor::Kind kind;
    std::string label;  // action for Act, variable for Rec/Var
    std::vector<Id> kids;
    MonitorPtr ast;
  };
  /* One transition; empty label means a silent step. */
  struct Edge {
    Action label;
    Id target;
    bool operator==(const Edge&) const = default;
  };

  Id intern(const MonitorPtr& m);
  Id intern_node(Monitor::Kind k, std::string label, std::vector<Id> kids);
  Id intern_composite(Monitor::Kind k, std::vector<Id> kids);
  const std::vector<Edge>& edges(Id id);
  std::vector<Edge> compute_edges(Id id,
                                  const std::map<Id, std::vector<Edge>>& table);
  Id unfold_rec(Id id);
  StateSet closure(StateSet states);

  Alphabet sigma_;
  size_t state_cap_;
  Id root_ = 0;
  std::vector<Node> nodes_;
  std::map<std::tuple<Monitor::Kind, std::string, std::vector<Id>>, Id> index_;
  std::map<Id, std::vector<Edge>> edges_;
  std::map<Id, Id> unfold_cache_;
};

enum class RunStatus { Accepted, Rejected, NoVerdict };

/* Result of running a monitor over one trace.  On a verdict, prefix_length
   is the number of events consumed when the verdict first appeared;
   conflicting reports that the other verdict also became reachable later in
   the same run (or at the same instant, in which case rejection wins). */
struct RunOutcome {
  RunStatus status = RunStatus::NoVerdict;
  size_t prefix_length = 0;
  bool conflicting = false;
};

RunOutcome run_finite(MonitorRuntime& rt, const FiniteTrace& s);
/* Exact decision over a lasso: iterates the loop until the
   (loop offset, state set) pair repeats. */
RunOutcome decide_lasso(MonitorRuntime& rt, const FinfiniteTrace& t);
RunOutcome run_trace(MonitorRuntime& rt, const FinfiniteTrace& t);

std::string run_status_name(RunStatus s);

}  // namespace recmon
