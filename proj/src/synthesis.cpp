#include "recmon/synthesis.hpp"

#include <algorithm>
#include <map>

#include "recmon/fragments.hpp"
#include "recmon/semantics.hpp"

namespace recmon {

namespace {

/* a.body first, then b.verdict for every other action in alphabet order. */
MonitorPtr modal_sum(const Action& a, MonitorPtr body, MonitorPtr other,
                     const Alphabet& sigma) {
  MonitorPtr sum = Monitor::act(a, std::move(body));
  for (const Action& b : sigma.actions()) {
    if (b == a) continue;
    sum = Monitor::choice(sum, Monitor::act(b, other));
  }
  return sum;
}

MonitorPtr synth(const FormulaPtr& f, const Alphabet& sigma) {
  switch (f->kind()) {
    case Formula::Kind::Truth:
      return Monitor::yes();
    case Formula::Kind::Falsity:
      return Monitor::no();
    case Formula::Kind::Box:
      return modal_sum(f->action(), synth(f->child(), sigma), Monitor::yes(),
                       sigma);
    case Formula::Kind::Diamond:
      return modal_sum(f->action(), synth(f->child(), sigma), Monitor::no(),
                       sigma);
    case Formula::Kind::And:
      return Monitor::par_and(synth(f->left(), sigma), synth(f->right(), sigma));
    case Formula::Kind::Or:
      return Monitor::par_or(synth(f->left(), sigma), synth(f->right(), sigma));
    case Formula::Kind::LeastFix:
    case Formula::Kind::GreatestFix:
      return Monitor::rec(f->variable(), synth(f->child(), sigma));
    case Formula::Kind::Var:
      return Monitor::var(f->variable());
  }
  return Monitor::end();
}

}  // namespace

SynthesisOutput synthesize(const FormulaPtr& f, const Alphabet& sigma) {
  require_well_formed(f);
  bool chml = in_chml(f);
  bool shml = in_shml(f);
  if (!chml && !shml)
    throw NotInFragmentError(
        "synthesis needs the safety or co-safety grammar, got: " +
        print_formula(f));
  SynthesisOutput out;
  out.monitor = synth(f, sigma);
  out.guarantee = chml ? Guarantee::SoundSatisfactionComplete
                       : Guarantee::SoundViolationComplete;
  return out;
}

namespace {

bool is_verdict(const MonitorPtr& m) {
  return m->kind() == Monitor::Kind::Yes || m->kind() == Monitor::Kind::No ||
         m->kind() == Monitor::Kind::End;
}

void flatten_choice(const MonitorPtr& m, std::vector<MonitorPtr>& out) {
  if (m->kind() == Monitor::Kind::Choice) {
    flatten_choice(m->left(), out);
    flatten_choice(m->right(), out);
  } else {
    out.push_back(m);
  }
}

/* Mirrors runtime interning on regular terms: rec around a verdict is the
   verdict, duplicate choice branches collapse. */
MonitorPtr normalize_regular(const MonitorPtr& m) {
  switch (m->kind()) {
    case Monitor::Kind::Yes:
    case Monitor::Kind::No:
    case Monitor::Kind::End:
    case Monitor::Kind::Var:
      return m;
    case Monitor::Kind::Act:
      return Monitor::act(m->action(), normalize_regular(m->child()));
    case Monitor::Kind::Rec: {
      MonitorPtr body = normalize_regular(m->child());
      if (is_verdict(body)) return body;
      return Monitor::rec(m->variable(), body);
    }
    case Monitor::Kind::Choice: {
      std::vector<MonitorPtr> kids;
      flatten_choice(normalize_regular(m->left()), kids);
      flatten_choice(normalize_regular(m->right()), kids);
      std::vector<MonitorPtr> unique;
      for (const MonitorPtr& kid : kids) {
        bool seen = std::any_of(unique.begin(), unique.end(),
                                [&](const MonitorPtr& u) {
                                  return equal(u, kid);
                                });
        if (!seen) unique.push_back(kid);
      }
      MonitorPtr acc = unique.front();
      for (size_t i = 1; i < unique.size(); ++i)
        acc = Monitor::choice(acc, unique[i]);
      return acc;
    }
    case Monitor::Kind::ParAnd:
    case Monitor::Kind::ParOr:
      throw NotRegularError();
  }
  return m;
}

/* A no that is one branch of a choice cannot fire until the next event, so
   its falsity hides behind one box per alphabet action. */
FormulaPtr deferred_falsity(const Alphabet& sigma) {
  FormulaPtr out;
  for (const Action& a : sigma.actions()) {
    FormulaPtr leaf = Formula::box(a, Formula::falsity());
    out = out ? Formula::conj(std::move(out), std::move(leaf))
              : std::move(leaf);
  }
  return out ? out : Formula::truth();
}

FormulaPtr formula_of(const MonitorPtr& m, bool choice_branch,
                      const Alphabet& sigma) {
  switch (m->kind()) {
    case Monitor::Kind::No:
      return choice_branch ? deferred_falsity(sigma) : Formula::falsity();
    case Monitor::Kind::Yes:
    case Monitor::Kind::End:
      return Formula::truth();
    case Monitor::Kind::Act:
      return Formula::box(m->action(),
                          formula_of(m->child(), false, sigma));
    case Monitor::Kind::Choice:
      return Formula::conj(formula_of(m->left(), true, sigma),
                           formula_of(m->right(), true, sigma));
    case Monitor::Kind::Rec:
      return Formula::greatest(m->variable(),
                               formula_of(m->child(), false, sigma));
    case Monitor::Kind::Var:
      return Formula::var(m->variable());
    case Monitor::Kind::ParAnd:
    case Monitor::Kind::ParOr:
      throw NotRegularError();
  }
  return Formula::truth();
}

void monitor_actions(const MonitorPtr& m, std::vector<Action>& out) {
  switch (m->kind()) {
    case Monitor::Kind::Act:
      out.push_back(m->action());
      monitor_actions(m->child(), out);
      return;
    case Monitor::Kind::Rec:
      monitor_actions(m->child(), out);
      return;
    case Monitor::Kind::Choice:
    case Monitor::Kind::ParAnd:
    case Monitor::Kind::ParOr:
      monitor_actions(m->left(), out);
      monitor_actions(m->right(), out);
      return;
    default:
      return;
  }
}

}  // namespace

FormulaPtr monitor_to_formula(const MonitorPtr& m, const Alphabet& sigma) {
  return formula_of(normalize_regular(m), false, sigma);
}

FormulaPtr monitor_to_formula(const MonitorPtr& m) {
  std::vector<Action> acts;
  monitor_actions(m, acts);
  Alphabet sigma(acts);
  return monitor_to_formula(m, sigma);
}

namespace {

struct PrefixNode {
  std::map<Action, PrefixNode> kids;
  std::optional<bool> accept;  // true = yes leaf, false = no leaf

  void insert(const FiniteTrace& s, size_t at, bool acc) {
    if (at == s.size()) {
      accept = acc;
      return;
    }
    kids[s[at]].insert(s, at + 1, acc);
  }

  MonitorPtr to_monitor(const Alphabet& sigma) const {
    if (accept) return *accept ? Monitor::yes() : Monitor::no();
    MonitorPtr sum;
    for (const Action& a : sigma.actions()) {
      auto it = kids.find(a);
      if (it == kids.end()) continue;
      MonitorPtr summand = Monitor::act(a, it->second.to_monitor(sigma));
      sum = sum ? Monitor::choice(sum, summand) : summand;
    }
    return sum ? sum : Monitor::end();
  }
};

}  // namespace

SynthesisOutput bounded_maximal_monitor(const FormulaPtr& f, size_t n,
                                        const Session& session) {
  DeterminingSets sets = d_sets_upto(f, n, session);
  PrefixNode root;
  for (const FiniteTrace& s : sets.minimal_positive) root.insert(s, 0, true);
  for (const FiniteTrace& s : sets.minimal_negative) root.insert(s, 0, false);
  SynthesisOutput out;
  out.monitor = root.to_monitor(session.alphabet);
  out.guarantee = Guarantee::BoundedMaximal;
  out.bound = n;
  return out;
}

SoundnessReport check_soundness_upto(const MonitorPtr& m, const FormulaPtr& f,
                                     size_t max_len, size_t max_lasso,
                                     const Alphabet& sigma, size_t state_cap) {
  MonitorRuntime rt(m, sigma, state_cap);
  SoundnessReport rep;
  for (const FinfiniteTrace& t : bounded_universe(sigma, max_len, max_lasso)) {
    RunOutcome o = run_trace(rt, t);
    ++rep.traces_checked;
    if (o.status == RunStatus::NoVerdict) continue;
    bool accepted = o.status == RunStatus::Accepted;
    bool holds = eval(f, t);
    if (accepted != holds) rep.violations.push_back({t, accepted, holds});
  }
  return rep;
}

std::string guarantee_name(Guarantee g) {
  switch (g) {
    case Guarantee::SoundOnly:
      return "sound";
    case Guarantee::SoundViolationComplete:
      return "sound-violation-complete";
    case Guarantee::SoundSatisfactionComplete:
      return "sound-satisfaction-complete";
    case Guarantee::BoundedMaximal:
      return "bounded-maximal";
  }
  return "sound";
}

}  // namespace recmon
