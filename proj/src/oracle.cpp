#include <algorithm>
#include <deque>
#include <optional>

#include "recmon/automaton.hpp"
#include "recmon/fragments.hpp"
#include "recmon/semantics.hpp"
#include "recmon/synthesis.hpp"

namespace recmon {

namespace {

/* Exact decision machinery for a safety (violation-complete) or co-safety
   (satisfaction-complete) formula: the determinized automaton of its
   synthesized monitor, plus reachability of the decisive verdict.  For a
   safety formula the decisive verdict is No: s negatively determines f iff
   the walk ends in a No sink, and positively determines f iff no No state
   is reachable from where the walk ends.  Dually for co-safety with Yes. */
struct ExactMachine {
  bool safety = true;
  VerdictAutomaton dfa;
  std::vector<char> reach_decisive;

  static ExactMachine build(const FormulaPtr& g, const Alphabet& sigma,
                            bool safety, size_t state_cap) {
    ExactMachine m;
    m.safety = safety;
    MonitorPtr mon = synthesize(g, sigma).monitor;
    m.dfa = determinize(to_automaton(mon, sigma, state_cap));
    VerdictMark decisive = safety ? VerdictMark::No : VerdictMark::Yes;
    m.reach_decisive.assign(m.dfa.state_count(), 0);
    for (size_t q = 0; q < m.dfa.state_count(); ++q)
      m.reach_decisive[q] = m.dfa.marks[q] == decisive;
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t q = 0; q < m.dfa.state_count(); ++q) {
        if (m.reach_decisive[q]) continue;
        for (const auto& [a, targets] : m.dfa.edges[q]) {
          if (m.reach_decisive[targets[0]]) {
            m.reach_decisive[q] = 1;
            changed = true;
            break;
          }
        }
      }
    }
    return m;
  }

  size_t walk(const FiniteTrace& s) const {
    size_t q = dfa.initial;
    for (const Action& a : s) q = dfa.edges[q].at(a)[0];
    return q;
  }

  bool decisive_at(size_t q) const {
    return dfa.marks[q] == (safety ? VerdictMark::No : VerdictMark::Yes);
  }

  /* Shortest word from q to a decisive state (empty when q itself is). */
  FiniteTrace decisive_word_from(size_t q) const {
    std::vector<int> prev_state(dfa.state_count(), -1);
    std::vector<Action> prev_action(dfa.state_count());
    std::vector<char> seen(dfa.state_count(), 0);
    std::deque<size_t> queue{q};
    seen[q] = 1;
    while (!queue.empty()) {
      size_t cur = queue.front();
      queue.pop_front();
      if (decisive_at(cur)) {
        FiniteTrace word;
        for (size_t at = cur; at != q; at = static_cast<size_t>(prev_state[at]))
          word.push_back(prev_action[at]);
        std::reverse(word.begin(), word.end());
        return word;
      }
      for (const Action& a : dfa.alphabet.actions()) {
        size_t t = dfa.edges[cur].at(a)[0];
        if (!seen[t]) {
          seen[t] = 1;
          prev_state[t] = static_cast<int>(cur);
          prev_action[t] = a;
          queue.push_back(t);
        }
      }
    }
    return {};  // unreachable when reach_decisive[q] holds
  }
};

DeterminationResult determined_result(Polarity pol, DecisionPath path) {
  DeterminationResult r;
  r.status = DeterminationStatus::Determined;
  r.polarity = pol;
  r.path = path;
  return r;
}

DeterminationResult refuted_result(Polarity pol, FinfiniteTrace ce,
                                   DecisionPath path) {
  DeterminationResult r;
  r.status = DeterminationStatus::NotDetermined;
  r.polarity = pol;
  r.counterexample = std::move(ce);
  r.path = path;
  return r;
}

FiniteTrace concat(FiniteTrace s, const FiniteTrace& t) {
  s.insert(s.end(), t.begin(), t.end());
  return s;
}

}  // namespace

DeterminationResult determines(const FormulaPtr& f, const FiniteTrace& s,
                               Polarity polarity, const Session& session) {
  const Alphabet& sigma = session.alphabet;
  FormulaPtr g = simplify_units(f);
  require_well_formed(g);

  // Exact fragment decision: the synthesized monitor is complete for its
  // decisive verdict, so determination reduces to automaton reachability.
  bool shml = in_shml(g);
  bool chml = in_chml(g);
  if (shml || chml) {
    ExactMachine m = ExactMachine::build(g, sigma, shml, session.state_cap);
    size_t q = m.walk(s);
    bool wants_decisive = shml == (polarity == Polarity::Negative);
    if (wants_decisive) {
      // Negative over safety / positive over co-safety: the verdict must
      // already have fired on s itself.
      if (m.decisive_at(q))
        return determined_result(polarity, DecisionPath::FragmentExact);
      return refuted_result(polarity, FinfiniteTrace::finite(s),
                            DecisionPath::FragmentExact);
    }
    // Positive over safety / negative over co-safety: no decisive verdict
    // may remain reachable.
    if (!m.reach_decisive[q])
      return determined_result(polarity, DecisionPath::FragmentExact);
    return refuted_result(
        polarity, FinfiniteTrace::finite(concat(s, m.decisive_word_from(q))),
        DecisionPath::FragmentExact);
  }

  // Residual collapse: after consuming s the formula may have become a
  // constant.
  FormulaPtr r = simplify_units(residual(g, s));
  if (r->kind() == Formula::Kind::Truth) {
    if (polarity == Polarity::Positive)
      return determined_result(polarity, DecisionPath::Residual);
    return refuted_result(polarity, FinfiniteTrace::finite(s),
                          DecisionPath::Residual);
  }
  if (r->kind() == Formula::Kind::Falsity) {
    if (polarity == Polarity::Negative)
      return determined_result(polarity, DecisionPath::Residual);
    return refuted_result(polarity, FinfiniteTrace::finite(s),
                          DecisionPath::Residual);
  }

  // Decomposition through the top connective.  For the polarity matching
  // the connective (positive/and, negative/or) determination of both
  // operands is needed and a child counterexample transfers as is; for the
  // opposite polarity one determined operand suffices and a child
  // counterexample only counts if the whole formula agrees on it.
  if (g->kind() == Formula::Kind::And || g->kind() == Formula::Kind::Or) {
    DeterminationResult lres = determines(g->left(), s, polarity, session);
    DeterminationResult rres = determines(g->right(), s, polarity, session);
    bool conjunctive = (g->kind() == Formula::Kind::And) ==
                       (polarity == Polarity::Positive);
    if (conjunctive) {
      for (const DeterminationResult* child : {&lres, &rres}) {
        if (child->status == DeterminationStatus::NotDetermined)
          return refuted_result(polarity, *child->counterexample,
                                DecisionPath::Decomposition);
      }
      if (lres.determined() && rres.determined())
        return determined_result(polarity, DecisionPath::Decomposition);
    } else {
      if (lres.determined() || rres.determined())
        return determined_result(polarity, DecisionPath::Decomposition);
      for (const DeterminationResult* child : {&lres, &rres}) {
        if (child->status != DeterminationStatus::NotDetermined) continue;
        bool holds = eval(g, *child->counterexample);
        if ((polarity == Polarity::Positive && !holds) ||
            (polarity == Polarity::Negative && holds))
          return refuted_result(polarity, *child->counterexample,
                                DecisionPath::Decomposition);
      }
    }
    // fall through to the bounded search
  }

  // Bounded refutation search over extensions of s.
  size_t bound = session.oracle_bound;
  std::optional<FinfiniteTrace> ce;
  for_each_extension(sigma, bound, [&](const FinfiniteTrace& e) {
    FinfiniteTrace full = e.prepend(s);
    bool holds = eval(g, full);
    if ((polarity == Polarity::Positive && !holds) ||
        (polarity == Polarity::Negative && holds)) {
      ce = full;
      return false;
    }
    return true;
  });
  if (ce) {
    DeterminationResult out =
        refuted_result(polarity, *ce, DecisionPath::BoundedSearch);
    out.bound = bound;
    return out;
  }
  DeterminationResult out;
  out.status = DeterminationStatus::UnknownUpToBound;
  out.polarity = polarity;
  out.bound = bound;
  out.path = DecisionPath::BoundedSearch;
  return out;
}

namespace {

bool has_proper_prefix(const std::vector<FiniteTrace>& set,
                       const FiniteTrace& s) {
  for (const FiniteTrace& p : set) {
    if (p.size() < s.size() && std::equal(p.begin(), p.end(), s.begin()))
      return true;
  }
  return false;
}

}  // namespace

DeterminingSets d_sets_upto(const FormulaPtr& f, size_t n,
                            const Session& session,
                            std::optional<size_t> probe) {
  DeterminingSets out;
  out.probe_bound = probe.value_or(2 * n);
  Session probe_session = session;
  probe_session.oracle_bound = out.probe_bound;

  std::vector<FiniteTrace> candidates =
      finite_traces_upto(session.alphabet, n);
  FormulaPtr g = simplify_units(f);
  require_well_formed(g);
  bool shml = in_shml(g);
  bool chml = in_chml(g);
  if (shml || chml) {
    // One automaton, then each candidate costs a walk.
    ExactMachine m =
        ExactMachine::build(g, session.alphabet, shml, session.state_cap);
    for (const FiniteTrace& s : candidates) {
      size_t q = m.walk(s);
      if (!has_proper_prefix(out.minimal_positive, s)) {
        bool pos = shml ? !m.reach_decisive[q] : m.decisive_at(q);
        if (pos) out.minimal_positive.push_back(s);
      }
      if (!has_proper_prefix(out.minimal_negative, s)) {
        bool neg = shml ? m.decisive_at(q) : !m.reach_decisive[q];
        if (neg) out.minimal_negative.push_back(s);
      }
    }
    return out;
  }
  for (const FiniteTrace& s : candidates) {
    if (!has_proper_prefix(out.minimal_positive, s) &&
        determines(g, s, Polarity::Positive, probe_session).determined())
      out.minimal_positive.push_back(s);
    if (!has_proper_prefix(out.minimal_negative, s) &&
        determines(g, s, Polarity::Negative, probe_session).determined())
      out.minimal_negative.push_back(s);
  }
  return out;
}

}  // namespace recmon
