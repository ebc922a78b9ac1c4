#include "recmon/semantics.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace recmon {

namespace {

/* The trace as a linear state graph: state i is the suffix starting at
   position i.  next[i] is one past the last state for the dead-end of a
   finite trace; a lasso's last state loops back to the start of the loop. */
struct TraceGraph {
  std::vector<Action> label;
  std::vector<size_t> next;
  size_t states = 0;

  explicit TraceGraph(const FinfiniteTrace& t) {
    const FiniteTrace& p = t.prefix();
    const FiniteTrace& l = t.loop();
    states = t.position_count();
    label.resize(states);
    next.resize(states, states);
    for (size_t i = 0; i < p.size(); ++i) {
      label[i] = p[i];
      next[i] = i + 1;
    }
    for (size_t i = 0; i < l.size(); ++i) {
      size_t at = p.size() + i;
      label[at] = l[i];
      next[at] = i + 1 < l.size() ? at + 1 : p.size();
    }
    // A finite trace's final state keeps next == states: no outgoing edge.
  }

  bool dead_end(size_t s) const { return next[s] >= states; }
};

using StateVec = std::vector<char>;

StateVec sem(const FormulaPtr& f, const TraceGraph& g,
             std::map<std::string, StateVec>& env) {
  switch (f->kind()) {
    case Formula::Kind::Truth:
      return StateVec(g.states, 1);
    case Formula::Kind::Falsity:
      return StateVec(g.states, 0);
    case Formula::Kind::Diamond: {
      StateVec child = sem(f->child(), g, env);
      StateVec out(g.states, 0);
      for (size_t s = 0; s < g.states; ++s) {
        out[s] = !g.dead_end(s) && g.label[s] == f->action() && child[g.next[s]];
      }
      return out;
    }
    case Formula::Kind::Box: {
      StateVec child = sem(f->child(), g, env);
      StateVec out(g.states, 0);
      for (size_t s = 0; s < g.states; ++s) {
        out[s] = g.dead_end(s) || g.label[s] != f->action() || child[g.next[s]];
      }
      return out;
    }
    case Formula::Kind::And: {
      StateVec l = sem(f->left(), g, env);
      StateVec r = sem(f->right(), g, env);
      for (size_t s = 0; s < g.states; ++s) l[s] = l[s] && r[s];
      return l;
    }
    case Formula::Kind::Or: {
      StateVec l = sem(f->left(), g, env);
      StateVec r = sem(f->right(), g, env);
      for (size_t s = 0; s < g.states; ++s) l[s] = l[s] || r[s];
      return l;
    }
    case Formula::Kind::LeastFix:
    case Formula::Kind::GreatestFix: {
      // Knaster-Tarski by iteration; at most states+1 rounds to stabilize.
      StateVec cur(g.states,
                   f->kind() == Formula::Kind::GreatestFix ? 1 : 0);
      for (;;) {
        env[f->variable()] = cur;
        StateVec next = sem(f->child(), g, env);
        if (next == cur) break;
        cur = std::move(next);
      }
      env.erase(f->variable());
      return cur;
    }
    case Formula::Kind::Var: {
      auto it = env.find(f->variable());
      if (it == env.end()) throw OpenFormulaError(f->variable());
      return it->second;
    }
  }
  return StateVec(g.states, 0);
}

}  // namespace

bool eval(const FormulaPtr& f, const FinfiniteTrace& t) {
  require_well_formed(f);
  TraceGraph g(t);
  std::map<std::string, StateVec> env;
  StateVec result = sem(f, g, env);
  return result[0] != 0;
}

namespace {

FormulaPtr res(const FormulaPtr& f, const Action& a) {
  switch (f->kind()) {
    case Formula::Kind::Truth:
    case Formula::Kind::Falsity:
      return f;
    case Formula::Kind::Diamond:
      return f->action() == a ? f->child() : Formula::falsity();
    case Formula::Kind::Box:
      return f->action() == a ? f->child() : Formula::truth();
    case Formula::Kind::And:
      return Formula::conj(res(f->left(), a), res(f->right(), a));
    case Formula::Kind::Or:
      return Formula::disj(res(f->left(), a), res(f->right(), a));
    case Formula::Kind::LeastFix:
    case Formula::Kind::GreatestFix:
      // Guardedness makes this terminate: the unfolded occurrences sit
      // under modalities, which the recursion resolves without unfolding
      // them again.
      return res(unfold(f), a);
    case Formula::Kind::Var:
      throw OpenFormulaError(f->variable());
  }
  return f;
}

}  // namespace

FormulaPtr residual(const FormulaPtr& f, const Action& a) {
  require_well_formed(f);
  return res(f, a);
}

FormulaPtr residual(const FormulaPtr& f, const FiniteTrace& s) {
  require_well_formed(f);
  FormulaPtr cur = f;
  for (const Action& a : s) cur = res(cur, a);
  return cur;
}

std::string polarity_name(Polarity p) {
  return p == Polarity::Positive ? "positive" : "negative";
}

std::string decision_path_name(DecisionPath p) {
  switch (p) {
    case DecisionPath::FragmentExact:
      return "fragment-exact";
    case DecisionPath::Residual:
      return "residual";
    case DecisionPath::Decomposition:
      return "decomposition";
    case DecisionPath::BoundedSearch:
      return "bounded-search";
  }
  return "bounded-search";
}

}  // namespace recmon
