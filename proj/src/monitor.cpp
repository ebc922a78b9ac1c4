#include "recmon/monitor.hpp"

#include <algorithm>
#include <functional>

#include "scan.hpp"

namespace recmon {

MonitorPtr Monitor::yes() {
  static const MonitorPtr m(new Monitor(Kind::Yes, {}, {}, nullptr, nullptr));
  return m;
}

MonitorPtr Monitor::no() {
  static const MonitorPtr m(new Monitor(Kind::No, {}, {}, nullptr, nullptr));
  return m;
}

MonitorPtr Monitor::end() {
  static const MonitorPtr m(new Monitor(Kind::End, {}, {}, nullptr, nullptr));
  return m;
}

MonitorPtr Monitor::act(Action a, MonitorPtr m) {
  return MonitorPtr(new Monitor(Kind::Act, std::move(a), {}, std::move(m), nullptr));
}

MonitorPtr Monitor::choice(MonitorPtr l, MonitorPtr r) {
  return MonitorPtr(new Monitor(Kind::Choice, {}, {}, std::move(l), std::move(r)));
}

MonitorPtr Monitor::par_and(MonitorPtr l, MonitorPtr r) {
  return MonitorPtr(new Monitor(Kind::ParAnd, {}, {}, std::move(l), std::move(r)));
}

MonitorPtr Monitor::par_or(MonitorPtr l, MonitorPtr r) {
  return MonitorPtr(new Monitor(Kind::ParOr, {}, {}, std::move(l), std::move(r)));
}

MonitorPtr Monitor::rec(std::string var, MonitorPtr body) {
  return MonitorPtr(new Monitor(Kind::Rec, {}, std::move(var), std::move(body), nullptr));
}

MonitorPtr Monitor::var(std::string name) {
  return MonitorPtr(new Monitor(Kind::Var, {}, std::move(name), nullptr, nullptr));
}

bool equal(const MonitorPtr& a, const MonitorPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Monitor::Kind::Yes:
    case Monitor::Kind::No:
    case Monitor::Kind::End:
      return true;
    case Monitor::Kind::Var:
      return a->variable() == b->variable();
    case Monitor::Kind::Act:
      return a->action() == b->action() && equal(a->child(), b->child());
    case Monitor::Kind::Rec:
      return a->variable() == b->variable() && equal(a->child(), b->child());
    case Monitor::Kind::Choice:
    case Monitor::Kind::ParAnd:
    case Monitor::Kind::ParOr:
      return equal(a->left(), b->left()) && equal(a->right(), b->right());
  }
  return false;
}

namespace {

/* Precedence: '.' 3, '+' 2, '&' 1, '|' 0; rec takes the longest formula to
   its right, so it needs parentheses whenever tokens follow it. */
void pr(std::string& out, const MonitorPtr& m, int min_prec, bool more_right) {
  switch (m->kind()) {
    case Monitor::Kind::Yes:
      out += "yes";
      return;
    case Monitor::Kind::No:
      out += "no";
      return;
    case Monitor::Kind::End:
      out += "end";
      return;
    case Monitor::Kind::Var:
      out += m->variable();
      return;
    case Monitor::Kind::Act:
      out += m->action();
      out += '.';
      pr(out, m->child(), 3, more_right);
      return;
    case Monitor::Kind::Choice: {
      bool paren = min_prec > 2;
      if (paren) out += '(';
      pr(out, m->left(), 2, true);
      out += " + ";
      pr(out, m->right(), 3, paren ? false : more_right);
      if (paren) out += ')';
      return;
    }
    case Monitor::Kind::ParAnd: {
      bool paren = min_prec > 1;
      if (paren) out += '(';
      pr(out, m->left(), 1, true);
      out += " & ";
      pr(out, m->right(), 2, paren ? false : more_right);
      if (paren) out += ')';
      return;
    }
    case Monitor::Kind::ParOr: {
      bool paren = min_prec > 0;
      if (paren) out += '(';
      pr(out, m->left(), 0, true);
      out += " | ";
      pr(out, m->right(), 1, paren ? false : more_right);
      if (paren) out += ')';
      return;
    }
    case Monitor::Kind::Rec: {
      bool paren = more_right;
      if (paren) out += '(';
      out += "rec ";
      out += m->variable();
      out += '.';
      pr(out, m->child(), 0, false);
      if (paren) out += ')';
      return;
    }
  }
}

MonitorPtr parse_par_or(detail::Scanner& s);

MonitorPtr parse_unary_mon(detail::Scanner& s) {
  if (s.try_eat('(')) {
    MonitorPtr m = parse_par_or(s);
    s.expect(')', "to close '('");
    return m;
  }
  size_t pos = s.pos();
  std::string word = s.try_word();
  if (word.empty()) throw SyntaxError("expected monitor", pos);
  if (word == "yes") return Monitor::yes();
  if (word == "no") return Monitor::no();
  if (word == "end") return Monitor::end();
  if (word == "rec") {
    size_t vpos = s.pos();
    std::string v = s.try_word();
    if (!is_variable_name(v))
      throw SyntaxError("expected variable after 'rec'", vpos);
    s.expect('.', "after rec variable");
    return Monitor::rec(v, parse_par_or(s));
  }
  if (is_variable_name(word)) return Monitor::var(word);
  if (is_action_name(word)) {
    s.expect('.', "after action prefix");
    return Monitor::act(word, parse_unary_mon(s));
  }
  throw SyntaxError("unexpected word '" + word + "'", pos);
}

MonitorPtr parse_choice(detail::Scanner& s) {
  MonitorPtr m = parse_unary_mon(s);
  while (s.try_eat('+')) m = Monitor::choice(m, parse_unary_mon(s));
  return m;
}

MonitorPtr parse_par_and(detail::Scanner& s) {
  MonitorPtr m = parse_choice(s);
  while (s.try_eat('&')) m = Monitor::par_and(m, parse_choice(s));
  return m;
}

MonitorPtr parse_par_or(detail::Scanner& s) {
  MonitorPtr m = parse_par_and(s);
  while (s.try_eat('|')) m = Monitor::par_or(m, parse_par_and(s));
  return m;
}

}  // namespace

std::string print_monitor(const MonitorPtr& m) {
  std::string out;
  pr(out, m, 0, false);
  return out;
}

MonitorPtr parse_monitor(const std::string& text) {
  detail::Scanner s(text);
  MonitorPtr m = parse_par_or(s);
  s.expect_end("monitor");
  return m;
}

bool is_regular(const MonitorPtr& m) {
  switch (m->kind()) {
    case Monitor::Kind::Yes:
    case Monitor::Kind::No:
    case Monitor::Kind::End:
    case Monitor::Kind::Var:
      return true;
    case Monitor::Kind::Act:
    case Monitor::Kind::Rec:
      return is_regular(m->child());
    case Monitor::Kind::Choice:
      return is_regular(m->left()) && is_regular(m->right());
    case Monitor::Kind::ParAnd:
    case Monitor::Kind::ParOr:
      return false;
  }
  return true;
}

std::set<std::string> free_monitor_variables(const MonitorPtr& m) {
  std::set<std::string> out;
  std::function<void(const MonitorPtr&, std::set<std::string>&)> go =
      [&](const MonitorPtr& g, std::set<std::string>& bound) {
        switch (g->kind()) {
          case Monitor::Kind::Yes:
          case Monitor::Kind::No:
          case Monitor::Kind::End:
            return;
          case Monitor::Kind::Var:
            if (!bound.count(g->variable())) out.insert(g->variable());
            return;
          case Monitor::Kind::Act:
            go(g->child(), bound);
            return;
          case Monitor::Kind::Choice:
          case Monitor::Kind::ParAnd:
          case Monitor::Kind::ParOr:
            go(g->left(), bound);
            go(g->right(), bound);
            return;
          case Monitor::Kind::Rec: {
            bool was = bound.count(g->variable()) > 0;
            bound.insert(g->variable());
            go(g->child(), bound);
            if (!was) bound.erase(g->variable());
            return;
          }
        }
      };
  std::set<std::string> bound;
  go(m, bound);
  return out;
}

namespace {

std::string fresh_monitor_variable(const std::string& base,
                                   const std::set<std::string>& avoid) {
  for (int i = 0;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

}  // namespace

MonitorPtr substitute_monitor(const MonitorPtr& m, const std::string& var,
                              const MonitorPtr& value) {
  switch (m->kind()) {
    case Monitor::Kind::Yes:
    case Monitor::Kind::No:
    case Monitor::Kind::End:
      return m;
    case Monitor::Kind::Var:
      return m->variable() == var ? value : m;
    case Monitor::Kind::Act:
      return Monitor::act(m->action(), substitute_monitor(m->child(), var, value));
    case Monitor::Kind::Choice:
      return Monitor::choice(substitute_monitor(m->left(), var, value),
                             substitute_monitor(m->right(), var, value));
    case Monitor::Kind::ParAnd:
      return Monitor::par_and(substitute_monitor(m->left(), var, value),
                              substitute_monitor(m->right(), var, value));
    case Monitor::Kind::ParOr:
      return Monitor::par_or(substitute_monitor(m->left(), var, value),
                             substitute_monitor(m->right(), var, value));
    case Monitor::Kind::Rec: {
      if (m->variable() == var) return m;
      MonitorPtr body = m->child();
      std::string binder = m->variable();
      if (free_monitor_variables(value).count(binder) &&
          free_monitor_variables(body).count(var)) {
        std::set<std::string> avoid = free_monitor_variables(value);
        auto bodyfv = free_monitor_variables(body);
        avoid.insert(bodyfv.begin(), bodyfv.end());
        avoid.insert(var);
        std::string renamed = fresh_monitor_variable(binder, avoid);
        body = substitute_monitor(body, binder, Monitor::var(renamed));
        binder = renamed;
      }
      return Monitor::rec(binder, substitute_monitor(body, var, value));
    }
  }
  return m;
}

/* Hash-consing.  Composite nodes are flattened, sorted and deduplicated;
   verdicts are combined immediately (no in a conjunctive product and yes
   in a disjunctive one absorb it, the opposite verdict drops out), so no
   silent transitions remain in the interned system. */

MonitorRuntime::MonitorRuntime(MonitorPtr root, Alphabet sigma, size_t state_cap)
    : sigma_(std::move(sigma)), state_cap_(state_cap) {
  root_ = intern(root);
}

MonitorRuntime::Id MonitorRuntime::intern_node(Monitor::Kind k,
                                               std::string label,
                                               std::vector<Id> kids) {
  auto key = std::make_tuple(k, label, kids);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  if (nodes_.size() >= state_cap_) throw StateExplosionError(state_cap_);
  Node node{k, label, kids, nullptr};
  switch (k) {
    case Monitor::Kind::Yes:
      node.ast = Monitor::yes();
      break;
    case Monitor::Kind::No:
      node.ast = Monitor::no();
      break;
    case Monitor::Kind::End:
      node.ast = Monitor::end();
      break;
    case Monitor::Kind::Var:
      node.ast = Monitor::var(label);
      break;
    case Monitor::Kind::Act:
      node.ast = Monitor::act(label, nodes_[kids[0]].ast);
      break;
    case Monitor::Kind::Rec:
      node.ast = Monitor::rec(label, nodes_[kids[0]].ast);
      break;
    case Monitor::Kind::Choice:
    case Monitor::Kind::ParAnd:
    case Monitor::Kind::ParOr: {
      MonitorPtr acc = nodes_[kids[0]].ast;
      for (size_t i = 1; i < kids.size(); ++i) {
        const MonitorPtr& next = nodes_[kids[i]].ast;
        acc = k == Monitor::Kind::Choice   ? Monitor::choice(acc, next)
              : k == Monitor::Kind::ParAnd ? Monitor::par_and(acc, next)
                                           : Monitor::par_or(acc, next);
      }
      node.ast = acc;
      break;
    }
  }
  Id id = static_cast<Id>(nodes_.size());
  nodes_.push_back(std::move(node));
  index_.emplace(std::move(key), id);
  return id;
}

namespace {

void gather_kids(Monitor::Kind k, const MonitorPtr& m,
                 std::vector<MonitorPtr>& out) {
  if (m->kind() == k) {
    gather_kids(k, m->left(), out);
    gather_kids(k, m->right(), out);
  } else {
    out.push_back(m);
  }
}

}  // namespace

MonitorRuntime::Id MonitorRuntime::intern(const MonitorPtr& m) {
  switch (m->kind()) {
    case Monitor::Kind::Yes:
      return intern_node(Monitor::Kind::Yes, {}, {});
    case Monitor::Kind::No:
      return intern_node(Monitor::Kind::No, {}, {});
    case Monitor::Kind::End:
      return intern_node(Monitor::Kind::End, {}, {});
    case Monitor::Kind::Var:
      return intern_node(Monitor::Kind::Var, m->variable(), {});
    case Monitor::Kind::Act:
      return intern_node(Monitor::Kind::Act, m->action(), {intern(m->child())});
    case Monitor::Kind::Rec: {
      // Verdicts are persistent, so a binder around one is the verdict
      // itself; collapsing keeps rejection-at-the-current-position aligned
      // with the formula semantics of constant fixpoints.
      Id body = intern(m->child());
      switch (nodes_[body].kind) {
        case Monitor::Kind::Yes:
        case Monitor::Kind::No:
        case Monitor::Kind::End:
          return body;
        default:
          return intern_node(Monitor::Kind::Rec, m->variable(), {body});
      }
    }
    case Monitor::Kind::Choice:
    case Monitor::Kind::ParAnd:
    case Monitor::Kind::ParOr: {
      std::vector<MonitorPtr> parts;
      gather_kids(m->kind(), m, parts);
      std::vector<Id> kids;
      kids.reserve(parts.size());
      for (const MonitorPtr& p : parts) kids.push_back(intern(p));
      return intern_composite(m->kind(), std::move(kids));
    }
  }
  return 0;
}

MonitorRuntime::Id MonitorRuntime::intern_composite(Monitor::Kind k,
                                                    std::vector<Id> kids) {
  std::sort(kids.begin(), kids.end());
  kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
  if (k != Monitor::Kind::Choice) {
    Monitor::Kind absorbing =
        k == Monitor::Kind::ParAnd ? Monitor::Kind::No : Monitor::Kind::Yes;
    Monitor::Kind identity =
        k == Monitor::Kind::ParAnd ? Monitor::Kind::Yes : Monitor::Kind::No;
    for (Id kid : kids) {
      if (nodes_[kid].kind == absorbing) return kid;
    }
    kids.erase(std::remove_if(kids.begin(), kids.end(),
                              [&](Id kid) { return nodes_[kid].kind == identity; }),
               kids.end());
    if (kids.empty()) return intern_node(identity, {}, {});
  }
  if (kids.size() == 1) return kids[0];
  return intern_node(k, {}, std::move(kids));
}

MonitorRuntime::Id MonitorRuntime::unfold_rec(Id id) {
  auto it = unfold_cache_.find(id);
  if (it != unfold_cache_.end()) return it->second;
  const Node& node = nodes_[id];
  MonitorPtr unfolded =
      substitute_monitor(nodes_[node.kids[0]].ast, node.label, node.ast);
  Id out = intern(unfolded);
  unfold_cache_.emplace(id, out);
  return out;
}

const std::vector<MonitorRuntime::Edge>& MonitorRuntime::edges(Id id) {
  auto memo = edges_.find(id);
  if (memo != edges_.end()) return memo->second;

  // Structural dependency closure: nodes whose transition sets are mutually
  // defined with this one (choice summands, product factors, rec unfoldings).
  std::vector<Id> closure;
  std::set<Id> seen;
  std::vector<Id> stack{id};
  while (!stack.empty()) {
    Id n = stack.back();
    stack.pop_back();
    if (seen.count(n) || edges_.count(n)) continue;
    seen.insert(n);
    closure.push_back(n);
    const Node& node = nodes_[n];
    switch (node.kind) {
      case Monitor::Kind::Rec:
        stack.push_back(unfold_rec(n));
        break;
      case Monitor::Kind::Choice:
      case Monitor::Kind::ParAnd:
      case Monitor::Kind::ParOr:
        for (Id kid : node.kids) stack.push_back(kid);
        break;
      default:
        break;
    }
  }

  // Least fixpoint of the transition equations over the closure; an
  // unguarded recursion that never passes an action prefix ends up with no
  // transitions, which is the least solution.
  std::map<Id, std::vector<Edge>> table;
  for (Id n : closure) table[n] = {};
  bool changed = true;
  while (changed) {
    changed = false;
    for (Id n : closure) {
      std::vector<Edge> next = compute_edges(n, table);
      if (next != table[n]) {
        table[n] = std::move(next);
        changed = true;
      }
    }
  }
  for (auto& entry : table) edges_[entry.first] = std::move(entry.second);
  return edges_[id];
}

std::vector<MonitorRuntime::Edge> MonitorRuntime::compute_edges(
    Id id, const std::map<Id, std::vector<Edge>>& table) {
  auto look = [&](Id n) -> const std::vector<Edge>& {
    auto memo = edges_.find(n);
    if (memo != edges_.end()) return memo->second;
    auto it = table.find(n);
    static const std::vector<Edge> none;
    return it != table.end() ? it->second : none;
  };

  std::vector<Edge> out;
  const Node& node = nodes_[id];
  switch (node.kind) {
    case Monitor::Kind::Yes:
    case Monitor::Kind::No:
    case Monitor::Kind::End:
      for (const Action& a : sigma_.actions()) out.push_back({a, id});
      break;
    case Monitor::Kind::Var:
      break;  // a stuck free variable: no transitions
    case Monitor::Kind::Act:
      out.push_back({node.label, node.kids[0]});
      break;
    case Monitor::Kind::Rec:
      out = look(unfold_cache_.at(id));
      break;
    case Monitor::Kind::Choice:
      for (Id kid : node.kids) {
        const auto& sub = look(kid);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      break;
    case Monitor::Kind::ParAnd:
    case Monitor::Kind::ParOr: {
      // Both factors move on the same action; one successor per choice of
      // derivative on each side.
      for (const Action& a : sigma_.actions()) {
        std::vector<std::vector<Id>> per_kid;
        bool all = true;
        for (Id kid : node.kids) {
          std::vector<Id> targets;
          for (const Edge& e : look(kid)) {
            if (e.label == a) targets.push_back(e.target);
          }
          std::sort(targets.begin(), targets.end());
          targets.erase(std::unique(targets.begin(), targets.end()),
                        targets.end());
          if (targets.empty()) {
            all = false;
            break;
          }
          per_kid.push_back(std::move(targets));
        }
        if (!all) continue;
        std::vector<size_t> idx(per_kid.size(), 0);
        for (;;) {
          std::vector<Id> combo;
          combo.reserve(per_kid.size());
          for (size_t i = 0; i < per_kid.size(); ++i)
            combo.push_back(per_kid[i][idx[i]]);
          out.push_back({a, intern_composite(node.kind, std::move(combo))});
          size_t p = per_kid.size();
          bool done = true;
          while (p > 0) {
            --p;
            if (++idx[p] < per_kid[p].size()) {
              done = false;
              break;
            }
            idx[p] = 0;
          }
          if (done) break;
        }
      }
      break;
    }
  }
  std::sort(out.begin(), out.end(), [](const Edge& x, const Edge& y) {
    return x.label != y.label ? x.label < y.label : x.target < y.target;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Edge& x, const Edge& y) {
                          return x.label == y.label && x.target == y.target;
                        }),
            out.end());
  return out;
}

MonitorRuntime::StateSet MonitorRuntime::closure(StateSet states) {
  // Verdict combination happens at intern time, so there are no silent
  // edges left; normalize to sorted unique ids.
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  std::vector<Id> work(states.begin(), states.end());
  while (!work.empty()) {
    Id n = work.back();
    work.pop_back();
    for (const Edge& e : edges(n)) {
      if (!e.label.empty()) continue;
      auto it = std::lower_bound(states.begin(), states.end(), e.target);
      if (it == states.end() || *it != e.target) {
        states.insert(it, e.target);
        work.push_back(e.target);
      }
    }
  }
  return states;
}

MonitorRuntime::StateSet MonitorRuntime::initial() { return closure({root_}); }

MonitorRuntime::StateSet MonitorRuntime::step(const StateSet& states,
                                              const Action& a) {
  StateSet next;
  for (Id n : states) {
    for (const Edge& e : edges(n)) {
      if (e.label == a) next.push_back(e.target);
    }
  }
  return closure(std::move(next));
}

bool MonitorRuntime::contains_yes(const StateSet& states) const {
  return std::any_of(states.begin(), states.end(), [&](Id n) {
    return nodes_[n].kind == Monitor::Kind::Yes;
  });
}

bool MonitorRuntime::contains_no(const StateSet& states) const {
  return std::any_of(states.begin(), states.end(), [&](Id n) {
    return nodes_[n].kind == Monitor::Kind::No;
  });
}

MonitorPtr MonitorRuntime::term(Id id) const { return nodes_[id].ast; }

std::vector<MonitorRuntime::Id> MonitorRuntime::silent_successors(Id id) {
  std::vector<Id> out;
  for (const Edge& e : edges(id)) {
    if (e.label.empty()) out.push_back(e.target);
  }
  return out;
}

std::vector<std::pair<Action, MonitorRuntime::Id>>
MonitorRuntime::action_successors(Id id) {
  std::vector<std::pair<Action, Id>> out;
  for (const Edge& e : edges(id)) {
    if (!e.label.empty()) out.emplace_back(e.label, e.target);
  }
  return out;
}

namespace {

/* Shared verdict bookkeeping: records the first verdict and whether the
   opposite one ever shows up afterwards (or simultaneously, in which case
   rejection wins). */
struct VerdictTracker {
  RunOutcome out;
  bool decided = false;

  void check(const MonitorRuntime& rt, const MonitorRuntime::StateSet& states,
             size_t pos) {
    bool y = rt.contains_yes(states);
    bool n = rt.contains_no(states);
    if (!decided) {
      if (y || n) {
        decided = true;
        out.prefix_length = pos;
        out.status = n ? RunStatus::Rejected : RunStatus::Accepted;
        out.conflicting = y && n;
      }
    } else if ((out.status == RunStatus::Accepted && n) ||
               (out.status == RunStatus::Rejected && y)) {
      out.conflicting = true;
    }
  }
};

}  // namespace

RunOutcome run_finite(MonitorRuntime& rt, const FiniteTrace& s) {
  VerdictTracker tracker;
  MonitorRuntime::StateSet cur = rt.initial();
  tracker.check(rt, cur, 0);
  for (size_t i = 0; i < s.size(); ++i) {
    if (tracker.decided && tracker.out.conflicting) break;
    cur = rt.step(cur, s[i]);
    tracker.check(rt, cur, i + 1);
  }
  return tracker.out;
}

RunOutcome decide_lasso(MonitorRuntime& rt, const FinfiniteTrace& t) {
  VerdictTracker tracker;
  MonitorRuntime::StateSet cur = rt.initial();
  tracker.check(rt, cur, 0);
  size_t pos = 0;
  for (const Action& a : t.prefix()) {
    cur = rt.step(cur, a);
    tracker.check(rt, cur, ++pos);
  }
  if (t.is_finite()) return tracker.out;
  // Iterate the loop until a (loop offset, state set) pair repeats; from
  // then on the run can discover nothing new.
  std::set<std::pair<size_t, MonitorRuntime::StateSet>> seen;
  size_t off = 0;
  while (seen.insert({off, cur}).second) {
    if (tracker.decided && tracker.out.conflicting) break;
    cur = rt.step(cur, t.loop()[off]);
    off = (off + 1) % t.loop().size();
    tracker.check(rt, cur, ++pos);
  }
  return tracker.out;
}

RunOutcome run_trace(MonitorRuntime& rt, const FinfiniteTrace& t) {
  if (t.is_finite()) return run_finite(rt, t.prefix());
  return decide_lasso(rt, t);
}

std::string run_status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Accepted:
      return "Accepted";
    case RunStatus::Rejected:
      return "Rejected";
    case RunStatus::NoVerdict:
      return "NoVerdict";
  }
  return "NoVerdict";
}

}  // namespace recmon
