#include "recmon/formula.hpp"

#include <algorithm>
#include <functional>

#include "scan.hpp"

namespace recmon {

FormulaPtr Formula::truth() {
  static const FormulaPtr f(new Formula(Kind::Truth, {}, {}, nullptr, nullptr));
  return f;
}

FormulaPtr Formula::falsity() {
  static const FormulaPtr f(new Formula(Kind::Falsity, {}, {}, nullptr, nullptr));
  return f;
}

FormulaPtr Formula::diamond(Action a, FormulaPtr body) {
  return FormulaPtr(new Formula(Kind::Diamond, std::move(a), {}, std::move(body), nullptr));
}

FormulaPtr Formula::box(Action a, FormulaPtr body) {
  return FormulaPtr(new Formula(Kind::Box, std::move(a), {}, std::move(body), nullptr));
}

FormulaPtr Formula::conj(FormulaPtr l, FormulaPtr r) {
  return FormulaPtr(new Formula(Kind::And, {}, {}, std::move(l), std::move(r)));
}

FormulaPtr Formula::disj(FormulaPtr l, FormulaPtr r) {
  return FormulaPtr(new Formula(Kind::Or, {}, {}, std::move(l), std::move(r)));
}

FormulaPtr Formula::least(std::string var, FormulaPtr body) {
  return FormulaPtr(new Formula(Kind::LeastFix, {}, std::move(var), std::move(body), nullptr));
}

FormulaPtr Formula::greatest(std::string var, FormulaPtr body) {
  return FormulaPtr(new Formula(Kind::GreatestFix, {}, std::move(var), std::move(body), nullptr));
}

FormulaPtr Formula::var(std::string name) {
  return FormulaPtr(new Formula(Kind::Var, {}, std::move(name), nullptr, nullptr));
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Formula::Kind::Truth:
    case Formula::Kind::Falsity:
      return true;
    case Formula::Kind::Var:
      return a->variable() == b->variable();
    case Formula::Kind::Diamond:
    case Formula::Kind::Box:
      return a->action() == b->action() && equal(a->child(), b->child());
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return equal(a->left(), b->left()) && equal(a->right(), b->right());
    case Formula::Kind::LeastFix:
    case Formula::Kind::GreatestFix:
      return a->variable() == b->variable() && equal(a->child(), b->child());
  }
  return false;
}

namespace {

/* min_prec: 0 anything, 1 no bare '|', 2 no bare '&' or '|'.
   more_right: tokens follow this subterm inside the current paren scope, so
   a fixpoint here must be wrapped or its body would swallow them. */
void pr(std::string& out, const FormulaPtr& f, int min_prec, bool more_right) {
  switch (f->kind()) {
    case Formula::Kind::Truth:
      out += "tt";
      return;
    case Formula::Kind::Falsity:
      out += "ff";
      return;
    case Formula::Kind::Var:
      out += f->variable();
      return;
    case Formula::Kind::Diamond:
    case Formula::Kind::Box:
      out += f->kind() == Formula::Kind::Diamond ? '<' : '[';
      out += f->action();
      out += f->kind() == Formula::Kind::Diamond ? '>' : ']';
      pr(out, f->child(), 2, more_right);
      return;
    case Formula::Kind::And: {
      bool paren = min_prec > 1;
      if (paren) out += '(';
      pr(out, f->left(), 1, true);
      out += " & ";
      pr(out, f->right(), 2, paren ? false : more_right);
      if (paren) out += ')';
      return;
    }
    case Formula::Kind::Or: {
      bool paren = min_prec > 0;
      if (paren) out += '(';
      pr(out, f->left(), 0, true);
      out += " | ";
      pr(out, f->right(), 1, paren ? false : more_right);
      if (paren) out += ')';
      return;
    }
    case Formula::Kind::LeastFix:
    case Formula::Kind::GreatestFix: {
      bool paren = more_right;
      if (paren) out += '(';
      out += f->kind() == Formula::Kind::LeastFix ? "min " : "max ";
      out += f->variable();
      out += '.';
      pr(out, f->child(), 0, false);
      if (paren) out += ')';
      return;
    }
  }
}

FormulaPtr parse_or(detail::Scanner& s);

FormulaPtr parse_unary(detail::Scanner& s) {
  if (s.try_eat('(')) {
    FormulaPtr f = parse_or(s);
    s.expect(')', "to close '('");
    return f;
  }
  if (s.peek() == '<' || s.peek() == '[') {
    bool diamond = s.try_eat('<');
    if (!diamond) s.expect('[', "to open modality");
    size_t pos = s.pos();
    std::string a = s.try_word();
    if (!is_action_name(a)) throw SyntaxError("expected action name", pos);
    s.expect(diamond ? '>' : ']', "after action");
    FormulaPtr body = parse_unary(s);
    return diamond ? Formula::diamond(a, body) : Formula::box(a, body);
  }
  size_t pos = s.pos();
  std::string word = s.try_word();
  if (word.empty()) throw SyntaxError("expected formula", pos);
  if (word == "tt") return Formula::truth();
  if (word == "ff") return Formula::falsity();
  if (word == "max" || word == "min") {
    size_t vpos = s.pos();
    std::string v = s.try_word();
    if (!is_variable_name(v))
      throw SyntaxError("expected variable after '" + word + "'", vpos);
    s.expect('.', "after fixpoint variable");
    FormulaPtr body = parse_or(s);
    return word == "max" ? Formula::greatest(v, body) : Formula::least(v, body);
  }
  if (is_variable_name(word)) return Formula::var(word);
  throw SyntaxError("unexpected word '" + word + "'", pos);
}

FormulaPtr parse_and(detail::Scanner& s) {
  FormulaPtr f = parse_unary(s);
  while (s.try_eat('&')) f = Formula::conj(f, parse_unary(s));
  return f;
}

FormulaPtr parse_or(detail::Scanner& s) {
  FormulaPtr f = parse_and(s);
  while (s.try_eat('|')) f = Formula::disj(f, parse_and(s));
  return f;
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
  std::string out;
  pr(out, f, 0, false);
  return out;
}

FormulaPtr parse_formula(const std::string& text) {
  detail::Scanner s(text);
  FormulaPtr f = parse_or(s);
  s.expect_end("formula");
  return f;
}

FormulaPtr parse_formula(const std::string& text, const Alphabet& sigma) {
  FormulaPtr f = parse_formula(text);
  ValidationReport rep = validate(f);
  for (const Action& a : rep.actions)
    if (!sigma.contains(a)) throw UnknownActionError(a);
  if (!rep.closed) throw UnboundVariableError(rep.free_vars.front());
  return f;
}

namespace {

void walk_validate(const FormulaPtr& f, std::set<std::string>& bound,
                   std::set<std::string>& exposed, ValidationReport& rep) {
  switch (f->kind()) {
    case Formula::Kind::Truth:
    case Formula::Kind::Falsity:
      return;
    case Formula::Kind::Var: {
      const std::string& x = f->variable();
      if (!bound.count(x)) {
        rep.closed = false;
        if (std::find(rep.free_vars.begin(), rep.free_vars.end(), x) == rep.free_vars.end())
          rep.free_vars.push_back(x);
      } else if (exposed.count(x)) {
        rep.guarded = false;
        if (std::find(rep.unguarded_vars.begin(), rep.unguarded_vars.end(), x) ==
            rep.unguarded_vars.end())
          rep.unguarded_vars.push_back(x);
      }
      return;
    }
    case Formula::Kind::Diamond:
    case Formula::Kind::Box: {
      rep.actions.insert(f->action());
      std::set<std::string> none;  // a modality guards every variable below it
      walk_validate(f->child(), bound, none, rep);
      return;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
      walk_validate(f->left(), bound, exposed, rep);
      walk_validate(f->right(), bound, exposed, rep);
      return;
    case Formula::Kind::LeastFix:
    case Formula::Kind::GreatestFix: {
      bool was_bound = bound.count(f->variable()) > 0;
      bool was_exposed = exposed.count(f->variable()) > 0;
      bound.insert(f->variable());
      exposed.insert(f->variable());
      walk_validate(f->child(), bound, exposed, rep);
      if (!was_bound) bound.erase(f->variable());
      if (!was_exposed) exposed.erase(f->variable());
      return;
    }
  }
}

}  // namespace

ValidationReport validate(const FormulaPtr& f) {
  ValidationReport rep;
  std::set<std::string> bound, exposed;
  walk_validate(f, bound, exposed, rep);
  std::sort(rep.free_vars.begin(), rep.free_vars.end());
  std::sort(rep.unguarded_vars.begin(), rep.unguarded_vars.end());
  return rep;
}

std::set<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> out;
  std::function<void(const FormulaPtr&, std::set<std::string>&)> go =
      [&](const FormulaPtr& g, std::set<std::string>& bound) {
        switch (g->kind()) {
          case Formula::Kind::Truth:
          case Formula::Kind::Falsity:
            return;
          case Formula::Kind::Var:
            if (!bound.count(g->variable())) out.insert(g->variable());
            return;
          case Formula::Kind::Diamond:
          case Formula::Kind::Box:
            go(g->child(), bound);
            return;
          case Formula::Kind::And:
          case Formula::Kind::Or:
            go(g->left(), bound);
            go(g->right(), bound);
            return;
          case Formula::Kind::LeastFix:
          case Formula::Kind::GreatestFix: {
            bool was = bound.count(g->variable()) > 0;
            bound.insert(g->variable());
            go(g->child(), bound);
            if (!was) bound.erase(g->variable());
            return;
          }
        }
      };
  std::set<std::string> bound;
  go(f, bound);
  return out;
}

namespace {

std::string fresh_variable(const std::string& base,
                           const std::set<std::string>& avoid) {
  for (int i = 0;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const std::string& var,
                      const FormulaPtr& value) {
  switch (f->kind()) {
    case Formula::Kind::Truth:
    case Formula::Kind::Falsity:
      return f;
    case Formula::Kind::Var:
      return f->variable() == var ? value : f;
    case Formula::Kind::Diamond:
      return Formula::diamond(f->action(), substitute(f->child(), var, value));
    case Formula::Kind::Box:
      return Formula::box(f->action(), substitute(f->child(), var, value));
    case Formula::Kind::And:
      return Formula::conj(substitute(f->left(), var, value),
                           substitute(f->right(), var, value));
    case Formula::Kind::Or:
      return Formula::disj(substitute(f->left(), var, value),
                           substitute(f->right(), var, value));
    case Formula::Kind::LeastFix:
    case Formula::Kind::GreatestFix: {
      if (f->variable() == var) return f;  // inner binder shadows
      FormulaPtr body = f->child();
      std::string binder = f->variable();
      if (free_variables(value).count(binder) &&
          free_variables(body).count(var)) {
        // the binder would capture a free variable of value: rename it
        std::set<std::string> avoid = free_variables(value);
        auto bodyfv = free_variables(body);
        avoid.insert(bodyfv.begin(), bodyfv.end());
        avoid.insert(var);
        std::string renamed = fresh_variable(binder, avoid);
        body = substitute(body, binder, Formula::var(renamed));
        binder = renamed;
      }
      FormulaPtr newBody = substitute(body, var, value);
      return f->kind() == Formula::Kind::LeastFix
                 ? Formula::least(binder, newBody)
                 : Formula::greatest(binder, newBody);
    }
  }
  return f;
}

FormulaPtr unfold(const FormulaPtr& fixpoint) {
  if (!fixpoint->is_fixpoint()) throw NotAFixpointError();
  return substitute(fixpoint->child(), fixpoint->variable(), fixpoint);
}

namespace {

void collect_actions(const FormulaPtr& f, std::vector<Action>& out) {
  switch (f->kind()) {
    case Formula::Kind::Truth:
    case Formula::Kind::Falsity:
    case Formula::Kind::Var:
      return;
    case Formula::Kind::Diamond:
    case Formula::Kind::Box:
      if (std::find(out.begin(), out.end(), f->action()) == out.end())
        out.push_back(f->action());
      collect_actions(f->child(), out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      collect_actions(f->left(), out);
      collect_actions(f->right(), out);
      return;
    case Formula::Kind::LeastFix:
    case Formula::Kind::GreatestFix:
      collect_actions(f->child(), out);
      return;
  }
}

}  // namespace

Alphabet infer_alphabet(const FormulaPtr& f) {
  std::vector<Action> out;
  collect_actions(f, out);
  return Alphabet(out);
}

FormulaPtr simplify_units(const FormulaPtr& f) {
  switch (f->kind()) {
    case Formula::Kind::Truth:
    case Formula::Kind::Falsity:
    case Formula::Kind::Var:
      return f;
    case Formula::Kind::Diamond: {
      FormulaPtr c = simplify_units(f->child());
      if (c->kind() == Formula::Kind::Falsity) return c;  // <a>ff = ff
      return c == f->child() ? f : Formula::diamond(f->action(), c);
    }
    case Formula::Kind::Box: {
      FormulaPtr c = simplify_units(f->child());
      if (c->kind() == Formula::Kind::Truth) return c;  // [a]tt = tt
      return c == f->child() ? f : Formula::box(f->action(), c);
    }
    case Formula::Kind::And: {
      FormulaPtr l = simplify_units(f->left());
      FormulaPtr r = simplify_units(f->right());
      if (l->kind() == Formula::Kind::Falsity) return l;
      if (r->kind() == Formula::Kind::Falsity) return r;
      if (l->kind() == Formula::Kind::Truth) return r;
      if (r->kind() == Formula::Kind::Truth) return l;
      return l == f->left() && r == f->right() ? f : Formula::conj(l, r);
    }
    case Formula::Kind::Or: {
      FormulaPtr l = simplify_units(f->left());
      FormulaPtr r = simplify_units(f->right());
      if (l->kind() == Formula::Kind::Truth) return l;
      if (r->kind() == Formula::Kind::Truth) return r;
      if (l->kind() == Formula::Kind::Falsity) return r;
      if (r->kind() == Formula::Kind::Falsity) return l;
      return l == f->left() && r == f->right() ? f : Formula::disj(l, r);
    }
    case Formula::Kind::LeastFix:
    case Formula::Kind::GreatestFix: {
      FormulaPtr body = simplify_units(f->child());
      if (body->kind() == Formula::Kind::Truth ||
          body->kind() == Formula::Kind::Falsity)
        return body;
      if (!free_variables(body).count(f->variable())) return body;
      if (body == f->child()) return f;
      return f->kind() == Formula::Kind::LeastFix
                 ? Formula::least(f->variable(), body)
                 : Formula::greatest(f->variable(), body);
    }
  }
  return f;
}

size_t formula_size(const FormulaPtr& f) {
  switch (f->kind()) {
    case Formula::Kind::Truth:
    case Formula::Kind::Falsity:
    case Formula::Kind::Var:
      return 1;
    case Formula::Kind::Diamond:
    case Formula::Kind::Box:
    case Formula::Kind::LeastFix:
    case Formula::Kind::GreatestFix:
      return 1 + formula_size(f->child());
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return 1 + formula_size(f->left()) + formula_size(f->right());
  }
  return 1;
}

void require_well_formed(const FormulaPtr& f) {
  ValidationReport rep = validate(f);
  if (!rep.closed) throw OpenFormulaError(rep.free_vars.front());
  if (!rep.guarded) throw UnguardedError(rep.unguarded_vars.front());
}

}  // namespace recmon
