#include "recmon/ltl.hpp"

#include "scan.hpp"

namespace recmon {

LtlPtr Ltl::truth() {
  static const LtlPtr l(new Ltl(Kind::Truth, {}, nullptr, nullptr));
  return l;
}

LtlPtr Ltl::falsity() {
  static const LtlPtr l(new Ltl(Kind::Falsity, {}, nullptr, nullptr));
  return l;
}

LtlPtr Ltl::atom(Action a) {
  return LtlPtr(new Ltl(Kind::Atom, std::move(a), nullptr, nullptr));
}

LtlPtr Ltl::neg_atom(Action a) {
  return LtlPtr(new Ltl(Kind::NegAtom, std::move(a), nullptr, nullptr));
}

LtlPtr Ltl::next(LtlPtr p) {
  return LtlPtr(new Ltl(Kind::Next, {}, std::move(p), nullptr));
}

LtlPtr Ltl::finally(LtlPtr p) {
  return LtlPtr(new Ltl(Kind::Finally, {}, std::move(p), nullptr));
}

LtlPtr Ltl::globally(LtlPtr p) {
  return LtlPtr(new Ltl(Kind::Globally, {}, std::move(p), nullptr));
}

LtlPtr Ltl::until(LtlPtr l, LtlPtr r) {
  return LtlPtr(new Ltl(Kind::Until, {}, std::move(l), std::move(r)));
}

LtlPtr Ltl::release(LtlPtr l, LtlPtr r) {
  return LtlPtr(new Ltl(Kind::Release, {}, std::move(l), std::move(r)));
}

LtlPtr Ltl::conj(LtlPtr l, LtlPtr r) {
  return LtlPtr(new Ltl(Kind::And, {}, std::move(l), std::move(r)));
}

LtlPtr Ltl::disj(LtlPtr l, LtlPtr r) {
  return LtlPtr(new Ltl(Kind::Or, {}, std::move(l), std::move(r)));
}

namespace {

/* Precedence levels: 0 '|', 1 '&', 2 'U'/'R' (right-associative), 3 unary
   and atoms. */

LtlPtr parse_or_ltl(detail::Scanner& s);

LtlPtr parse_unary_ltl(detail::Scanner& s) {
  if (s.try_eat('(')) {
    LtlPtr l = parse_or_ltl(s);
    s.expect(')', "to close '('");
    return l;
  }
  if (s.try_eat('!')) {
    size_t pos = s.pos();
    std::string a = s.try_word();
    if (!is_action_name(a)) throw SyntaxError("expected action after '!'", pos);
    return Ltl::neg_atom(a);
  }
  size_t pos = s.pos();
  std::string word = s.try_word();
  if (word.empty()) throw SyntaxError("expected formula", pos);
  if (word == "tt") return Ltl::truth();
  if (word == "ff") return Ltl::falsity();
  if (word == "X") return Ltl::next(parse_unary_ltl(s));
  if (word == "F") return Ltl::finally(parse_unary_ltl(s));
  if (word == "G") return Ltl::globally(parse_unary_ltl(s));
  if (is_action_name(word)) return Ltl::atom(word);
  throw SyntaxError("unexpected word '" + word + "'", pos);
}

LtlPtr parse_until_ltl(detail::Scanner& s) {
  LtlPtr l = parse_unary_ltl(s);
  std::string word = s.try_word();
  if (word == "U") return Ltl::until(l, parse_until_ltl(s));
  if (word == "R") return Ltl::release(l, parse_until_ltl(s));
  if (!word.empty()) s.put_back(word);
  return l;
}

LtlPtr parse_and_ltl(detail::Scanner& s) {
  LtlPtr l = parse_until_ltl(s);
  while (s.try_eat('&')) l = Ltl::conj(l, parse_until_ltl(s));
  return l;
}

LtlPtr parse_or_ltl(detail::Scanner& s) {
  LtlPtr l = parse_and_ltl(s);
  while (s.try_eat('|')) l = Ltl::disj(l, parse_and_ltl(s));
  return l;
}

void pr_ltl(std::string& out, const LtlPtr& l, int min_prec) {
  switch (l->kind()) {
    case Ltl::Kind::Truth:
      out += "tt";
      return;
    case Ltl::Kind::Falsity:
      out += "ff";
      return;
    case Ltl::Kind::Atom:
      out += l->atom();
      return;
    case Ltl::Kind::NegAtom:
      out += '!';
      out += l->atom();
      return;
    case Ltl::Kind::Next:
    case Ltl::Kind::Finally:
    case Ltl::Kind::Globally:
      out += l->kind() == Ltl::Kind::Next      ? "X "
             : l->kind() == Ltl::Kind::Finally ? "F "
                                               : "G ";
      pr_ltl(out, l->child(), 3);
      return;
    case Ltl::Kind::Until:
    case Ltl::Kind::Release: {
      bool paren = min_prec > 2;
      if (paren) out += '(';
      pr_ltl(out, l->left(), 3);
      out += l->kind() == Ltl::Kind::Until ? " U " : " R ";
      pr_ltl(out, l->right(), 2);
      if (paren) out += ')';
      return;
    }
    case Ltl::Kind::And: {
      bool paren = min_prec > 1;
      if (paren) out += '(';
      pr_ltl(out, l->left(), 1);
      out += " & ";
      pr_ltl(out, l->right(), 2);
      if (paren) out += ')';
      return;
    }
    case Ltl::Kind::Or: {
      bool paren = min_prec > 0;
      if (paren) out += '(';
      pr_ltl(out, l->left(), 0);
      out += " | ";
      pr_ltl(out, l->right(), 1);
      if (paren) out += ')';
      return;
    }
  }
}

class Encoder {
 public:
  explicit Encoder(const Alphabet& sigma) : sigma_(sigma) {}

  FormulaPtr encode(const LtlPtr& l) {
    switch (l->kind()) {
      case Ltl::Kind::Truth:
        return Formula::truth();
      case Ltl::Kind::Falsity:
        return Formula::falsity();
      case Ltl::Kind::Atom:
        require_action(l->atom());
        return Formula::diamond(l->atom(), Formula::truth());
      case Ltl::Kind::NegAtom:
        require_action(l->atom());
        return Formula::box(l->atom(), Formula::falsity());
      case Ltl::Kind::Next:
        return strong_next(encode(l->child()));
      case Ltl::Kind::Until: {
        std::string y = fresh();  // binder named before operands: pre-order
        FormulaPtr p = encode(l->left());
        FormulaPtr q = encode(l->right());
        return Formula::least(
            y,
            Formula::disj(q, Formula::conj(p, strong_next(Formula::var(y)))));
      }
      case Ltl::Kind::Release: {
        std::string y = fresh();
        FormulaPtr p = encode(l->left());
        FormulaPtr q = encode(l->right());
        return Formula::greatest(
            y, Formula::disj(Formula::conj(q, p),
                             Formula::conj(q, strong_next(Formula::var(y)))));
      }
      case Ltl::Kind::Finally: {
        // tt U p, the tt conjunct kept literally
        std::string y = fresh();
        FormulaPtr q = encode(l->child());
        return Formula::least(
            y, Formula::disj(q, Formula::conj(Formula::truth(),
                                              strong_next(Formula::var(y)))));
      }
      case Ltl::Kind::Globally: {
        // ff R p
        std::string y = fresh();
        FormulaPtr q = encode(l->child());
        return Formula::greatest(
            y, Formula::disj(Formula::conj(q, Formula::falsity()),
                             Formula::conj(q, strong_next(Formula::var(y)))));
      }
      case Ltl::Kind::And:
        return Formula::conj(encode(l->left()), encode(l->right()));
      case Ltl::Kind::Or:
        return Formula::disj(encode(l->left()), encode(l->right()));
    }
    return Formula::truth();
  }

 private:
  void require_action(const Action& a) {
    if (!sigma_.contains(a)) throw UnknownActionError(a);
  }

  std::string fresh() { return "Y" + std::to_string(counter_++); }

  /* ⋁_{a∈Σ} <a>p, left-folded in alphabet order; p is shared. */
  FormulaPtr strong_next(const FormulaPtr& p) {
    FormulaPtr out;
    for (const Action& a : sigma_.actions()) {
      FormulaPtr d = Formula::diamond(a, p);
      out = out ? Formula::disj(out, d) : d;
    }
    return out;
  }

  const Alphabet& sigma_;
  size_t counter_ = 0;
};

}  // namespace

LtlPtr parse_ltl(const std::string& text) {
  detail::Scanner s(text);
  LtlPtr l = parse_or_ltl(s);
  s.expect_end("formula");
  return l;
}

std::string print_ltl(const LtlPtr& l) {
  std::string out;
  pr_ltl(out, l, 0);
  return out;
}

FormulaPtr encode_ltl(const LtlPtr& l, const Alphabet& sigma) {
  Encoder enc(sigma);
  return enc.encode(l);
}

FormulaPtr encode_ltl(const std::string& text, const Alphabet& sigma) {
  return encode_ltl(parse_ltl(text), sigma);
}

}  // namespace recmon
