#pragma once

#include <memory>
#include <string>

#include "recmon/formula.hpp"

namespace recmon {

class Ltl;
using LtlPtr = std::shared_ptr<const Ltl>;

/* LTL formula over action atoms.  Concrete grammar (unary operators bind
   tightest, then U and R right-associatively, then '&', then '|'):

     L ::= tt | ff | a | !a | X L | F L | G L
         | L U L | L R L | L & L | L | L | (L)
*/
class Ltl {
 public:
  enum class Kind { Truth, Falsity, Atom, NegAtom, Next, Finally, Globally, Until, Release, And, Or };

  Kind kind() const { return kind_; }
  const Action& atom() const { return atom_; }
  const LtlPtr& child() const { return left_; }  // unary operand
  const LtlPtr& left() const { return left_; }
  const LtlPtr& right() const { return right_; }

  static LtlPtr truth();
  static LtlPtr falsity();
  static LtlPtr atom(Action a);
  static LtlPtr neg_atom(Action a);
  static LtlPtr next(LtlPtr p);
  static LtlPtr finally(LtlPtr p);
  static LtlPtr globally(LtlPtr p);
  static LtlPtr until(LtlPtr l, LtlPtr r);
  static LtlPtr release(LtlPtr l, LtlPtr r);
  static LtlPtr conj(LtlPtr l, LtlPtr r);
  static LtlPtr disj(LtlPtr l, LtlPtr r);

 private:
  Ltl(Kind k, Action a, LtlPtr l, LtlPtr r)
      : kind_(k), atom_(std::move(a)), left_(std::move(l)), right_(std::move(r)) {}

  Kind kind_;
  Action atom_;
  LtlPtr left_;
  LtlPtr right_;
};

LtlPtr parse_ltl(const std::string& text);
std::string print_ltl(const LtlPtr& l);

/* Encoding into recHML with a strong next: X p becomes ⋁_a ⟨a⟩p over the
   whole alphabet, p U q becomes min Y.(q ∨ (p ∧ XY)), p R q becomes
   max Y.((q ∧ p) ∨ (q ∧ XY)), F p = tt U p, G p = ff R p, atom a = <a>tt,
   !a = [a]ff.  Fresh fixpoint variables are Y0, Y1, ... allocated in
   pre-order; a duplicated operand is encoded once and shared.  Throws
   UnknownActionError for atoms outside the alphabet.  The result is closed
   and guarded. */
FormulaPtr encode_ltl(const LtlPtr& l, const Alphabet& sigma);

/* parse_ltl followed by encode_ltl. */
FormulaPtr encode_ltl(const std::string& text, const Alphabet& sigma);

}  // namespace recmon
