#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "recmon/alphabet.hpp"

namespace recmon {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/* Immutable recHML formula over finfinite traces.

   Concrete grammar (actions lowercase, variables uppercase; '&' binds
   tighter than '|'; a modal prefix takes the smallest formula to its right;
   a fixpoint body extends as far right as possible):

     F ::= tt | ff | <a>F | [a]F | F & F | F | F
         | max X.F | min X.F | X | (F)
*/
class Formula {
 public:
  enum class Kind {
    Truth,
    Falsity,
    Diamond,
    Box,
    And,
    Or,
    LeastFix,
    GreatestFix,
    Var,
  };

  Kind kind() const { return kind_; }
  const Action& action() const { return action_; }        // Diamond/Box
  const std::string& variable() const { return var_; }    // fixpoints, Var
  const FormulaPtr& child() const { return left_; }       // modal/fixpoint body
  const FormulaPtr& left() const { return left_; }        // And/Or
  const FormulaPtr& right() const { return right_; }

  bool is_fixpoint() const {
    return kind_ == Kind::LeastFix || kind_ == Kind::GreatestFix;
  }
  bool is_modal() const {
    return kind_ == Kind::Diamond || kind_ == Kind::Box;
  }

  static FormulaPtr truth();
  static FormulaPtr falsity();
  static FormulaPtr diamond(Action a, FormulaPtr body);
  static FormulaPtr box(Action a, FormulaPtr body);
  static FormulaPtr conj(FormulaPtr l, FormulaPtr r);
  static FormulaPtr disj(FormulaPtr l, FormulaPtr r);
  static FormulaPtr least(std::string var, FormulaPtr body);
  static FormulaPtr greatest(std::string var, FormulaPtr body);
  static FormulaPtr var(std::string name);

 private:
  Formula(Kind k, Action a, std::string v, FormulaPtr l, FormulaPtr r)
      : kind_(k),
        action_(std::move(a)),
        var_(std::move(v)),
        left_(std::move(l)),
        right_(std::move(r)) {}

  Kind kind_;
  Action action_;
  std::string var_;
  FormulaPtr left_;
  FormulaPtr right_;
};

bool equal(const FormulaPtr& a, const FormulaPtr& b);

/* Minimal-parenthesis text form; parse_formula(print_formula(f)) is
   structurally equal to f. */
std::string print_formula(const FormulaPtr& f);
FormulaPtr parse_formula(const std::string& text);

/* parse_formula plus session checks: every action must be in the alphabet
   (UnknownActionError) and the formula closed (UnboundVariableError). */
FormulaPtr parse_formula(const std::string& text, const Alphabet& sigma);

struct ValidationReport {
  bool closed = true;
  std::vector<std::string> free_vars;
  bool guarded = true;
  std::vector<std::string> unguarded_vars;
  std::set<Action> actions;
  bool ok() const { return closed && guarded; }
};
ValidationReport validate(const FormulaPtr& f);

std::set<std::string> free_variables(const FormulaPtr& f);

/* Capture-avoiding substitution of value for free occurrences of var. */
FormulaPtr substitute(const FormulaPtr& f, const std::string& var,
                      const FormulaPtr& value);

/* One unfolding body[fix/X] of a fixpoint; NotAFixpointError otherwise. */
FormulaPtr unfold(const FormulaPtr& fixpoint);

/* Actions occurring in the formula, in first-occurrence order. */
Alphabet infer_alphabet(const FormulaPtr& f);

/* Unit simplification: drops tt/ff units, dead modalities (<a>ff, [a]tt)
   and trivial fixpoints.  The result denotes the same trace set. */
FormulaPtr simplify_units(const FormulaPtr& f);

size_t formula_size(const FormulaPtr& f);

/* Throws OpenFormulaError / UnguardedError unless validate(f).ok(). */
void require_well_formed(const FormulaPtr& f);

}  // namespace recmon
