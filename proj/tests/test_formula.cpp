#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corpus.hpp"
#include "recmon/formula.hpp"

using namespace recmon;

TEST_CASE("precedence: & binds tighter than |") {
  FormulaPtr f = parse_formula("tt & ff | tt");
  REQUIRE(f->kind() == Formula::Kind::Or);
  CHECK(f->left()->kind() == Formula::Kind::And);

  FormulaPtr g = parse_formula("tt | ff & tt");
  REQUIRE(g->kind() == Formula::Kind::Or);
  CHECK(g->right()->kind() == Formula::Kind::And);
}

TEST_CASE("modal prefix binds a single operand") {
  FormulaPtr f = parse_formula("<f>tt & ff");
  REQUIRE(f->kind() == Formula::Kind::And);
  CHECK(f->left()->kind() == Formula::Kind::Diamond);
  CHECK(f->right()->kind() == Formula::Kind::Falsity);

  FormulaPtr g = parse_formula("[f][s]ff");
  REQUIRE(g->kind() == Formula::Kind::Box);
  CHECK(g->child()->kind() == Formula::Kind::Box);
}

TEST_CASE("fixpoint scope extends maximally to the right") {
  FormulaPtr f = parse_formula("max X.[f]ff & [s]X");
  REQUIRE(f->kind() == Formula::Kind::GreatestFix);
  CHECK(f->child()->kind() == Formula::Kind::And);

  // Parenthesizing the binder stops the capture.
  FormulaPtr g = parse_formula("(max X.[f]X) & tt");
  REQUIRE(g->kind() == Formula::Kind::And);
  CHECK(g->left()->kind() == Formula::Kind::GreatestFix);
}

TEST_CASE("printer emits minimal parentheses") {
  CHECK(print_formula(parse_formula("tt & (ff | tt)")) == "tt & (ff | tt)");
  CHECK(print_formula(parse_formula("(tt & ff) | tt")) == "tt & ff | tt");
  CHECK(print_formula(parse_formula("(max X.[f]X) & tt")) ==
        "(max X.[f]X) & tt");
  CHECK(print_formula(parse_formula("max X.([f]ff & [s]X & [r]X)")) ==
        "max X.[f]ff & [s]X & [r]X");
  CHECK(print_formula(parse_formula("[f](tt & ff)")) == "[f](tt & ff)");
  // A fixpoint right under a modal prefix needs no parens: nothing follows
  // that the maximal-right scope could swallow.
  CHECK(print_formula(parse_formula("<s>(min Y.<s>Y)")) == "<s>min Y.<s>Y");
  CHECK(equal(parse_formula("<s>min Y.<s>Y"), parse_formula("<s>(min Y.<s>Y)")));
}

TEST_CASE("parse rejects malformed input with positions") {
  CHECK_THROWS_AS(parse_formula("tt &"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("<>tt"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("max x.tt"), SyntaxError);  // lowercase var
  CHECK_THROWS_AS(parse_formula("[F]tt"), SyntaxError);     // uppercase action
  CHECK_THROWS_AS(parse_formula("tt tt"), SyntaxError);     // trailing junk
  CHECK_THROWS_AS(parse_formula(""), SyntaxError);
}

TEST_CASE("session parse checks alphabet membership and closedness") {
  Alphabet sigma = Alphabet::parse("f,s");
  CHECK_THROWS_AS(parse_formula("[r]ff", sigma), UnknownActionError);
  CHECK_THROWS_AS(parse_formula("[f]X", sigma), UnboundVariableError);
  CHECK_NOTHROW(parse_formula("max X.[f]X", sigma));
}

TEST_CASE("validate reports free and unguarded variables") {
  ValidationReport open = validate(parse_formula("[f]X"));
  CHECK_FALSE(open.closed);
  REQUIRE(open.free_vars.size() == 1);
  CHECK(open.free_vars[0] == "X");

  ValidationReport unguarded = validate(parse_formula("max X.(X & [f]tt)"));
  CHECK(unguarded.closed);
  CHECK_FALSE(unguarded.guarded);
  REQUIRE(unguarded.unguarded_vars.size() == 1);
  CHECK(unguarded.unguarded_vars[0] == "X");

  ValidationReport ok = validate(parse_formula("max X.[f](X & [s]X)"));
  CHECK(ok.ok());
  CHECK(ok.actions == std::set<Action>{"f", "s"});
}

TEST_CASE("require_well_formed throws on open or unguarded input") {
  CHECK_THROWS_AS(require_well_formed(parse_formula("[f]X")),
                  OpenFormulaError);
  CHECK_THROWS_AS(require_well_formed(parse_formula("max X.X")),
                  UnguardedError);
}

TEST_CASE("substitution is capture-avoiding") {
  // Substituting a formula with free X under a binder of X must rename.
  FormulaPtr body = parse_formula("max X.[f](X & Y)");
  FormulaPtr value = Formula::diamond("s", Formula::var("X"));
  FormulaPtr out = substitute(body, "Y", value);
  REQUIRE(out->kind() == Formula::Kind::GreatestFix);
  CHECK(out->variable() != "X");  // binder renamed away from the capture
  CHECK(free_variables(out) == std::set<std::string>{"X"});
}

TEST_CASE("unfold replaces the binder variable with the fixpoint") {
  FormulaPtr fix = parse_formula("max X.[f]X");
  FormulaPtr once = unfold(fix);
  REQUIRE(once->kind() == Formula::Kind::Box);
  CHECK(equal(once->child(), fix));
  CHECK_THROWS_AS(unfold(parse_formula("tt")), NotAFixpointError);
}

TEST_CASE("infer_alphabet preserves first-occurrence order") {
  Alphabet sigma = infer_alphabet(parse_formula("<s>tt & [f]([s]ff | <r>tt)"));
  REQUIRE(sigma.size() == 3);
  CHECK(sigma.at(0) == "s");
  CHECK(sigma.at(1) == "f");
  CHECK(sigma.at(2) == "r");
}

TEST_CASE("simplify_units removes unit operands") {
  CHECK(print_formula(simplify_units(parse_formula("tt & [f]ff"))) == "[f]ff");
  CHECK(print_formula(simplify_units(parse_formula("ff | <s>tt"))) == "<s>tt");
  CHECK(print_formula(simplify_units(parse_formula("ff & <s>tt"))) == "ff");
  CHECK(print_formula(simplify_units(parse_formula("tt | <s>tt"))) == "tt");
}

TEST_CASE("print/parse round-trips structurally over a random corpus") {
  corpus::FormulaGen gen(20260817, corpus::sigma3());
  for (int i = 0; i < 300; ++i) {
    FormulaPtr f = gen.mixed(3);
    FormulaPtr back = parse_formula(print_formula(f));
    CAPTURE(print_formula(f));
    CHECK(equal(f, back));
  }
}

TEST_CASE("generated corpus formulas are closed and guarded") {
  corpus::FormulaGen gen(7, corpus::sigma3());
  for (int i = 0; i < 200; ++i) {
    FormulaPtr f = gen.mixed(4);
    CAPTURE(print_formula(f));
    CHECK(validate(f).ok());
  }
}

TEST_CASE("formula_size counts nodes") {
  CHECK(formula_size(parse_formula("tt")) == 1);
  CHECK(formula_size(parse_formula("[f]tt & ff")) == 4);
}
