#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corpus.hpp"
#include "recmon/semantics.hpp"
#include "recmon/trace.hpp"

using namespace recmon;

namespace {

const Session& session3() {
  static const Session s{corpus::sigma3()};
  return s;
}

FinfiniteTrace tr(const std::string& text) { return FinfiniteTrace::parse(text); }

}  // namespace

TEST_CASE("trace text round-trips") {
  for (const char* text : {"eps", "f", "f.s.r", "f.s(r)^w", "(s)^w",
                           "f.f.f.f(s.r)^w"}) {
    CHECK(tr(text).to_string() == text);
  }
  CHECK_THROWS_AS(tr("f..s"), SyntaxError);
  CHECK_THROWS_AS(tr("f()^w"), SyntaxError);
  CHECK_THROWS_AS(tr("(f)^w.s"), SyntaxError);
  CHECK_THROWS_AS(tr("eps.f"), SyntaxError);  // eps is the empty trace only
}

TEST_CASE("position_count covers prefix, loop and the finished state") {
  CHECK(tr("eps").position_count() == 1);
  CHECK(tr("f.s").position_count() == 3);   // two events plus finished
  CHECK(tr("f(s.r)^w").position_count() == 3);  // no finished state
}

TEST_CASE("finite_traces_upto enumerates in length-lexicographic order") {
  std::vector<FiniteTrace> got = finite_traces_upto(Alphabet::parse("a,b"), 2);
  std::vector<std::string> names;
  for (const FiniteTrace& t : got) names.push_back(print_trace(t));
  CHECK(names == std::vector<std::string>{"eps", "a", "b", "a.a", "a.b",
                                          "b.a", "b.b"});
}

TEST_CASE("bounded_universe has the expected cardinality") {
  // 364 finite traces up to length 5 and 426 lasso splits up to size 4.
  CHECK(bounded_universe(corpus::sigma3(), 5, 4).size() == 790);
}

TEST_CASE("eval on constants and modalities") {
  CHECK(eval(parse_formula("tt"), tr("eps")));
  CHECK_FALSE(eval(parse_formula("ff"), tr("(f)^w")));

  // A box is vacuously true when the trace cannot take the action.
  CHECK(eval(parse_formula("[f]ff"), tr("eps")));
  CHECK(eval(parse_formula("[f]ff"), tr("s.f")));
  CHECK_FALSE(eval(parse_formula("[f]ff"), tr("f")));
  CHECK_FALSE(eval(parse_formula("<f>tt"), tr("eps")));
  CHECK(eval(parse_formula("<f>tt"), tr("f.s")));
}

TEST_CASE("eval fixpoints over lassos") {
  FormulaPtr always_not_f = parse_formula("max X.([f]ff & [s]X & [r]X)");
  CHECK(eval(always_not_f, tr("s.r(s)^w")));
  CHECK(eval(always_not_f, tr("s.r.s")));
  CHECK_FALSE(eval(always_not_f, tr("s.f")));
  CHECK_FALSE(eval(always_not_f, tr("s.r(s.f)^w")));

  // Least fixpoint of <s>X has no finite witness: empty denotation.
  CHECK_FALSE(eval(parse_formula("min X.<s>X"), tr("(s)^w")));
  CHECK(eval(parse_formula("max X.<s>X"), tr("(s)^w")));
  CHECK_FALSE(eval(parse_formula("max X.<s>X"), tr("s.s.s")));

  FormulaPtr eventually_s = parse_formula("min X.(<s>tt | <f>X | <s>X | <r>X)");
  CHECK(eval(eventually_s, tr("f.r.s")));
  CHECK_FALSE(eval(eventually_s, tr("f.r")));
  CHECK(eval(eventually_s, tr("f(r.s)^w")));
  CHECK_FALSE(eval(eventually_s, tr("f(r)^w")));
}

TEST_CASE("eval rejects open or unguarded formulas") {
  CHECK_THROWS_AS(eval(parse_formula("[f]X"), tr("f")), OpenFormulaError);
  CHECK_THROWS_AS(eval(parse_formula("max X.X"), tr("f")), UnguardedError);
}

TEST_CASE("residual peels one action") {
  CHECK(print_formula(residual(parse_formula("[f]ff"), Action("f"))) == "ff");
  CHECK(print_formula(residual(parse_formula("[f]ff"), Action("s"))) == "tt");
  CHECK(print_formula(residual(parse_formula("<f>tt"), Action("s"))) == "ff");

  // Fixpoints unfold before the step.
  FormulaPtr fix = parse_formula("max X.([f]ff & [s]X & [r]X)");
  FormulaPtr after_s = simplify_units(residual(fix, Action("s")));
  CHECK(equal(after_s, fix));
  CHECK(print_formula(simplify_units(residual(fix, Action("f")))) == "ff");
}

TEST_CASE("residual agrees with eval over extensions") {
  corpus::FormulaGen gen(11, corpus::sigma3());
  std::mt19937 rng(99);
  for (int i = 0; i < 60; ++i) {
    FormulaPtr f = gen.mixed(3);
    FiniteTrace s = corpus::random_trace(rng, corpus::sigma3(), 2);
    FinfiniteTrace rest = corpus::random_finfinite(rng, corpus::sigma3(), 3);
    FormulaPtr res = residual(f, s);
    INFO("formula := ", print_formula(f), " s := ", print_trace(s), " rest := ", rest.to_string());
    CHECK(eval(res, rest) == eval(f, rest.prepend(s)));
  }
}

TEST_CASE("determines uses the fragment-exact path on safety formulas") {
  FormulaPtr f = parse_formula("max X.([f]ff & [s]X & [r]X)");

  DeterminationResult neg = determines(f, parse_finite_trace("f"),
                                       Polarity::Negative, session3());
  CHECK(neg.status == DeterminationStatus::Determined);
  CHECK(neg.path == DecisionPath::FragmentExact);

  DeterminationResult open = determines(f, parse_finite_trace("s"),
                                        Polarity::Negative, session3());
  CHECK(open.status == DeterminationStatus::NotDetermined);
  REQUIRE(open.counterexample.has_value());
  // The counterexample extends s and satisfies the formula.
  CHECK(eval(f, *open.counterexample));

  DeterminationResult pos = determines(f, parse_finite_trace("s"),
                                       Polarity::Positive, session3());
  CHECK(pos.status == DeterminationStatus::NotDetermined);
  REQUIRE(pos.counterexample.has_value());
  CHECK_FALSE(eval(f, *pos.counterexample));
}

TEST_CASE("determines finds residual collapses outside the fragments") {
  // (<f>tt | <s>tt) & (<f>tt | <r>tt) is in neither fragment; after f the
  // residual collapses to tt.
  FormulaPtr f = parse_formula("(<f>tt | <s>tt) & (<f>tt | <r>tt)");
  DeterminationResult pos = determines(f, parse_finite_trace("f"),
                                       Polarity::Positive, session3());
  CHECK(pos.determined());
  CHECK(pos.path != DecisionPath::BoundedSearch);
}

TEST_CASE("determines stays unknown on recurrence formulas") {
  // Always-eventually-s has no determining finite trace at all.
  FormulaPtr f = parse_formula(
      "max Y0.(min Y1.(<s>tt | (<f>Y1 | <s>Y1 | <r>Y1))) & "
      "(<f>Y0 | <s>Y0 | <r>Y0)");
  for (Polarity pol : {Polarity::Positive, Polarity::Negative}) {
    DeterminationResult r =
        determines(f, parse_finite_trace("f.s"), pol, session3());
    CHECK_FALSE(r.determined());
  }
}

TEST_CASE("d_sets_upto finds the frozen minimal determining sets") {
  FormulaPtr f = parse_formula("max X.([f]ff & [s]X & [r]X)");
  DeterminingSets ds = d_sets_upto(f, 2, session3());
  CHECK(ds.minimal_positive.empty());
  std::vector<std::string> neg;
  for (const FiniteTrace& t : ds.minimal_negative) neg.push_back(print_trace(t));
  CHECK(neg == std::vector<std::string>{"f", "s.f", "r.f"});
}

TEST_CASE("d_sets_upto keeps only prefix-minimal traces") {
  FormulaPtr f = parse_formula("[f]ff");
  DeterminingSets ds = d_sets_upto(f, 3, session3());
  std::vector<std::string> neg;
  for (const FiniteTrace& t : ds.minimal_negative) neg.push_back(print_trace(t));
  CHECK(neg == std::vector<std::string>{"f"});
  // Positive determination happens once f can no longer occur first.
  std::vector<std::string> pos;
  for (const FiniteTrace& t : ds.minimal_positive) pos.push_back(print_trace(t));
  CHECK(pos == std::vector<std::string>{"s", "r"});
}

TEST_CASE("determination is extension-closed on corpus formulas") {
  corpus::FormulaGen gen(31, corpus::sigma3());
  std::mt19937 rng(5);
  int checked = 0;
  for (int i = 0; i < 40 && checked < 12; ++i) {
    FormulaPtr f = gen.shml(2);
    FiniteTrace s = corpus::random_trace(rng, corpus::sigma3(), 2);
    DeterminationResult r =
        determines(f, s, Polarity::Negative, session3());
    if (!r.determined()) continue;
    ++checked;
    FiniteTrace longer = s;
    longer.push_back(corpus::sigma3().at(i % 3));
    DeterminationResult r2 =
        determines(f, longer, Polarity::Negative, session3());
    INFO("formula := ", print_formula(f), " s := ", print_trace(s));
    CHECK(r2.determined());
  }
  CHECK(checked > 0);
}
