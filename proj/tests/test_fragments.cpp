#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corpus.hpp"
#include "recmon/automaton.hpp"
#include "recmon/errors.hpp"
#include "recmon/fragments.hpp"
#include "recmon/synthesis.hpp"
#include "recmon/trace.hpp"

using namespace recmon;

namespace {

const Alphabet& sigma3() { return corpus::sigma3(); }

const Session& session3() {
  static const Session s{sigma3()};
  return s;
}

FragmentFlags flags_of(const std::string& text) {
  return fragment_membership(parse_formula(text), sigma3());
}

}  // namespace

TEST_CASE("safety and co-safety grammar membership") {
  CHECK(in_shml(parse_formula("max X.([f]ff & [s]X & [r]X)")));
  CHECK(in_shml(parse_formula("tt")));
  CHECK(in_shml(parse_formula("ff")));
  CHECK_FALSE(in_shml(parse_formula("<f>tt")));
  CHECK_FALSE(in_shml(parse_formula("[f]ff | [s]ff")));
  CHECK_FALSE(in_shml(parse_formula("min X.[f]X")));

  CHECK(in_chml(parse_formula("min X.(<s>tt | <f>X | <s>X | <r>X)")));
  CHECK(in_chml(parse_formula("<f><s>tt")));
  CHECK_FALSE(in_chml(parse_formula("[f]ff")));
  CHECK_FALSE(in_chml(parse_formula("<f>tt & <s>tt")));
}

TEST_CASE("explicit grammar needs every modal group to cover the alphabet") {
  CHECK(in_ehml(parse_formula("max X.([f]ff & [s]X & [r]X)"), sigma3()));
  CHECK(in_ehml(parse_formula("tt"), sigma3()));
  CHECK(in_ehml(parse_formula("tt & tt"), sigma3()));
  // A partial box group is inexplicit.
  CHECK_FALSE(in_ehml(parse_formula("[f][s]ff"), sigma3()));
  CHECK_FALSE(in_ehml(parse_formula("[f]ff & [s]ff"), sigma3()));
  // A lone modality is explicit only over a singleton alphabet.
  CHECK(in_ehml(parse_formula("[f]ff"), Alphabet::parse("f")));
  CHECK_FALSE(in_ehml(parse_formula("[f]ff"), sigma3()));
  // Mixed-polarity chains cannot be completed.
  CHECK_FALSE(in_ehml(parse_formula("<f>tt & <s>tt"), sigma3()));
}

TEST_CASE("fragment_membership requires a closed formula") {
  CHECK_THROWS_AS(fragment_membership(parse_formula("[f]X"), sigma3()),
                  OpenFormulaError);
  FragmentFlags fl = flags_of("max X.([f]ff & [s]X & [r]X)");
  CHECK(fl.shml);
  CHECK_FALSE(fl.chml);
  CHECK(fl.ehml);
}

TEST_CASE("refutability levels count the fixpoint unfoldings to ff") {
  RefutabilityMap m = annotate_refutability(
      parse_formula("max X.([f]ff & [s]X & [r]X)"));
  // The binder body contains ff syntactically: level 0.
  CHECK(m.at(Path{}).refute_level == 0);
  CHECK(m.at(Path{0}).refute_level == 0);
  // [s]X refutes only through one unfolding of X.
  CHECK(m.at(Path{0, 0, 1}).refute_level == 1);
  CHECK_FALSE(m.at(Path{0, 0, 1}).verify_level.has_value());

  // Without any constant the formula never refutes or verifies.
  RefutabilityMap n = annotate_refutability(parse_formula("max X.[s]X"));
  for (const auto& [path, label] : n) {
    CHECK_FALSE(label.refute_level.has_value());
    CHECK_FALSE(label.verify_level.has_value());
  }
}

TEST_CASE("informative fragment: conjuncts carrying a refuting operand") {
  IhmlResult r = ihml_membership(
      parse_formula("(max X.([f]ff & [s]X & [r]X)) & (min Y.(<s>tt | <f>Y | <s>Y | <r>Y))"),
      sigma3());
  CHECK(r.cls == IhmlClass::SIHML);
  CHECK(r.conjunct == 0);
  CHECK_FALSE(r.implicit_partner);
  CHECK(print_formula(r.witness_part) == "max X.[f]ff & [s]X & [r]X");

  // A bare safety formula containing ff coerces via an implicit & tt.
  r = ihml_membership(parse_formula("ff"), sigma3());
  CHECK(r.cls == IhmlClass::SIHML);
  CHECK(r.conjunct == -1);
  CHECK(r.implicit_partner);

  // Strict mode refuses the implicit partner.
  r = ihml_membership(parse_formula("ff"), sigma3(), true);
  CHECK(r.cls == IhmlClass::None);

  // Disjunctions take the dual class.
  r = ihml_membership(parse_formula("tt | ff"), sigma3());
  CHECK(r.cls == IhmlClass::CIHML);

  // Safety without ff is uninformative.
  r = ihml_membership(parse_formula("max X.[s]X"), sigma3());
  CHECK(r.cls == IhmlClass::None);
}

TEST_CASE("persistently informative needs explicitness everywhere") {
  PihmlResult p = pihml_membership(
      parse_formula("(max X.([f]ff & [s]X & [r]X)) & (min Y.(<s>tt | <f>Y | <s>Y | <r>Y))"),
      sigma3());
  CHECK(p.cls == PihmlClass::SPIHML);
  CHECK(p.conjunct == 0);

  // [f][s]ff is informative but not explicit: some prefixes escape it.
  CHECK(ihml_membership(parse_formula("[f][s]ff & tt"), sigma3()).cls ==
        IhmlClass::SIHML);
  CHECK(pihml_membership(parse_formula("[f][s]ff & tt"), sigma3()).cls ==
        PihmlClass::None);

  // max X.[s]X is explicit over {s} but refutes nowhere.
  CHECK(pihml_membership(parse_formula("max X.[s]X"), Alphabet::parse("s")).cls ==
        PihmlClass::None);
}

TEST_CASE("make_explicit completes modal groups without changing meaning") {
  CHECK(print_formula(make_explicit(parse_formula("[f][s]ff"), sigma3())) ==
        "[f]([s]ff & [f]tt & [r]tt) & [s]tt & [r]tt");
  CHECK(print_formula(make_explicit(parse_formula("<f>tt"), sigma3())) ==
        "<f>tt | <s>ff | <r>ff");
  // Already-explicit formulas gain nothing.
  FormulaPtr fixed = parse_formula("max X.([f]ff & [s]X & [r]X)");
  CHECK(equal(make_explicit(fixed, sigma3()), fixed));

  for (const char* text : {"[f][s]ff", "<f>tt", "[f]ff & [s]ff",
                           "min X.(<s>tt | <f>X | <s>X | <r>X)"}) {
    FormulaPtr f = parse_formula(text);
    FormulaPtr g = make_explicit(f, sigma3());
    CHECK(in_ehml(g, sigma3()));
    for (const FinfiniteTrace& t : bounded_universe(sigma3(), 3, 3)) {
      INFO("formula := ", text, " trace := ", t.to_string());
      CHECK(eval(f, t) == eval(g, t));
    }
  }
}

TEST_CASE("witness_informative_trace finds a shallowest determining trace") {
  InformativeWitness w = witness_informative_trace(
      parse_formula("max X.([f]ff & [s]X & [r]X)"), session3());
  CHECK(print_trace(w.trace) == "f");
  CHECK(w.polarity == Polarity::Negative);

  // ff is refuted by the empty trace.
  w = witness_informative_trace(parse_formula("ff"), session3());
  CHECK(print_trace(w.trace) == "eps");

  w = witness_informative_trace(parse_formula("tt | <s>tt"), session3());
  CHECK(w.polarity == Polarity::Positive);
  CHECK(print_trace(w.trace) == "eps");

  CHECK_THROWS_AS(witness_informative_trace(parse_formula("max X.[s]X"),
                                            session3()),
                  NotInformativeError);
}

TEST_CASE("extension witnesses determine after every prefix") {
  FormulaPtr f = parse_formula(
      "(max X.([f]ff & [s]X & [r]X)) & (min Y.(<s>tt | <f>Y | <s>Y | <r>Y))");
  CHECK(print_trace(extend_to_violation(f, parse_finite_trace("eps"),
                                        session3())) == "f");
  CHECK(print_trace(extend_to_violation(f, parse_finite_trace("s"),
                                        session3())) == "f");
  // After f the safety operand is already dead; the extension is empty.
  CHECK(print_trace(extend_to_violation(f, parse_finite_trace("f"),
                                        session3())) == "eps");

  CHECK_THROWS_AS(extend_to_satisfaction(f, parse_finite_trace("eps"),
                                         session3()),
                  NotInFragmentError);
}

TEST_CASE("classify walks the ladder from the top") {
  ClassificationReport r = classify(parse_formula("tt"), session3());
  CHECK(r.level == HierarchyLevel::Complete);
  CHECK(r.basis == LevelBasis::Syntactic);

  // Semantically trivial but not literally tt.
  r = classify(parse_formula("[f]tt"), session3());
  CHECK(r.level == HierarchyLevel::Complete);
  CHECK(r.basis == LevelBasis::SemanticBounded);

  r = classify(parse_formula("max X.([f]ff & [s]X & [r]X)"), session3());
  CHECK(r.level == HierarchyLevel::Safety);
  CHECK(r.oracle.disagreements.empty());
  CHECK(r.oracle.agreements > 0);

  r = classify(parse_formula("min X.(<s>tt | <f>X | <s>X | <r>X)"), session3());
  CHECK(r.level == HierarchyLevel::CoSafety);
  CHECK(r.oracle.disagreements.empty());

  r = classify(parse_formula(
                   "(max X.([f]ff & [s]X & [r]X)) & "
                   "(min Y.(<s>tt | <f>Y | <s>Y | <r>Y))"),
               session3());
  CHECK(r.level == HierarchyLevel::PersistentlyInformative);
  CHECK(r.pihml.cls == PihmlClass::SPIHML);
  REQUIRE(!r.witnesses.empty());
  for (const WitnessRecord& w : r.witnesses) CHECK(w.validated);
  CHECK(r.oracle.disagreements.empty());

  // A refutable safety conjunct with an always-eventually partner: the
  // witness f.s survives, but the prefix s defuses the safety part, so the
  // formula is informative without being persistently informative.
  r = classify(parse_formula("[f][s]ff & max Y0.(min Y1.(<s>tt | "
                             "(<f>Y1 | <s>Y1 | <r>Y1))) & "
                             "(<f>Y0 | <s>Y0 | <r>Y0)"),
               session3());
  CHECK(r.level == HierarchyLevel::Informative);
  CHECK(r.ihml.cls == IhmlClass::SIHML);

  // Always-eventually lies beyond every informative rung.
  r = classify(parse_formula(
                   "max Y0.(min Y1.(<s>tt | (<f>Y1 | <s>Y1 | <r>Y1))) & "
                   "(<f>Y0 | <s>Y0 | <r>Y0)"),
               session3());
  CHECK(r.level == HierarchyLevel::SoundOnly);
}

TEST_CASE("persistently informative implies informative on the corpus") {
  corpus::FormulaGen gen(909, sigma3());
  for (int i = 0; i < 120; ++i) {
    FormulaPtr f = gen.mixed(3);
    PihmlResult p = pihml_membership(f, sigma3());
    if (p.cls == PihmlClass::None) continue;
    IhmlResult r = ihml_membership(f, sigma3());
    CAPTURE(print_formula(f));
    CHECK(r.cls != IhmlClass::None);
  }
}

TEST_CASE("fragment formulas synthesize persistent monitors") {
  corpus::FormulaGen gen(111, sigma3());
  int checked = 0;
  for (int i = 0; i < 60 && checked < 20; ++i) {
    FormulaPtr f = i % 2 == 0 ? gen.shml(2) : gen.chml(2);
    MonitorPtr m = synthesize(f, sigma3()).monitor;
    MonitorClass k = classify_monitor(m, sigma3());
    INFO("formula := ", print_formula(f), " monitor := ", print_monitor(m));
    CHECK(k.persistent_any);
    ++checked;
  }
  CHECK(checked == 20);
}
