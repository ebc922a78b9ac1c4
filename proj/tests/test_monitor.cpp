#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corpus.hpp"
#include "recmon/errors.hpp"
#include "recmon/monitor.hpp"
#include "recmon/trace.hpp"

using namespace recmon;

namespace {

MonitorRuntime runtime(const std::string& text) {
  return MonitorRuntime(parse_monitor(text), corpus::sigma3());
}

RunOutcome run(const std::string& monitor, const std::string& trace) {
  MonitorRuntime rt = runtime(monitor);
  return run_finite(rt, parse_finite_trace(trace));
}

RunOutcome lasso(const std::string& monitor, const std::string& trace) {
  MonitorRuntime rt = runtime(monitor);
  return decide_lasso(rt, FinfiniteTrace::parse(trace));
}

}  // namespace

TEST_CASE("monitor text round-trips with minimal parentheses") {
  for (const char* text : {"yes", "no", "end", "f.no + s.yes + r.yes",
                           "f.no & s.yes", "f.no | s.yes",
                           "rec X.f.X", "rec X.f.X + s.yes",
                           "(rec X.f.X) + s.yes", "f.(no + yes)",
                           "f.no + s.yes & r.end | end"}) {
    CHECK(print_monitor(parse_monitor(text)) == text);
  }
}

TEST_CASE("monitor operator precedence: prefix, choice, and, or") {
  MonitorPtr m = parse_monitor("f.no + s.yes & r.end | end");
  REQUIRE(m->kind() == Monitor::Kind::ParOr);
  CHECK(m->right()->kind() == Monitor::Kind::End);
  CHECK(m->left()->kind() == Monitor::Kind::ParAnd);
  CHECK(m->left()->left()->kind() == Monitor::Kind::Choice);
}

TEST_CASE("rec scope extends maximally to the right") {
  MonitorPtr m = parse_monitor("rec X.f.X + s.yes");
  REQUIRE(m->kind() == Monitor::Kind::Rec);
  CHECK(m->child()->kind() == Monitor::Kind::Choice);
  CHECK(equal(m, parse_monitor("rec X.(f.X + s.yes)")));
}

TEST_CASE("monitor parse errors") {
  CHECK_THROWS_AS(parse_monitor(""), SyntaxError);
  CHECK_THROWS_AS(parse_monitor("yes +"), SyntaxError);
  CHECK_THROWS_AS(parse_monitor("rec x.yes"), SyntaxError);  // vars uppercase
  CHECK_THROWS_AS(parse_monitor("(yes"), SyntaxError);
  CHECK_THROWS_AS(parse_monitor("f."), SyntaxError);
}

TEST_CASE("monitor print/parse round-trip on random terms") {
  corpus::MonitorGen gen(20260817, corpus::sigma3());
  for (int i = 0; i < 300; ++i) {
    MonitorPtr m = gen.general(4);
    std::string text = print_monitor(m);
    CAPTURE(text);
    CHECK(equal(parse_monitor(text), m));
  }
}

TEST_CASE("a reachable verdict absorbs its choice context") {
  // Stepping yes + f.end on any action leaves only the yes verdict: the
  // verdict summand is preserved by every step while end cannot move.
  MonitorRuntime rt = runtime("yes + f.end");
  MonitorRuntime::StateSet after = rt.step(rt.initial(), Action("s"));
  REQUIRE(after.size() == 1);
  CHECK(print_monitor(rt.term(after.front())) == "yes");
  CHECK(rt.contains_yes(after));
}

TEST_CASE("a parallel product only moves when every factor moves") {
  // s.yes has no f-derivative, so the conjunction is stuck on f.
  MonitorRuntime rt = runtime("f.no & s.yes");
  CHECK(rt.step(rt.initial(), Action("f")).empty());
}

TEST_CASE("parallel conjunction collapses on no, erases yes") {
  MonitorRuntime rt =
      runtime("(f.no + s.end + r.end) & (f.end + s.yes + r.end)");
  MonitorRuntime::StateSet s0 = rt.initial();
  MonitorRuntime::StateSet after_f = rt.step(s0, Action("f"));
  REQUIRE(after_f.size() == 1);
  CHECK(print_monitor(rt.term(after_f.front())) == "no");
  // After s the yes side is the unit of & and drops out.
  MonitorRuntime::StateSet after_s = rt.step(s0, Action("s"));
  REQUIRE(after_s.size() == 1);
  CHECK(print_monitor(rt.term(after_s.front())) == "end");
}

TEST_CASE("run_finite reports the position of the first verdict") {
  RunOutcome out = run("f.no + s.yes + r.yes", "f.r");
  CHECK(out.status == RunStatus::Rejected);
  CHECK(out.prefix_length == 1);
  CHECK_FALSE(out.conflicting);

  out = run("f.no + s.yes + r.yes", "s");
  CHECK(out.status == RunStatus::Accepted);
  CHECK(out.prefix_length == 1);

  out = run("f.f.no", "f");
  CHECK(out.status == RunStatus::NoVerdict);

  out = run("yes", "eps");
  CHECK(out.status == RunStatus::Accepted);
  CHECK(out.prefix_length == 0);
}

TEST_CASE("verdicts inside one product combine at intern time") {
  // f.yes & f.no steps to the conjunction of both verdicts, which is
  // normalized to no before it ever becomes a state: no tie is visible.
  RunOutcome out = run("f.yes & f.no", "f.s");
  CHECK(out.status == RunStatus::Rejected);
  CHECK(out.prefix_length == 1);
  CHECK_FALSE(out.conflicting);
}

TEST_CASE("simultaneous verdicts from choice reject and flag the conflict") {
  RunOutcome out = run("f.yes + f.no", "f.s");
  CHECK(out.status == RunStatus::Rejected);
  CHECK(out.prefix_length == 1);
  CHECK(out.conflicting);
}

TEST_CASE("verdicts are irrevocable along every continuation") {
  corpus::MonitorGen gen(404, corpus::sigma3());
  std::mt19937 rng(404);
  for (int i = 0; i < 200; ++i) {
    MonitorPtr m = gen.general(3);
    FiniteTrace s = corpus::random_trace(rng, corpus::sigma3(), 4);
    MonitorRuntime rt(m, corpus::sigma3());
    RunOutcome first = run_finite(rt, s);
    if (first.status == RunStatus::NoVerdict) continue;
    FiniteTrace longer = s;
    longer.push_back(corpus::sigma3().at(i % 3));
    MonitorRuntime rt2(m, corpus::sigma3());
    RunOutcome second = run_finite(rt2, longer);
    INFO("monitor := ", print_monitor(m), " trace := ", print_trace(s));
    CHECK(second.status == first.status);
    CHECK(second.prefix_length == first.prefix_length);
  }
}

TEST_CASE("decide_lasso settles recurring behaviour") {
  // rec X.(f.X + s.no) rejects once s occurs, keeps silent on pure f.
  CHECK(lasso("rec X.(f.X + s.no)", "f.f(s.f)^w").status ==
        RunStatus::Rejected);
  CHECK(lasso("rec X.(f.X + s.no)", "(f)^w").status == RunStatus::NoVerdict);
  CHECK(lasso("f.yes", "(f)^w").status == RunStatus::Accepted);
  // A run that parks on end never reaches a verdict.
  CHECK(lasso("f.end", "(f)^w").status == RunStatus::NoVerdict);
}

TEST_CASE("decide_lasso agrees with run_finite on finite traces") {
  corpus::MonitorGen gen(77, corpus::sigma3());
  std::mt19937 rng(77);
  for (int i = 0; i < 100; ++i) {
    MonitorPtr m = gen.general(3);
    FiniteTrace s = corpus::random_trace(rng, corpus::sigma3(), 4);
    MonitorRuntime rt(m, corpus::sigma3());
    MonitorRuntime rt2(m, corpus::sigma3());
    RunOutcome a = run_finite(rt, s);
    RunOutcome b = decide_lasso(rt2, FinfiniteTrace::finite(s));
    INFO("monitor := ", print_monitor(m), " trace := ", print_trace(s));
    CHECK(a.status == b.status);
  }
}

TEST_CASE("runtime respects the state cap") {
  // Each f step nests the product one level deeper, so the interned node
  // count grows without bound.
  MonitorPtr m = parse_monitor("rec X.f.(X & rec Y.(f.Y + s.Y + r.Y))");
  MonitorRuntime rt(m, corpus::sigma3(), 16);
  CHECK_THROWS_AS(
      [&] {
        MonitorRuntime::StateSet states = rt.initial();
        for (int i = 0; i < 64; ++i) states = rt.step(states, Action("f"));
      }(),
      StateExplosionError);
}
