#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "recmon/cli.hpp"

using recmon::run_cli;

namespace {

struct CliRun {
  int exit_code = 0;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.exit_code = run_cli(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("synth prints the monitor and its guarantee") {
  CliRun r = cli({"synth", "[f]ff", "--alphabet", "f,s,r"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "f.no + s.yes + r.yes\nguarantee: sound-violation-complete\n");
}

TEST_CASE("monitor run reports a verdict with its position") {
  CliRun r = cli({"monitor", "run", "f.no + s.yes + r.yes", "--trace", "f.r"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "REJECTED at 1\n");

  r = cli({"monitor", "run", "f.no + s.yes + r.yes", "--trace", "s"});
  CHECK(r.out == "ACCEPTED at 1\n");

  r = cli({"monitor", "run", "f.f.no", "--trace", "f", "--alphabet", "f,s,r"});
  CHECK(r.out == "NO-VERDICT\n");
}

TEST_CASE("monitor run consumes stdin events one per line") {
  CliRun r = cli({"monitor", "run", "f.no + s.yes + r.yes", "--stdin"},
                 "f\nr\n");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "REJECTED at 1\n");

  // Blank lines are skipped; the verdict ends consumption.
  r = cli({"monitor", "run", "f.no + s.yes + r.yes", "--stdin"},
          "\n  s  \nf\n");
  CHECK(r.out == "ACCEPTED at 1\n");

  r = cli({"monitor", "run", "yes", "--stdin", "--alphabet", "f"}, "");
  CHECK(r.out == "ACCEPTED at 0\n");

  r = cli({"monitor", "run", "f.no", "--stdin"}, "q\n");
  CHECK(r.exit_code == 1);
}

TEST_CASE("classify falls back to a singleton alphabet when none is implied") {
  CliRun r = cli({"classify", "tt"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("level: complete (syntactic)") != std::string::npos);
  CHECK(r.out.find("alphabet: a") != std::string::npos);
}

TEST_CASE("classify reports the ladder rung with fragment evidence") {
  CliRun r = cli({"classify", "max X.([f]ff & [s]X & [r]X)",
                  "--alphabet", "f,s,r"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("level: safety (syntactic)") != std::string::npos);
  CHECK(r.out.find("shml=yes") != std::string::npos);
}

TEST_CASE("ltl encodes into the fixpoint calculus") {
  CliRun r = cli({"ltl", "G !f", "--alphabet", "f,s,r"});
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "max Y0.[f]ff & ff | [f]ff & (<f>Y0 | <s>Y0 | <r>Y0)\n");
}

TEST_CASE("eval decides a lasso") {
  CliRun r = cli({"eval", "max X.([f]ff & [s]X & [r]X)", "s.r(s)^w",
                  "--alphabet", "f,s,r"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "true\n");
  r = cli({"eval", "max X.([f]ff & [s]X & [r]X)", "s.f",
           "--alphabet", "f,s,r"});
  CHECK(r.out == "false\n");
}

TEST_CASE("oracle lists minimal determining traces") {
  CliRun r = cli({"oracle", "max X.([f]ff & [s]X & [r]X)", "--bound", "2",
                  "--alphabet", "f,s,r"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("positive (0):") != std::string::npos);
  CHECK(r.out.find("negative (3): f s.f r.f") != std::string::npos);
}

TEST_CASE("classify --json emits the stable report shape") {
  CliRun r = cli({"classify", "(max X.([f]ff & [s]X & [r]X)) & "
                  "(min Y.(<s>tt | <f>Y | <s>Y | <r>Y))",
                  "--alphabet", "f,s,r", "--json"});
  CHECK(r.exit_code == 0);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["level"] == "persistently-informative");
  CHECK(j["basis"] == "syntactic");
  CHECK(j["alphabet"] == nlohmann::ordered_json::array({"f", "s", "r"}));
  CHECK(j["fragments"]["shml"] == false);
  CHECK(j["fragments"]["ihml"]["class"] == "sihml");
  CHECK(j["fragments"]["ihml"]["conjunct"] == 0);
  CHECK(j["fragments"]["pihml"]["class"] == "spihml");
  REQUIRE(j["witnesses"].is_array());
  REQUIRE(j["witnesses"].size() == 4);
  CHECK(j["witnesses"][0]["kind"] == "informative");
  CHECK(j["witnesses"][0]["trace"] == "f");
  CHECK(j["witnesses"][2]["kind"] == "extension");
  CHECK(j["witnesses"][2]["prefix"] == "s");
  CHECK(j["witnesses"][2]["trace"] == "s.f");
  for (const auto& w : j["witnesses"]) {
    CHECK(w["validated"] == true);
  }
  CHECK(j["oracle"]["agreements"] == 4);
  CHECK(j["oracle"]["disagreements"] == nlohmann::ordered_json::array());
  // Key order is part of the byte-stable contract.
  CHECK(j.begin().key() == "formula");
}

TEST_CASE("pz subcommand probes the three analyses") {
  // Encode an LTL property first, then probe the encoding.
  CliRun enc = cli({"ltl", "(!f U s) | G F r", "--alphabet", "f,s,r"});
  REQUIRE(enc.exit_code == 0);
  std::string formula = enc.out.substr(0, enc.out.find('\n'));
  CliRun r = cli({"pz", formula, "--alphabet", "f,s,r"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("status: monitorable") != std::string::npos);
  CHECK(r.out.find("witness: s (positive)") != std::string::npos);

  r = cli({"pz", "max X.<a>X", "--upz", "--alphabet", "a,b", "--depth", "2"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("monitorable") != std::string::npos);

  r = cli({"pz", "max X.<a>X", "--upz", "--alphabet", "a"});
  CHECK(r.out.find("not-monitorable-up-to-bound") != std::string::npos);
  CHECK(r.out.find("eps") != std::string::npos);
}

TEST_CASE("ffm reports per-domain monitorability") {
  CliRun r = cli({"ffm", "min X.(<s>tt | <f>X | <s>X | <r>X)", "--domain",
                  "tt?", "--alphabet", "f,s,r"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("monitorable") != std::string::npos);

  r = cli({"ffm", "min X.(<s>tt | <f>X | <s>X | <r>X)", "--domain", "ff?",
           "--alphabet", "f,s,r"});
  CHECK(r.out.find("not monitorable") != std::string::npos);
}

TEST_CASE("det prints a deterministic table or dot") {
  CliRun r = cli({"det", "f.no + s.yes + r.yes", "--dot"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("digraph") != std::string::npos);
}

TEST_CASE("m2f converts regular monitors back to formulas") {
  CliRun r = cli({"m2f", "rec X.(f.X + s.no)"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "max X.[f]X & [s]ff\n");
}

TEST_CASE("exit codes distinguish usage, syntax, analysis and cap errors") {
  CHECK(cli({"nosuchcommand"}).exit_code == 1);
  CHECK(cli({}).exit_code == 1);
  CHECK(cli({"classify", "max X.(["}).exit_code == 1);      // syntax
  CHECK(cli({"eval", "[f]X", "f"}).exit_code == 2);         // open formula
  CHECK(cli({"synth", "<f>tt | [s]ff", "--alphabet", "f,s"}).exit_code == 2);
  CliRun capped = cli({"det", "rec X.f.(X & rec Y.(f.Y + s.Y + r.Y))",
                       "--alphabet", "f,s,r", "--state-cap", "16"});
  CHECK(capped.exit_code == 3);
  CHECK(cli({"--help"}).exit_code == 0);
  CHECK(cli({"classify", "--help"}).exit_code == 0);
}

TEST_CASE("unknown trace actions are usage errors") {
  CliRun r = cli({"eval", "[f]ff", "q.f", "--alphabet", "f,s,r"});
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("unknown action") != std::string::npos);
}
