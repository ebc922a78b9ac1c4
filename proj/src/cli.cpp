#include "recmon/cli.hpp"

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "recmon/automaton.hpp"
#include "recmon/formula.hpp"
#include "recmon/fragments.hpp"
#include "recmon/ltl.hpp"
#include "recmon/monitor.hpp"
#include "recmon/pz.hpp"
#include "recmon/semantics.hpp"
#include "recmon/session.hpp"
#include "recmon/synthesis.hpp"
#include "recmon/trace.hpp"

namespace recmon {

namespace {

using ordered_json = nlohmann::ordered_json;

struct GlobalOpts {
  std::string alphabet_csv;
  size_t bound = 6;
  size_t depth = 3;
  bool json = false;
  size_t state_cap = 100000;
  bool strict_ihml = false;
};

Session make_session(const Alphabet& sigma, const GlobalOpts& g) {
  Session session(sigma);
  session.oracle_bound = g.bound;
  session.prefix_depth = g.depth;
  session.state_cap = g.state_cap;
  session.strict_implicit_conjunct = g.strict_ihml;
  return session;
}

void push_unique(std::vector<Action>& acts, const Action& a) {
  if (std::find(acts.begin(), acts.end(), a) == acts.end()) acts.push_back(a);
}

void collect_monitor_actions(const MonitorPtr& m, std::vector<Action>& acts) {
  switch (m->kind()) {
    case Monitor::Kind::Yes:
    case Monitor::Kind::No:
    case Monitor::Kind::End:
    case Monitor::Kind::Var:
      return;
    case Monitor::Kind::Act:
      push_unique(acts, m->action());
      collect_monitor_actions(m->child(), acts);
      return;
    case Monitor::Kind::Rec:
      collect_monitor_actions(m->child(), acts);
      return;
    case Monitor::Kind::Choice:
    case Monitor::Kind::ParAnd:
    case Monitor::Kind::ParOr:
      collect_monitor_actions(m->left(), acts);
      collect_monitor_actions(m->right(), acts);
      return;
  }
}

void collect_ltl_atoms(const LtlPtr& l, std::vector<Action>& acts) {
  switch (l->kind()) {
    case Ltl::Kind::Truth:
    case Ltl::Kind::Falsity:
      return;
    case Ltl::Kind::Atom:
    case Ltl::Kind::NegAtom:
      push_unique(acts, l->atom());
      return;
    case Ltl::Kind::Next:
    case Ltl::Kind::Finally:
    case Ltl::Kind::Globally:
      collect_ltl_atoms(l->child(), acts);
      return;
    case Ltl::Kind::Until:
    case Ltl::Kind::Release:
    case Ltl::Kind::And:
    case Ltl::Kind::Or:
      collect_ltl_atoms(l->left(), acts);
      collect_ltl_atoms(l->right(), acts);
      return;
  }
}

/* Explicit flag wins; otherwise whatever the input mentions; a trivial
   input that mentions nothing still needs one action to quantify over. */
Alphabet resolve_alphabet(const GlobalOpts& g, std::vector<Action> inferred) {
  if (!g.alphabet_csv.empty()) return Alphabet::parse(g.alphabet_csv);
  if (inferred.empty()) inferred.push_back("a");
  return Alphabet(std::move(inferred));
}

void require_trace_actions(const FiniteTrace& t, const Alphabet& sigma) {
  for (const Action& a : t) {
    if (!sigma.contains(a)) throw UnknownActionError(a);
  }
}

void require_trace_actions(const FinfiniteTrace& t, const Alphabet& sigma) {
  require_trace_actions(t.prefix(), sigma);
  require_trace_actions(t.loop(), sigma);
}

FormulaPtr parse_formula_arg(const std::string& text, const GlobalOpts& g,
                             Alphabet& sigma) {
  if (!g.alphabet_csv.empty()) {
    sigma = Alphabet::parse(g.alphabet_csv);
    return parse_formula(text, sigma);
  }
  FormulaPtr f = parse_formula(text);
  sigma = resolve_alphabet(g, infer_alphabet(f).actions());
  return f;
}

ordered_json alphabet_json(const Alphabet& sigma) {
  ordered_json arr = ordered_json::array();
  for (const Action& a : sigma.actions()) arr.push_back(a);
  return arr;
}

ordered_json ihml_json(const IhmlResult& r) {
  ordered_json j;
  j["class"] = ihml_class_name(r.cls);
  j["conjunct"] = r.conjunct;
  j["implicit_partner"] = r.implicit_partner;
  return j;
}

ordered_json pihml_json(const PihmlResult& r) {
  ordered_json j;
  j["class"] = pihml_class_name(r.cls);
  j["conjunct"] = r.conjunct;
  j["implicit_partner"] = r.implicit_partner;
  return j;
}

ordered_json report_json(const ClassificationReport& r) {
  ordered_json j;
  j["formula"] = r.formula;
  j["alphabet"] = alphabet_json(r.alphabet);
  j["level"] = hierarchy_level_name(r.level);
  j["basis"] = level_basis_name(r.basis);
  ordered_json frag;
  frag["shml"] = r.flags.shml;
  frag["chml"] = r.flags.chml;
  frag["ehml"] = r.flags.ehml;
  frag["ihml"] = ihml_json(r.ihml);
  frag["pihml"] = pihml_json(r.pihml);
  j["fragments"] = frag;
  ordered_json witnesses = ordered_json::array();
  for (const WitnessRecord& w : r.witnesses) {
    ordered_json wj;
    wj["kind"] = w.kind;
    wj["prefix"] = print_trace(w.prefix);
    wj["trace"] = print_trace(w.trace);
    wj["polarity"] = polarity_name(w.polarity);
    wj["validated"] = w.validated;
    witnesses.push_back(wj);
  }
  j["witnesses"] = witnesses;
  ordered_json oracle;
  oracle["bound"] =
      ordered_json{{"finite", r.oracle.finite_len}, {"lasso", r.oracle.lasso_size}};
  oracle["agreements"] = r.oracle.agreements;
  oracle["disagreements"] = r.oracle.disagreements;
  j["oracle"] = oracle;
  return j;
}

ordered_json pz_json(const PzResult& r) {
  ordered_json j;
  j["status"] = pz_status_name(r.status);
  j["quantifier"] = r.quantifier == PzQuantifier::Existential ? "existential"
                                                              : "universal";
  j["witness"] = r.witness ? ordered_json(print_trace(*r.witness))
                           : ordered_json(nullptr);
  j["polarity"] = polarity_name(r.witness_polarity);
  ordered_json pw = ordered_json::array();
  for (const auto& [s, t] : r.prefix_witnesses) {
    pw.push_back(ordered_json::array({print_trace(s), print_trace(t)}));
  }
  j["prefix_witnesses"] = pw;
  j["failing_prefix"] = r.failing_prefix
                            ? ordered_json(print_trace(*r.failing_prefix))
                            : ordered_json(nullptr);
  j["bound"] = r.bound;
  j["probed_prefixes"] = r.probed_prefixes;
  j["exact"] = r.exact;
  j["reason"] = r.reason;
  return j;
}

void print_report_human(const ClassificationReport& r, std::ostream& out) {
  out << "formula: " << r.formula << "\n";
  out << "alphabet: " << r.alphabet.to_string() << "\n";
  out << "level: " << hierarchy_level_name(r.level) << " ("
      << level_basis_name(r.basis) << ")\n";
  out << "fragments: shml=" << (r.flags.shml ? "yes" : "no")
      << " chml=" << (r.flags.chml ? "yes" : "no")
      << " ehml=" << (r.flags.ehml ? "yes" : "no") << "\n";
  auto operand = [](int conjunct, bool implicit) -> std::string {
    if (conjunct == 0) return " (left operand)";
    if (conjunct == 1) return " (right operand)";
    return implicit ? " (whole, implicit unit partner)" : "";
  };
  out << "ihml: " << ihml_class_name(r.ihml.cls);
  if (r.ihml.cls != IhmlClass::None)
    out << operand(r.ihml.conjunct, r.ihml.implicit_partner);
  out << "\n";
  out << "pihml: " << pihml_class_name(r.pihml.cls);
  if (r.pihml.cls != PihmlClass::None)
    out << operand(r.pihml.conjunct, r.pihml.implicit_partner);
  out << "\n";
  for (const WitnessRecord& w : r.witnesses) {
    out << "witness " << w.kind << ": prefix=" << print_trace(w.prefix)
        << " trace=" << print_trace(w.trace) << " ("
        << polarity_name(w.polarity) << ", "
        << (w.validated ? "validated" : "NOT validated") << ")\n";
  }
  out << "oracle: agreements=" << r.oracle.agreements
      << " disagreements=" << r.oracle.disagreements.size() << " (finite<="
      << r.oracle.finite_len << ", lasso<=" << r.oracle.lasso_size << ")\n";
  for (const std::string& d : r.oracle.disagreements) {
    out << "  disagreement: " << d << "\n";
  }
}

void print_pz_human(const PzResult& r, std::ostream& out) {
  out << "status: " << pz_status_name(r.status) << "\n";
  if (r.witness) {
    out << "witness: " << print_trace(*r.witness) << " ("
        << polarity_name(r.witness_polarity) << ")\n";
  }
  if (r.failing_prefix) {
    out << "failing prefix: " << print_trace(*r.failing_prefix) << "\n";
  }
  if (!r.prefix_witnesses.empty()) {
    out << "prefix witnesses:\n";
    for (const auto& [s, t] : r.prefix_witnesses) {
      out << "  " << print_trace(s) << " -> " << print_trace(t) << "\n";
    }
  }
  if (r.probed_prefixes > 0)
    out << "probed prefixes: " << r.probed_prefixes << "\n";
  out << "bound: " << r.bound << "\n";
  out << "exact: " << (r.exact ? "yes" : "no") << "\n";
  out << "reason: " << r.reason << "\n";
}

int stream_monitor(MonitorRuntime& rt, std::istream& in, std::ostream& out,
                   std::ostream& err, bool as_json) {
  MonitorRuntime::StateSet cur = rt.initial();
  size_t position = 0;
  auto emit = [&](const std::string& status,
                  std::optional<size_t> at, bool conflicting) {
    if (as_json) {
      ordered_json j;
      j["status"] = status;
      j["at"] = at ? ordered_json(*at) : ordered_json(nullptr);
      j["conflicting"] = conflicting;
      out << j.dump(2) << "\n";
    } else if (at) {
      out << status << " at " << *at << "\n";
    } else {
      out << status << "\n";
    }
    if (conflicting) err << "warning: conflicting verdicts\n";
  };
  auto verdict = [&]() -> bool {
    bool yes = rt.contains_yes(cur);
    bool no = rt.contains_no(cur);
    if (!yes && !no) return false;
    emit(no ? "REJECTED" : "ACCEPTED", position, yes && no);
    return true;
  };
  if (verdict()) return 0;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    size_t start = line.find_first_not_of(' ');
    if (start == std::string::npos) continue;
    Action a = line.substr(start);
    if (!rt.alphabet().contains(a)) throw UnknownActionError(a);
    cur = rt.step(cur, a);
    ++position;
    if (verdict()) return 0;
  }
  emit("NO-VERDICT", std::nullopt, false);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
  CLI::App app{"recHML monitorability analyzer"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--alphabet", g.alphabet_csv,
                 "Comma-separated action alphabet (default: inferred)");
  app.add_option("--bound", g.bound, "Oracle search bound")->capture_default_str();
  app.add_option("--depth", g.depth, "Prefix depth for universal checks")
      ->capture_default_str();
  app.add_flag("--json", g.json, "Emit JSON instead of text");
  app.add_option("--state-cap", g.state_cap, "Interned-state cap")
      ->capture_default_str();
  app.add_flag("--strict-ihml", g.strict_ihml,
               "Disable the implicit unit-partner reading of bare formulas");

  int rc = 0;

  std::string classify_text;
  CLI::App* classify_cmd =
      app.add_subcommand("classify", "Monitorability classification report");
  classify_cmd->fallthrough();
  classify_cmd->add_option("formula", classify_text, "recHML formula")
      ->required();
  classify_cmd->callback([&] {
    Alphabet sigma;
    FormulaPtr f = parse_formula_arg(classify_text, g, sigma);
    ClassificationReport report = classify(f, make_session(sigma, g));
    if (g.json) {
      out << report_json(report).dump(2) << "\n";
    } else {
      print_report_human(report, out);
    }
  });

  std::string synth_text;
  bool synth_bounded = false;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Synthesize a monitor from a formula");
  synth_cmd->fallthrough();
  synth_cmd->add_option("formula", synth_text, "recHML formula")->required();
  synth_cmd->add_flag("--bounded-maximal", synth_bounded,
                      "Bounded-maximal monitor from determining sets");
  synth_cmd->callback([&] {
    Alphabet sigma;
    FormulaPtr f = parse_formula_arg(synth_text, g, sigma);
    SynthesisOutput so = synth_bounded
                             ? bounded_maximal_monitor(f, g.bound,
                                                       make_session(sigma, g))
                             : synthesize(f, sigma);
    if (g.json) {
      ordered_json j;
      j["monitor"] = print_monitor(so.monitor);
      j["guarantee"] = guarantee_name(so.guarantee);
      j["bound"] = so.guarantee == Guarantee::BoundedMaximal
                       ? ordered_json(so.bound)
                       : ordered_json(nullptr);
      out << j.dump(2) << "\n";
    } else {
      out << print_monitor(so.monitor) << "\n";
      out << "guarantee: " << guarantee_name(so.guarantee);
      if (so.guarantee == Guarantee::BoundedMaximal)
        out << " (bound " << so.bound << ")";
      out << "\n";
    }
  });

  CLI::App* monitor_cmd = app.add_subcommand("monitor", "Monitor execution");
  monitor_cmd->fallthrough();
  monitor_cmd->require_subcommand(1);
  std::string run_text;
  std::string run_trace_text;
  bool run_stdin = false;
  CLI::App* run_cmd =
      monitor_cmd->add_subcommand("run", "Run a monitor over a trace");
  run_cmd->fallthrough();
  run_cmd->add_option("monitor", run_text, "Monitor expression")->required();
  CLI::Option* trace_opt =
      run_cmd->add_option("--trace", run_trace_text, "Finite or lasso trace");
  CLI::Option* stdin_opt = run_cmd->add_flag(
      "--stdin", run_stdin, "Read newline-delimited actions from stdin");
  trace_opt->excludes(stdin_opt);
  run_cmd->callback([&] {
    if (run_trace_text.empty() && !run_stdin)
      throw CLI::ValidationError("monitor run",
                                 "pass one of --trace or --stdin");
    MonitorPtr m = parse_monitor(run_text);
    std::vector<Action> acts;
    collect_monitor_actions(m, acts);
    std::optional<FinfiniteTrace> tr;
    if (!run_stdin) {
      tr = FinfiniteTrace::parse(run_trace_text);
      for (const Action& a : tr->prefix()) push_unique(acts, a);
      for (const Action& a : tr->loop()) push_unique(acts, a);
    }
    Alphabet sigma = resolve_alphabet(g, std::move(acts));
    MonitorRuntime rt(m, sigma, g.state_cap);
    if (run_stdin) {
      rc = stream_monitor(rt, in, out, err, g.json);
      return;
    }
    require_trace_actions(*tr, sigma);
    RunOutcome o = run_trace(rt, *tr);
    if (g.json) {
      ordered_json j;
      j["status"] = run_status_name(o.status);
      j["at"] = o.status == RunStatus::NoVerdict
                    ? ordered_json(nullptr)
                    : ordered_json(o.prefix_length);
      j["conflicting"] = o.conflicting;
      out << j.dump(2) << "\n";
    } else if (o.status == RunStatus::Accepted) {
      out << "ACCEPTED at " << o.prefix_length << "\n";
    } else if (o.status == RunStatus::Rejected) {
      out << "REJECTED at " << o.prefix_length << "\n";
    } else {
      out << "NO-VERDICT\n";
    }
    if (o.conflicting) err << "warning: conflicting verdicts\n";
  });

  std::string det_text;
  bool det_dot = false;
  CLI::App* det_cmd = app.add_subcommand(
      "det", "Determinize a monitor into a regular monitor");
  det_cmd->fallthrough();
  det_cmd->add_option("monitor", det_text, "Monitor expression")->required();
  det_cmd->add_flag("--dot", det_dot, "Emit the automaton in DOT format");
  det_cmd->callback([&] {
    MonitorPtr m = parse_monitor(det_text);
    std::vector<Action> acts;
    collect_monitor_actions(m, acts);
    Alphabet sigma = resolve_alphabet(g, std::move(acts));
    VerdictAutomaton dfa = determinize(to_automaton(m, sigma, g.state_cap));
    if (det_dot) {
      out << to_dot(dfa);
      return;
    }
    MonitorPtr reg = to_regular_monitor(dfa);
    if (g.json) {
      ordered_json j;
      j["monitor"] = print_monitor(reg);
      j["states"] = dfa.state_count();
      j["deterministic"] = dfa.deterministic;
      out << j.dump(2) << "\n";
    } else {
      out << print_monitor(reg) << "\n";
      out << "states: " << dfa.state_count() << "\n";
    }
  });

  std::string eval_formula_text;
  std::string eval_trace_text;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Evaluate a formula on a trace");
  eval_cmd->fallthrough();
  eval_cmd->add_option("formula", eval_formula_text, "recHML formula")
      ->required();
  eval_cmd->add_option("trace", eval_trace_text, "Finite or lasso trace")
      ->required();
  eval_cmd->callback([&] {
    FinfiniteTrace tr = FinfiniteTrace::parse(eval_trace_text);
    Alphabet sigma;
    FormulaPtr f;
    if (!g.alphabet_csv.empty()) {
      sigma = Alphabet::parse(g.alphabet_csv);
      f = parse_formula(eval_formula_text, sigma);
    } else {
      f = parse_formula(eval_formula_text);
      std::vector<Action> acts = infer_alphabet(f).actions();
      for (const Action& a : tr.prefix()) push_unique(acts, a);
      for (const Action& a : tr.loop()) push_unique(acts, a);
      sigma = resolve_alphabet(g, std::move(acts));
    }
    require_trace_actions(tr, sigma);
    bool v = eval(f, tr);
    if (g.json) {
      ordered_json j;
      j["value"] = v;
      out << j.dump(2) << "\n";
    } else {
      out << (v ? "true" : "false") << "\n";
    }
  });

  std::string ltl_text;
  CLI::App* ltl_cmd =
      app.add_subcommand("ltl", "Encode an LTL formula into recHML");
  ltl_cmd->fallthrough();
  ltl_cmd->add_option("formula", ltl_text, "LTL formula")->required();
  ltl_cmd->callback([&] {
    LtlPtr l = parse_ltl(ltl_text);
    std::vector<Action> acts;
    collect_ltl_atoms(l, acts);
    Alphabet sigma = resolve_alphabet(g, std::move(acts));
    FormulaPtr f = encode_ltl(l, sigma);
    if (g.json) {
      ordered_json j;
      j["formula"] = print_formula(f);
      j["alphabet"] = alphabet_json(sigma);
      out << j.dump(2) << "\n";
    } else {
      out << print_formula(f) << "\n";
    }
  });

  std::string pz_text;
  bool pz_epz = false;
  bool pz_upz = false;
  std::string pz_s_text;
  CLI::App* pz_cmd = app.add_subcommand(
      "pz", "Potential monitorability probes (existential and universal)");
  pz_cmd->fallthrough();
  pz_cmd->add_option("formula", pz_text, "recHML formula")->required();
  CLI::Option* epz_opt =
      pz_cmd->add_flag("--epz", pz_epz, "Existential probe at eps (default)");
  CLI::Option* upz_opt =
      pz_cmd->add_flag("--upz", pz_upz, "Universal probe over all prefixes");
  CLI::Option* s_opt =
      pz_cmd->add_option("--s", pz_s_text, "Existential probe at this trace");
  epz_opt->excludes(upz_opt)->excludes(s_opt);
  upz_opt->excludes(s_opt);
  pz_cmd->callback([&] {
    Alphabet sigma;
    FormulaPtr f = parse_formula_arg(pz_text, g, sigma);
    Session session = make_session(sigma, g);
    std::optional<FiniteTrace> probe_at;
    if (s_opt->count() > 0) {
      probe_at = parse_finite_trace(pz_s_text);
      require_trace_actions(*probe_at, sigma);
    }
    if (g.json) {
      ClassificationReport report = classify(f, session);
      ordered_json j = report_json(report);
      ordered_json pz;
      pz["epz"] = pz_json(epz_monitorable(f, g.bound, session));
      pz["upz"] = pz_json(upz_monitorable(f, g.depth, g.bound, session));
      ordered_json ffm;
      for (TruthDomain d : {TruthDomain::FfUnknown, TruthDomain::TtUnknown,
                            TruthDomain::TtFfUnknown}) {
        ffm[truth_domain_name(d)] = ffm_monitorable(f, d, session).monitorable;
      }
      pz["ffm"] = ffm;
      if (probe_at) {
        pz["s"] = pz_json(s_monitorable(f, *probe_at, g.bound, session));
      }
      j["pz"] = pz;
      out << j.dump(2) << "\n";
      return;
    }
    PzResult r;
    if (pz_upz) {
      r = upz_monitorable(f, g.depth, g.bound, session);
    } else if (probe_at) {
      r = s_monitorable(f, *probe_at, g.bound, session);
    } else {
      r = epz_monitorable(f, g.bound, session);
    }
    print_pz_human(r, out);
  });

  std::string ffm_text;
  std::string ffm_domain;
  CLI::App* ffm_cmd = app.add_subcommand(
      "ffm", "Truth-domain monitorability check over bounded prefixes");
  ffm_cmd->fallthrough();
  ffm_cmd->add_option("formula", ffm_text, "recHML formula")->required();
  ffm_cmd->add_option("--domain", ffm_domain, "Truth domain: ff?, tt? or ttff?")
      ->required();
  ffm_cmd->callback([&] {
    TruthDomain domain;
    if (ffm_domain == "ff?") {
      domain = TruthDomain::FfUnknown;
    } else if (ffm_domain == "tt?") {
      domain = TruthDomain::TtUnknown;
    } else if (ffm_domain == "ttff?") {
      domain = TruthDomain::TtFfUnknown;
    } else {
      throw CLI::ValidationError("--domain",
                                 "expected one of ff?, tt?, ttff?");
    }
    Alphabet sigma;
    FormulaPtr f = parse_formula_arg(ffm_text, g, sigma);
    FfmMonitorability r = ffm_monitorable(f, domain, make_session(sigma, g));
    if (g.json) {
      ordered_json j;
      j["domain"] = truth_domain_name(domain);
      j["monitorable"] = r.monitorable;
      j["witness_pair"] =
          r.witness_pair
              ? ordered_json::array({print_trace(r.witness_pair->first),
                                     print_trace(r.witness_pair->second)})
              : ordered_json(nullptr);
      j["prefix_depth"] = r.prefix_depth;
      j["bound"] = r.bound;
      out << j.dump(2) << "\n";
    } else if (r.monitorable) {
      out << "monitorable (depth " << r.prefix_depth << ", bound " << r.bound
          << ")\n";
    } else {
      out << "not monitorable: " << print_trace(r.witness_pair->first)
          << " (in P) and " << print_trace(r.witness_pair->second)
          << " (not in P) evaluate equally\n";
    }
  });

  std::string oracle_text;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "Minimal determining trace sets up to the bound");
  oracle_cmd->fallthrough();
  oracle_cmd->add_option("formula", oracle_text, "recHML formula")->required();
  oracle_cmd->callback([&] {
    Alphabet sigma;
    FormulaPtr f = parse_formula_arg(oracle_text, g, sigma);
    DeterminingSets ds = d_sets_upto(f, g.bound, make_session(sigma, g));
    auto traces_json = [](const std::vector<FiniteTrace>& ts) {
      ordered_json arr = ordered_json::array();
      for (const FiniteTrace& t : ts) arr.push_back(print_trace(t));
      return arr;
    };
    if (g.json) {
      ordered_json j;
      j["positive"] = traces_json(ds.minimal_positive);
      j["negative"] = traces_json(ds.minimal_negative);
      j["bound"] = ds.probe_bound;
      out << j.dump(2) << "\n";
    } else {
      auto line = [&](const char* name, const std::vector<FiniteTrace>& ts) {
        out << name << " (" << ts.size() << "):";
        for (const FiniteTrace& t : ts) out << " " << print_trace(t);
        out << "\n";
      };
      line("positive", ds.minimal_positive);
      line("negative", ds.minimal_negative);
      out << "bound: " << ds.probe_bound << "\n";
    }
  });

  std::string m2f_text;
  CLI::App* m2f_cmd = app.add_subcommand(
      "m2f", "Characteristic formula of a regular monitor");
  m2f_cmd->fallthrough();
  m2f_cmd->add_option("monitor", m2f_text, "Monitor expression")->required();
  m2f_cmd->callback([&] {
    MonitorPtr m = parse_monitor(m2f_text);
    std::vector<Action> acts;
    collect_monitor_actions(m, acts);
    Alphabet sigma = resolve_alphabet(g, std::move(acts));
    FormulaPtr f = monitor_to_formula(m, sigma);
    if (g.json) {
      ordered_json j;
      j["formula"] = print_formula(f);
      out << j.dump(2) << "\n";
    } else {
      out << print_formula(f) << "\n";
    }
  });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("recmon");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  } catch (const StateExplosionError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const UnknownActionError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}

}  // namespace recmon
