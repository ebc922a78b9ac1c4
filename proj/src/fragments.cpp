#include "recmon/fragments.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "recmon/synthesis.hpp"

namespace recmon {

std::string path_to_string(const Path& p) {
  if (p.empty()) return "/";
  std::string out;
  for (uint8_t i : p) {
    out += '/';
    out += std::to_string(static_cast<int>(i));
  }
  return out;
}

bool in_shml(const FormulaPtr& f) {
  switch (f->kind()) {
    case Formula::Kind::Truth:
    case Formula::Kind::Falsity:
    case Formula::Kind::Var:
      return true;
    case Formula::Kind::Box:
      return in_shml(f->child());
    case Formula::Kind::And:
      return in_shml(f->left()) && in_shml(f->right());
    case Formula::Kind::GreatestFix:
      return in_shml(f->child());
    case Formula::Kind::Diamond:
    case Formula::Kind::Or:
    case Formula::Kind::LeastFix:
      return false;
  }
  return false;
}

bool in_chml(const FormulaPtr& f) {
  switch (f->kind()) {
    case Formula::Kind::Truth:
    case Formula::Kind::Falsity:
    case Formula::Kind::Var:
      return true;
    case Formula::Kind::Diamond:
      return in_chml(f->child());
    case Formula::Kind::Or:
      return in_chml(f->left()) && in_chml(f->right());
    case Formula::Kind::LeastFix:
      return in_chml(f->child());
    case Formula::Kind::Box:
    case Formula::Kind::And:
    case Formula::Kind::GreatestFix:
      return false;
  }
  return false;
}

namespace {

void flatten_junction(const FormulaPtr& f, Formula::Kind junction,
                      std::vector<FormulaPtr>& out) {
  if (f->kind() == junction) {
    flatten_junction(f->left(), junction, out);
    flatten_junction(f->right(), junction, out);
  } else {
    out.push_back(f);
  }
}

bool full_action_set(const std::set<Action>& acts, const Alphabet& sigma) {
  if (acts.size() != sigma.size()) return false;
  for (const Action& a : sigma.actions()) {
    if (!acts.count(a)) return false;
  }
  return true;
}

bool contains_kind(const FormulaPtr& f, Formula::Kind k) {
  if (f->kind() == k) return true;
  switch (f->kind()) {
    case Formula::Kind::Truth:
    case Formula::Kind::Falsity:
    case Formula::Kind::Var:
      return false;
    case Formula::Kind::Diamond:
    case Formula::Kind::Box:
    case Formula::Kind::LeastFix:
    case Formula::Kind::GreatestFix:
      return contains_kind(f->child(), k);
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return contains_kind(f->left(), k) || contains_kind(f->right(), k);
  }
  return false;
}

}  // namespace

bool in_ehml(const FormulaPtr& f, const Alphabet& sigma) {
  switch (f->kind()) {
    case Formula::Kind::Truth:
    case Formula::Kind::Falsity:
    case Formula::Kind::Var:
      return true;
    case Formula::Kind::LeastFix:
    case Formula::Kind::GreatestFix:
      return in_ehml(f->child(), sigma);
    case Formula::Kind::Box:
    case Formula::Kind::Diamond:
      // A bare modality is a block of one: it must already cover the
      // whole alphabet.
      return sigma.size() == 1 && sigma.contains(f->action()) &&
             in_ehml(f->child(), sigma);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      bool conjunctive = f->kind() == Formula::Kind::And;
      std::vector<FormulaPtr> parts;
      flatten_junction(f, f->kind(), parts);
      std::set<Action> modal_actions;
      for (const FormulaPtr& p : parts) {
        if (p->kind() ==
            (conjunctive ? Formula::Kind::Diamond : Formula::Kind::Box))
          return false;  // wrong-polarity modality inside the block
        if (p->is_modal()) {
          modal_actions.insert(p->action());
          if (!in_ehml(p->child(), sigma)) return false;
        } else if (!in_ehml(p, sigma)) {
          return false;
        }
      }
      return modal_actions.empty() || full_action_set(modal_actions, sigma);
    }
  }
  return false;
}

FragmentFlags fragment_membership(const FormulaPtr& f, const Alphabet& sigma) {
  ValidationReport rep = validate(f);
  if (!rep.closed) throw OpenFormulaError(rep.free_vars.front());
  FragmentFlags flags;
  flags.shml = in_shml(f);
  flags.chml = in_chml(f);
  flags.ehml = in_ehml(f, sigma);
  return flags;
}

/* Refutability levels by relaxation: level 0 where the constant occurs,
   level k+1 where a free variable's binder body has level k; repeated
   until no level shrinks. */
RefutabilityMap annotate_refutability(const FormulaPtr& f) {
  if (!in_shml(f) && !in_chml(f))
    throw NotInFragmentError(
        "refutability analysis needs the safety or co-safety grammar, got: " +
        print_formula(f));
  ValidationReport rep = validate(f);
  if (!rep.closed) throw OpenFormulaError(rep.free_vars.front());

  struct Position {
    Path path;
    FormulaPtr node;
    std::map<std::string, size_t> binder_body;  // var -> position index
  };
  std::vector<Position> all;
  std::function<void(const FormulaPtr&, Path, std::map<std::string, size_t>)>
      walk = [&](const FormulaPtr& g, Path path,
                 std::map<std::string, size_t> scope) {
        size_t self = all.size();
        all.push_back({path, g, scope});
        Path down = path;
        down.push_back(0);
        switch (g->kind()) {
          case Formula::Kind::Truth:
          case Formula::Kind::Falsity:
          case Formula::Kind::Var:
            return;
          case Formula::Kind::Box:
          case Formula::Kind::Diamond:
            walk(g->child(), down, scope);
            return;
          case Formula::Kind::LeastFix:
          case Formula::Kind::GreatestFix:
            // The binder body is the next position to be pushed.
            scope[g->variable()] = self + 1;
            walk(g->child(), down, scope);
            return;
          case Formula::Kind::And:
          case Formula::Kind::Or: {
            walk(g->left(), down, scope);
            down.back() = 1;
            walk(g->right(), down, scope);
            return;
          }
        }
      };
  walk(f, {}, {});

  auto relax = [&](Formula::Kind target) {
    constexpr size_t kNone = std::numeric_limits<size_t>::max();
    std::vector<size_t> level(all.size(), kNone);
    for (size_t i = 0; i < all.size(); ++i) {
      if (contains_kind(all[i].node, target)) level[i] = 0;
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < all.size(); ++i) {
        size_t best = level[i];
        for (const std::string& v : free_variables(all[i].node)) {
          auto it = all[i].binder_body.find(v);
          if (it == all[i].binder_body.end()) continue;
          size_t via = level[it->second];
          if (via != kNone && via + 1 < best) best = via + 1;
        }
        if (best < level[i]) {
          level[i] = best;
          changed = true;
        }
      }
    }
    return level;
  };

  std::vector<size_t> refute = relax(Formula::Kind::Falsity);
  std::vector<size_t> verify = relax(Formula::Kind::Truth);

  RefutabilityMap out;
  constexpr size_t kNone = std::numeric_limits<size_t>::max();
  for (size_t i = 0; i < all.size(); ++i) {
    PositionLabel label;
    if (refute[i] != kNone) label.refute_level = refute[i];
    if (verify[i] != kNone) label.verify_level = verify[i];
    out[all[i].path] = label;
  }
  return out;
}

namespace {

bool all_positions(const RefutabilityMap& m, bool refute) {
  for (const auto& [path, label] : m) {
    if (refute ? !label.refute_level : !label.verify_level) return false;
  }
  return !m.empty();
}

}  // namespace

IhmlResult ihml_membership(const FormulaPtr& f, const Alphabet& sigma,
                           bool strict) {
  (void)sigma;
  ValidationReport rep = validate(f);
  if (!rep.closed) throw OpenFormulaError(rep.free_vars.front());

  IhmlResult out;
  auto try_side = [&](const FormulaPtr& part, int which, bool safety) {
    if (out.cls != IhmlClass::None) return;
    if (safety ? (in_shml(part) && contains_kind(part, Formula::Kind::Falsity))
               : (in_chml(part) && contains_kind(part, Formula::Kind::Truth))) {
      out.cls = safety ? IhmlClass::SIHML : IhmlClass::CIHML;
      out.conjunct = which;
      out.implicit_partner = which == -1;
      out.witness_part = part;
    }
  };

  if (f->kind() == Formula::Kind::And) {
    try_side(f->left(), 0, true);
    try_side(f->right(), 1, true);
  }
  if (out.cls == IhmlClass::None && !strict) try_side(f, -1, true);
  if (out.cls == IhmlClass::None && f->kind() == Formula::Kind::Or) {
    try_side(f->left(), 0, false);
    try_side(f->right(), 1, false);
  }
  if (out.cls == IhmlClass::None && !strict) try_side(f, -1, false);
  return out;
}

PihmlResult pihml_membership(const FormulaPtr& f, const Alphabet& sigma,
                             bool strict) {
  ValidationReport rep = validate(f);
  if (!rep.closed) throw OpenFormulaError(rep.free_vars.front());

  PihmlResult out;
  auto try_side = [&](const FormulaPtr& part, int which, bool safety) {
    if (out.cls != PihmlClass::None) return;
    if (safety ? !in_shml(part) : !in_chml(part)) return;
    if (!in_ehml(part, sigma)) return;
    if (!all_positions(annotate_refutability(part), safety)) return;
    out.cls = safety ? PihmlClass::SPIHML : PihmlClass::CPIHML;
    out.conjunct = which;
    out.implicit_partner = which == -1;
    out.witness_part = part;
  };

  if (f->kind() == Formula::Kind::And) {
    try_side(f->left(), 0, true);
    try_side(f->right(), 1, true);
  }
  if (out.cls == PihmlClass::None && !strict) try_side(f, -1, true);
  if (out.cls == PihmlClass::None && f->kind() == Formula::Kind::Or) {
    try_side(f->left(), 0, false);
    try_side(f->right(), 1, false);
  }
  if (out.cls == PihmlClass::None && !strict) try_side(f, -1, false);
  return out;
}

FormulaPtr make_explicit(const FormulaPtr& f, const Alphabet& sigma) {
  if (!in_shml(f) && !in_chml(f))
    throw NotInFragmentError(
        "explicitation needs the safety or co-safety grammar, got: " +
        print_formula(f));

  std::function<FormulaPtr(const FormulaPtr&)> go =
      [&](const FormulaPtr& g) -> FormulaPtr {
    switch (g->kind()) {
      case Formula::Kind::Truth:
      case Formula::Kind::Falsity:
      case Formula::Kind::Var:
        return g;
      case Formula::Kind::LeastFix:
        return Formula::least(g->variable(), go(g->child()));
      case Formula::Kind::GreatestFix:
        return Formula::greatest(g->variable(), go(g->child()));
      case Formula::Kind::Box:
      case Formula::Kind::Diamond:
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        bool conjunctive = g->kind() == Formula::Kind::Box ||
                           g->kind() == Formula::Kind::And;
        Formula::Kind junction =
            conjunctive ? Formula::Kind::And : Formula::Kind::Or;
        std::vector<FormulaPtr> parts;
        flatten_junction(g, junction, parts);
        std::set<Action> modal_actions;
        std::vector<FormulaPtr> rebuilt;
        for (const FormulaPtr& p : parts) {
          if (p->is_modal()) {
            modal_actions.insert(p->action());
            FormulaPtr body = go(p->child());
            rebuilt.push_back(p->kind() == Formula::Kind::Box
                                  ? Formula::box(p->action(), body)
                                  : Formula::diamond(p->action(), body));
          } else {
            rebuilt.push_back(go(p));
          }
        }
        if (!modal_actions.empty()) {
          for (const Action& b : sigma.actions()) {
            if (modal_actions.count(b)) continue;
            rebuilt.push_back(conjunctive
                                  ? Formula::box(b, Formula::truth())
                                  : Formula::diamond(b, Formula::falsity()));
          }
        }
        FormulaPtr acc = rebuilt.front();
        for (size_t i = 1; i < rebuilt.size(); ++i) {
          acc = conjunctive ? Formula::conj(acc, rebuilt[i])
                            : Formula::disj(acc, rebuilt[i]);
        }
        return acc;
      }
    }
    return g;
  };
  return go(f);
}

namespace {

constexpr size_t kInf = std::numeric_limits<size_t>::max();

/* Modal distance to the nearest occurrence of the target constant. */
size_t depth_to(const FormulaPtr& f, Formula::Kind target) {
  if (f->kind() == target) return 0;
  switch (f->kind()) {
    case Formula::Kind::Truth:
    case Formula::Kind::Falsity:
    case Formula::Kind::Var:
      return kInf;
    case Formula::Kind::Box:
    case Formula::Kind::Diamond: {
      size_t d = depth_to(f->child(), target);
      return d == kInf ? kInf : d + 1;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return std::min(depth_to(f->left(), target),
                      depth_to(f->right(), target));
    case Formula::Kind::LeastFix:
    case Formula::Kind::GreatestFix:
      return depth_to(f->child(), target);
  }
  return kInf;
}

/* Follows the shallowest path to the target constant, emitting modal
   actions; fixpoints unfold on the way.  Guardedness bounds the number of
   consecutive unfoldings, so this terminates whenever the depth is
   finite. */
FiniteTrace descend_to(FormulaPtr f, Formula::Kind target) {
  FiniteTrace out;
  for (;;) {
    if (f->kind() == target) return out;
    switch (f->kind()) {
      case Formula::Kind::Box:
      case Formula::Kind::Diamond:
        out.push_back(f->action());
        f = f->child();
        break;
      case Formula::Kind::And:
      case Formula::Kind::Or:
        f = depth_to(f->left(), target) <= depth_to(f->right(), target)
                ? f->left()
                : f->right();
        break;
      case Formula::Kind::LeastFix:
      case Formula::Kind::GreatestFix:
        f = unfold(f);
        break;
      default:
        throw Error("internal: witness descent reached " + print_formula(f));
    }
  }
}

}  // namespace

InformativeWitness witness_informative_trace(const FormulaPtr& f,
                                             const Session& session) {
  require_well_formed(f);
  IhmlResult ih = ihml_membership(f, session.alphabet,
                                  session.strict_implicit_conjunct);
  if (ih.cls == IhmlClass::None)
    throw NotInformativeError("not in the informative fragment: " +
                              print_formula(f));
  bool safety = ih.cls == IhmlClass::SIHML;
  Formula::Kind target =
      safety ? Formula::Kind::Falsity : Formula::Kind::Truth;
  InformativeWitness w;
  w.trace = descend_to(ih.witness_part, target);
  w.polarity = safety ? Polarity::Negative : Polarity::Positive;
  DeterminationResult check = determines(f, w.trace, w.polarity, session);
  if (!check.determined())
    throw Error("internal: informative witness '" + print_trace(w.trace) +
                "' failed oracle validation");
  return w;
}

namespace {

FiniteTrace extend_determining(const FormulaPtr& f, const FiniteTrace& s,
                               const Session& session, bool safety) {
  PihmlResult ph = pihml_membership(f, session.alphabet,
                                    session.strict_implicit_conjunct);
  PihmlClass want = safety ? PihmlClass::SPIHML : PihmlClass::CPIHML;
  if (ph.cls != want)
    throw NotInFragmentError(
        std::string("extension needs the persistently-informative ") +
        (safety ? "violation" : "satisfaction") + " fragment, got: " +
        print_formula(f));
  // Peel s through the explicit operand; its residual still refutes
  // (verifies) at every position, so the descent below stays finite.
  FormulaPtr rest = simplify_units(residual(ph.witness_part, s));
  FiniteTrace t = descend_to(
      rest, safety ? Formula::Kind::Falsity : Formula::Kind::Truth);
  FiniteTrace full = s;
  full.insert(full.end(), t.begin(), t.end());
  DeterminationResult check = determines(
      f, full, safety ? Polarity::Negative : Polarity::Positive, session);
  if (!check.determined())
    throw Error("internal: extension '" + print_trace(full) +
                "' failed oracle validation");
  return t;
}

}  // namespace

FiniteTrace extend_to_violation(const FormulaPtr& f, const FiniteTrace& s,
                                const Session& session) {
  return extend_determining(f, s, session, true);
}

FiniteTrace extend_to_satisfaction(const FormulaPtr& f, const FiniteTrace& s,
                                   const Session& session) {
  return extend_determining(f, s, session, false);
}

ClassificationReport classify(const FormulaPtr& f, const Session& session) {
  require_well_formed(f);
  const Alphabet& sigma = session.alphabet;

  ClassificationReport report;
  report.formula = print_formula(f);
  report.alphabet = sigma;
  report.flags = fragment_membership(f, sigma);
  report.ihml = ihml_membership(f, sigma, session.strict_implicit_conjunct);
  report.pihml = pihml_membership(f, sigma, session.strict_implicit_conjunct);
  report.oracle.finite_len = session.trace_len;
  report.oracle.lasso_size = session.lasso_size;

  std::vector<FinfiniteTrace> universe =
      bounded_universe(sigma, session.trace_len, session.lasso_size);
  std::vector<char> holds(universe.size());
  for (size_t i = 0; i < universe.size(); ++i) holds[i] = eval(f, universe[i]);
  bool all_true = std::all_of(holds.begin(), holds.end(),
                              [](char v) { return v != 0; });
  bool all_false = std::none_of(holds.begin(), holds.end(),
                                [](char v) { return v != 0; });

  auto check_constant = [&](bool expected) {
    for (size_t i = 0; i < universe.size(); ++i) {
      if ((holds[i] != 0) == expected) {
        ++report.oracle.agreements;
      } else {
        report.oracle.disagreements.push_back(
            universe[i].to_string() + " evaluates to " +
            (holds[i] ? "true" : "false") + " against the constant claim");
      }
    }
  };
  auto check_complete_monitor = [&](bool safety) {
    MonitorPtr mon = synthesize(f, sigma).monitor;
    MonitorRuntime rt(mon, sigma, session.state_cap);
    for (size_t i = 0; i < universe.size(); ++i) {
      RunOutcome o = run_trace(rt, universe[i]);
      bool agreed = safety ? (o.status == RunStatus::Rejected) == !holds[i]
                           : (o.status == RunStatus::Accepted) == (holds[i] != 0);
      if (agreed) {
        ++report.oracle.agreements;
      } else {
        report.oracle.disagreements.push_back(
            universe[i].to_string() + ": monitor " + run_status_name(o.status) +
            " but eval says " + (holds[i] ? "true" : "false"));
      }
    }
  };
  auto add_witness = [&](std::string kind, FiniteTrace prefix,
                         FiniteTrace trace, Polarity pol) {
    WitnessRecord rec;
    rec.kind = std::move(kind);
    rec.prefix = std::move(prefix);
    rec.trace = std::move(trace);
    rec.polarity = pol;
    DeterminationResult check = determines(f, rec.trace, pol, session);
    rec.validated = check.determined();
    if (rec.validated) {
      ++report.oracle.agreements;
    } else {
      report.oracle.disagreements.push_back(
          "witness " + print_trace(rec.trace) + " (" + polarity_name(pol) +
          ") not confirmed by the oracle");
    }
    report.witnesses.push_back(std::move(rec));
  };

  if (f->kind() == Formula::Kind::Truth || f->kind() == Formula::Kind::Falsity) {
    report.level = HierarchyLevel::Complete;
    report.basis = LevelBasis::Syntactic;
    check_constant(f->kind() == Formula::Kind::Truth);
    return report;
  }
  if (all_true || all_false) {
    report.level = HierarchyLevel::Complete;
    report.basis = LevelBasis::SemanticBounded;
    check_constant(all_true);
    return report;
  }
  if (report.flags.chml) {
    report.level = HierarchyLevel::CoSafety;
    report.basis = LevelBasis::Syntactic;
    check_complete_monitor(false);
    return report;
  }
  if (report.flags.shml) {
    report.level = HierarchyLevel::Safety;
    report.basis = LevelBasis::Syntactic;
    check_complete_monitor(true);
    return report;
  }
  if (report.pihml.cls != PihmlClass::None) {
    report.level = HierarchyLevel::PersistentlyInformative;
    report.basis = LevelBasis::Syntactic;
    bool safety = report.pihml.cls == PihmlClass::SPIHML;
    Polarity pol = safety ? Polarity::Negative : Polarity::Positive;
    InformativeWitness w = witness_informative_trace(f, session);
    add_witness("informative", {}, w.trace, w.polarity);
    for (const Action& a : sigma.actions()) {
      FiniteTrace prefix{a};
      FiniteTrace ext = safety ? extend_to_violation(f, prefix, session)
                               : extend_to_satisfaction(f, prefix, session);
      FiniteTrace full = prefix;
      full.insert(full.end(), ext.begin(), ext.end());
      add_witness("extension", prefix, full, pol);
    }
    return report;
  }
  if (report.ihml.cls != IhmlClass::None) {
    report.level = HierarchyLevel::Informative;
    report.basis = LevelBasis::Syntactic;
    InformativeWitness w = witness_informative_trace(f, session);
    add_witness("informative", {}, w.trace, w.polarity);
    return report;
  }
  report.level = HierarchyLevel::SoundOnly;
  report.basis = LevelBasis::Syntactic;
  return report;
}

std::string hierarchy_level_name(HierarchyLevel level) {
  switch (level) {
    case HierarchyLevel::Complete:
      return "complete";
    case HierarchyLevel::CoSafety:
      return "co-safety";
    case HierarchyLevel::Safety:
      return "safety";
    case HierarchyLevel::PartiallyMonitorable:
      return "partially-monitorable";
    case HierarchyLevel::PersistentlyInformative:
      return "persistently-informative";
    case HierarchyLevel::Informative:
      return "informative";
    case HierarchyLevel::SoundOnly:
      return "sound-only";
  }
  return "sound-only";
}

std::string level_basis_name(LevelBasis basis) {
  return basis == LevelBasis::Syntactic ? "syntactic" : "semantic-bounded";
}

std::string ihml_class_name(IhmlClass c) {
  switch (c) {
    case IhmlClass::None:
      return "none";
    case IhmlClass::SIHML:
      return "sihml";
    case IhmlClass::CIHML:
      return "cihml";
  }
  return "none";
}

std::string pihml_class_name(PihmlClass c) {
  switch (c) {
    case PihmlClass::None:
      return "none";
    case PihmlClass::SPIHML:
      return "spihml";
    case PihmlClass::CPIHML:
      return "cpihml";
  }
  return "none";
}

}  // namespace recmon
