#include "recmon/pz.hpp"

#include <map>

#include "recmon/fragments.hpp"
#include "recmon/trace.hpp"

namespace recmon {

namespace {

FiniteTrace concat(const FiniteTrace& s, const FiniteTrace& r) {
  FiniteTrace out = s;
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace

PzResult s_monitorable(const FormulaPtr& f, const FiniteTrace& s, size_t bound,
                       const Session& session) {
  require_well_formed(f);
  PzResult out;
  out.quantifier = PzQuantifier::Existential;
  out.bound = bound;
  // Only the exact decision paths can return Determined, and those ignore
  // the search bound, so the per-candidate probes skip the bounded search.
  Session probe = session;
  probe.oracle_bound = 0;
  for (const FiniteTrace& r : finite_traces_upto(session.alphabet, bound)) {
    FiniteTrace full = concat(s, r);
    for (Polarity pol : {Polarity::Positive, Polarity::Negative}) {
      DeterminationResult d = determines(f, full, pol, probe);
      if (d.determined()) {
        out.status = PzStatus::Monitorable;
        out.witness = r;
        out.witness_polarity = pol;
        out.exact = true;
        out.reason = "extension '" + print_trace(r) + "' " +
                     polarity_name(pol) + "ly determines (" +
                     decision_path_name(d.path) + ")";
        return out;
      }
    }
  }
  out.status = PzStatus::NotMonitorableUpToBound;
  out.exact = false;
  out.reason = "no determining extension of length <= " +
               std::to_string(bound);
  return out;
}

PzResult epz_monitorable(const FormulaPtr& f, size_t bound,
                         const Session& session) {
  PzResult out = s_monitorable(f, {}, bound, session);
  if (out.status == PzStatus::Monitorable) return out;
  // The informative fragment yields a witness of unrestricted length, so
  // membership upgrades a failed bounded search.
  IhmlResult ih =
      ihml_membership(f, session.alphabet, session.strict_implicit_conjunct);
  if (ih.cls != IhmlClass::None) {
    InformativeWitness w = witness_informative_trace(f, session);
    out.status = PzStatus::Monitorable;
    out.witness = w.trace;
    out.witness_polarity = w.polarity;
    out.exact = true;
    out.reason = "informative-fragment witness '" + print_trace(w.trace) +
                 "' beyond the search bound";
  }
  return out;
}

PzResult upz_monitorable(const FormulaPtr& f, size_t prefix_depth,
                         size_t bound, const Session& session) {
  require_well_formed(f);
  PzResult out;
  out.quantifier = PzQuantifier::Universal;
  out.bound = bound;

  PihmlResult ph =
      pihml_membership(f, session.alphabet, session.strict_implicit_conjunct);
  if (ph.cls != PihmlClass::None) {
    bool safety = ph.cls == PihmlClass::SPIHML;
    for (const FiniteTrace& s :
         finite_traces_upto(session.alphabet, prefix_depth)) {
      FiniteTrace t = safety ? extend_to_violation(f, s, session)
                             : extend_to_satisfaction(f, s, session);
      out.prefix_witnesses.emplace_back(s, t);
      ++out.probed_prefixes;
    }
    out.status = PzStatus::Monitorable;
    out.witness_polarity = safety ? Polarity::Negative : Polarity::Positive;
    out.exact = true;
    out.reason = "persistently-informative fragment extension at every prefix";
    return out;
  }

  for (const FiniteTrace& s :
       finite_traces_upto(session.alphabet, prefix_depth)) {
    PzResult at = s_monitorable(f, s, bound, session);
    ++out.probed_prefixes;
    if (at.status != PzStatus::Monitorable) {
      out.status = PzStatus::NotMonitorableUpToBound;
      out.failing_prefix = s;
      out.exact = false;
      out.reason = "prefix '" + print_trace(s) +
                   "' has no determining extension of length <= " +
                   std::to_string(bound);
      return out;
    }
    out.prefix_witnesses.emplace_back(s, *at.witness);
  }
  out.status = PzStatus::Monitorable;
  out.exact = false;
  out.reason = "every prefix up to depth " + std::to_string(prefix_depth) +
               " has a determining extension within the bound";
  return out;
}

FfmValue ffm_evaluate(const FormulaPtr& f, const FiniteTrace& s,
                      TruthDomain domain, const Session& session) {
  require_well_formed(f);
  FfmValue out;
  switch (domain) {
    case TruthDomain::FfUnknown: {
      DeterminationResult neg = determines(f, s, Polarity::Negative, session);
      if (neg.determined()) {
        out.value = ThreeVal::False;
        out.exact = true;
      } else {
        out.value = ThreeVal::Unknown;
        out.exact = neg.status == DeterminationStatus::NotDetermined;
      }
      return out;
    }
    case TruthDomain::TtUnknown: {
      DeterminationResult pos = determines(f, s, Polarity::Positive, session);
      if (pos.determined()) {
        out.value = ThreeVal::True;
        out.exact = true;
      } else {
        out.value = ThreeVal::Unknown;
        out.exact = pos.status == DeterminationStatus::NotDetermined;
      }
      return out;
    }
    case TruthDomain::TtFfUnknown: {
      bool holds = eval(f, FinfiniteTrace::finite(s));
      DeterminationResult pos = determines(f, s, Polarity::Positive, session);
      if (holds && pos.determined()) {
        out.value = ThreeVal::True;
        out.exact = true;
        return out;
      }
      DeterminationResult neg = determines(f, s, Polarity::Negative, session);
      if (!holds && neg.determined()) {
        out.value = ThreeVal::False;
        out.exact = true;
        return out;
      }
      out.value = ThreeVal::Unknown;
      out.exact = pos.status == DeterminationStatus::NotDetermined &&
                  neg.status == DeterminationStatus::NotDetermined;
      return out;
    }
  }
  return out;
}

FfmMonitorability ffm_monitorable(const FormulaPtr& f, TruthDomain domain,
                                  const Session& session) {
  require_well_formed(f);
  FfmMonitorability out;
  out.prefix_depth = session.prefix_depth;
  out.bound = session.oracle_bound;

  std::vector<FiniteTrace> members;
  std::vector<FiniteTrace> outsiders;
  std::map<FiniteTrace, ThreeVal> value;
  for (const FiniteTrace& s :
       finite_traces_upto(session.alphabet, session.prefix_depth)) {
    (eval(f, FinfiniteTrace::finite(s)) ? members : outsiders).push_back(s);
    value[s] = ffm_evaluate(f, s, domain, session).value;
  }
  for (const FiniteTrace& s : members) {
    for (const FiniteTrace& t : outsiders) {
      if (value[s] == value[t]) {
        out.monitorable = false;
        out.witness_pair = {s, t};
        return out;
      }
    }
  }
  return out;
}

std::string pz_status_name(PzStatus s) {
  switch (s) {
    case PzStatus::Monitorable:
      return "monitorable";
    case PzStatus::NotMonitorableUpToBound:
      return "not-monitorable-up-to-bound";
    case PzStatus::NotMonitorable:
      return "not-monitorable";
  }
  return "not-monitorable-up-to-bound";
}

std::string truth_domain_name(TruthDomain d) {
  switch (d) {
    case TruthDomain::FfUnknown:
      return "ff?";
    case TruthDomain::TtUnknown:
      return "tt?";
    case TruthDomain::TtFfUnknown:
      return "ttff?";
  }
  return "ttff?";
}

std::string three_val_name(ThreeVal v) {
  switch (v) {
    case ThreeVal::True:
      return "tt";
    case ThreeVal::False:
      return "ff";
    case ThreeVal::Unknown:
      return "?";
  }
  return "?";
}

}  // namespace recmon
