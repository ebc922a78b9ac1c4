#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recmon/formula.hpp"
#include "recmon/semantics.hpp"
#include "recmon/session.hpp"

namespace recmon {

/* A subformula position: the sequence of child indices from the root
   (0 = only/left child, 1 = right child).  Duplicate subterms at different
   positions carry independent labels. */
using Path = std::vector<uint8_t>;

std::string path_to_string(const Path& p);

/* Least number of fixpoint unfoldings after which the subformula at a
   position can reach ff (refute) or tt (verify); absent when it never
   can. */
struct PositionLabel {
  std::optional<size_t> refute_level;
  std::optional<size_t> verify_level;
};
using RefutabilityMap = std::map<Path, PositionLabel>;

/* Least-fixpoint refutability annotation: a position refutes in 0 steps if
   ff occurs in its subformula, and in k+1 if the subformula has a free
   variable whose binder body refutes in k; dually for verification with
   tt.  Requires membership in the safety or co-safety grammar. */
RefutabilityMap annotate_refutability(const FormulaPtr& f);

enum class IhmlClass { None, SIHML, CIHML };
enum class PihmlClass { None, SPIHML, CPIHML };

/* How an informative-fragment membership was established: which top-level
   operand witnessed it, and whether a bare formula was coerced with a unit
   partner (f & tt, f | ff). */
struct IhmlResult {
  IhmlClass cls = IhmlClass::None;
  int conjunct = -1;          // 0 = left operand, 1 = right, -1 = whole
  bool implicit_partner = false;
  FormulaPtr witness_part;    // the operand that carried membership
};

struct PihmlResult {
  PihmlClass cls = PihmlClass::None;
  int conjunct = -1;
  bool implicit_partner = false;
  FormulaPtr witness_part;
};

/* Safety / co-safety / explicit grammar flags. */
struct FragmentFlags {
  bool shml = false;
  bool chml = false;
  bool ehml = false;
};

FragmentFlags fragment_membership(const FormulaPtr& f, const Alphabet& sigma);

bool in_shml(const FormulaPtr& f);
bool in_chml(const FormulaPtr& f);
bool in_ehml(const FormulaPtr& f, const Alphabet& sigma);

/* SIHML: a conjunction with an operand in the safety grammar containing
   ff; CIHML: dual.  A bare safety formula containing ff counts as f & tt
   (recorded via implicit_partner) unless strict mode disables that. */
IhmlResult ihml_membership(const FormulaPtr& f, const Alphabet& sigma,
                           bool strict = false);

/* SPIHML: a conjunction whose safety operand is explicit and refutes at
   every position; CPIHML: dual with verification. */
PihmlResult pihml_membership(const FormulaPtr& f, const Alphabet& sigma,
                             bool strict = false);

/* Completes every box group to range over the whole alphabet by adding
   [b]tt conjuncts, and every diamond group by adding <b>ff disjuncts;
   original operands stay first, additions follow alphabet order.  The
   result denotes the same trace set. */
FormulaPtr make_explicit(const FormulaPtr& f, const Alphabet& sigma);

struct InformativeWitness {
  FiniteTrace trace;
  Polarity polarity = Polarity::Negative;
};

/* A finite trace that negatively (SIHML) or positively (CIHML) determines
   the formula, found by descending toward the shallowest ff (dually tt):
   conjunctions pick the child with the smallest verdict depth, modalities
   emit their action, fixpoints unfold.  Throws NotInformativeError when
   the formula is not in the informative fragment. */
InformativeWitness witness_informative_trace(const FormulaPtr& f,
                                             const Session& session);

/* For a persistently-informative formula: a finite t such that s·t
   negatively determines the formula (SPIHML; throws NotInFragmentError
   otherwise).  Peels s through the explicit operand, then extracts a
   witness from the residual. */
FiniteTrace extend_to_violation(const FormulaPtr& f, const FiniteTrace& s,
                                const Session& session);
/* CPIHML dual: s·t positively determines. */
FiniteTrace extend_to_satisfaction(const FormulaPtr& f, const FiniteTrace& s,
                                   const Session& session);

/* Rungs of the monitorability ladder, strongest first. */
enum class HierarchyLevel {
  Complete,
  CoSafety,
  Safety,
  PartiallyMonitorable,
  PersistentlyInformative,
  Informative,
  SoundOnly,
};

enum class LevelBasis { Syntactic, SemanticBounded };

struct WitnessRecord {
  std::string kind;  // "informative" | "extension"
  FiniteTrace prefix;
  FiniteTrace trace;
  Polarity polarity = Polarity::Negative;
  bool validated = false;
};

struct OracleCrossCheck {
  size_t finite_len = 0;
  size_t lasso_size = 0;
  size_t agreements = 0;
  std::vector<std::string> disagreements;
};

struct ClassificationReport {
  std::string formula;
  Alphabet alphabet;
  HierarchyLevel level = HierarchyLevel::SoundOnly;
  LevelBasis basis = LevelBasis::Syntactic;
  FragmentFlags flags;
  IhmlResult ihml;
  PihmlResult pihml;
  std::vector<WitnessRecord> witnesses;
  OracleCrossCheck oracle;
};

/* Syntactic ladder with bounded semantic cross-checks: Complete for
   literal or bounded-trivial truth/falsity, then co-safety, safety,
   persistently-informative, informative, else sound-only.  The oracle
   section replays every claim the level rests on over the bounded trace
   universe. */
ClassificationReport classify(const FormulaPtr& f, const Session& session);

std::string hierarchy_level_name(HierarchyLevel level);
std::string level_basis_name(LevelBasis basis);
std::string ihml_class_name(IhmlClass c);
std::string pihml_class_name(PihmlClass c);

}  // namespace recmon
