#ifndef STIT_CANONICAL_HPP
#define STIT_CANONICAL_HPP

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stit/formula.hpp"
#include "stit/model.hpp"
#include "stit/prover.hpp"

namespace stit {

// Maximal consistent set over a finite closure: exactly one of each
// complementary pair, boolean-coherent, consistent per the oracle.  Sets the
// oracle cannot decide are kept with possible=true and excluded from strict
// checks.
struct FiniteMCS {
  std::set<Formula> members;
  bool possible = false;
};

enum class OracleVerdict { Consistent, Inconsistent, Unknown };

struct OracleDisagreement : std::logic_error {
  using std::logic_error::logic_error;
};

struct OracleConfig {
  int max_worlds = 4;
  SearchBudget prover_budget = SearchBudget{20, 400000, 4000};
};

// Two independent consistency routes over one closure: brute-force
// satisfiability over structured choice models (decisive when a model is
// found) and the prover on the negated conjunction (decisive either way).
// Conflicting decisive answers throw OracleDisagreement.
class ConsistencyOracle {
 public:
  ConsistencyOracle(int agents, ClosureSet closure, OracleConfig cfg = OracleConfig());

  OracleVerdict check(const std::set<Formula>& subset);
  // Runs both routes and throws OracleDisagreement on conflicting decisions.
  void check_agreement(const std::set<Formula>& subset);
  bool brute_satisfiable(const std::set<Formula>& subset);
  std::optional<bool> prover_satisfiable(const std::set<Formula>& subset);

  // Distinct closure theories realised at some world of the model family;
  // doubles as an independent enumerator of satisfiable coherent subsets.
  const std::set<std::set<Formula>>& realized_theories();

 private:
  void scan();

  int agents_;
  ClosureSet closure_;
  OracleConfig cfg_;
  bool scanned_ = false;
  std::set<std::set<Formula>> theories_;
};

// Enumerates every subset of the closure satisfying the FiniteMCS
// invariants, in deterministic order.
std::vector<FiniteMCS> enumerate_mcs(const ClosureSet& closure, int agents,
                                     ConsistencyOracle& oracle);

// Worlds are finite MCSs; two worlds are settledness-related when they agree
// on every closure formula of box/diamond shape, and choice-related for
// agent i when they additionally agree on the [i]/<i> formulas.  The future
// relation is the intersection of the choice relations.
struct PreCanonicalModel {
  std::vector<FiniteMCS> worlds;
  Relation r_pres_box;
  std::vector<Relation> r_pres_i;
  Relation r_fut;
  std::vector<std::string> warnings;  // degenerate-closure notes
};

PreCanonicalModel build_pre_canonical(const std::vector<FiniteMCS>& mcss, int agents);

// Layers the pre-canonical model: layer 0 keeps the present relations,
// layers >= 1 use the future relation everywhere, the grand coalition is the
// intersection of the choices, and the valuation is layer-independent.
LayeredModel build_canonical(const PreCanonicalModel& pre, int T);

struct TruthLemmaReport {
  int mcs_count = 0;
  int possible_count = 0;
  std::vector<std::string> mismatches;
  std::vector<std::string> existence_failures;
  std::vector<std::string> warnings;
  FrameReport frame;
  bool ok() const { return mismatches.empty() && existence_failures.empty(); }
};

// Builds the canonical model for the closure of phi0 and checks, for every
// closure formula and layer-0 world, that truth and membership coincide,
// plus the diamond existence property.  phi0 must use only boolean, box,
// diamond and per-agent choice operators.
TruthLemmaReport truth_lemma_check(const Formula& phi0, int agents, int T,
                                   OracleConfig oracle_cfg = OracleConfig());

}  // namespace stit

#endif  // STIT_CANONICAL_HPP
