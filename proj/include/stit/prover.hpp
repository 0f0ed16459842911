#ifndef STIT_PROVER_HPP
#define STIT_PROVER_HPP

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stit/model.hpp"
#include "stit/sequent.hpp"

namespace stit {

struct SearchBudget {
  int max_labels = 12;
  long max_nodes = 200000;
  int max_depth = 2000;
};

enum class VerdictKind { Proved, Refuted, Unknown };

struct ProverStats {
  long nodes = 0;      // rule applications
  int labels = 0;      // labels on the decisive branch
  int branches = 0;    // branch points explored
};

struct ProverResult {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<ProofNode> proof;               // Proved
  std::optional<ExplicitModel> countermodel;    // Refuted
  std::map<std::string, std::string> interpretation;  // label -> world name
  std::string root_label = "x0";
  std::string report;                           // budget report when Unknown
  ProverStats stats;
};

// Signals a rule-schema bug: an open saturated branch whose extracted model
// fails falsification verification.
struct ProverInternalError : std::logic_error {
  using std::logic_error::logic_error;
};

enum class CompG2Policy { TemporalPairs, TemporalOrBoxPairs, Off };

struct ProverOptions {
  CompG2Policy compg2 = CompG2Policy::TemporalPairs;
};

// Fair bottom-up saturation of one branch.  Instances are re-checked for
// applicability and redundancy when popped, and scheduled in four classes:
// propagation rules drain first, then fresh-label rules, then the
// independence rule, then branching rules (newest first, so branching stays
// close to recent material).  Queues are FIFO within a class, every enabled
// instance is eventually serviced, and fresh labels are numbered in creation
// order, so runs are deterministic.
class Saturation {
 public:
  Saturation(LabelledSequent root, int agents, Logic logic,
             const ProverOptions& opts = {});

  enum class StepKind { Closed, Applied, Saturated };
  struct Step {
    StepKind kind = StepKind::Saturated;
    RuleApp rule;
    std::vector<LabelledSequent> premises;
  };

  // Applies the oldest applicable, non-redundant instance.
  Step step();

  // Commits one premise of the last Applied step; fork by copying first.
  void adopt(const LabelledSequent& premise);

  const LabelledSequent& sequent() const { return seq_; }
  const std::set<std::string>& stationary() const { return stationary_; }
  int label_count() const;

 private:
  void enqueue_new();
  bool redundant(const RuleApp& app) const;
  std::optional<RuleApp> closing_rule() const;

  LabelledSequent seq_;
  int agents_;
  Logic logic_;
  ProverOptions opts_;
  std::set<std::string> stationary_;
  std::deque<RuleApp> queues_[4];  // by scheduling class
  std::set<RuleApp> seen_;
  int fresh_counter_ = 1;
};

// Reduction-tree proof search.  Proved carries a derivation accepted by
// check_proof; Refuted carries a verified countermodel with the label
// interpretation; Unknown reports the exhausted budget.
ProverResult prove(const Formula& f, int agents, Logic logic, const SearchBudget& budget,
                   const ProverOptions& opts = {});

// Quotient of a saturated open sequent by its equality atoms, with the
// grand-coalition repair (R_Ag := intersection of the choice relations) and
// the stationary-tail completion.  Does not verify; prove() verifies.
std::pair<ExplicitModel, std::map<std::string, std::string>> extract_countermodel(
    const LabelledSequent& s, int agents, Logic logic);

}  // namespace stit

#endif  // STIT_PROVER_HPP
