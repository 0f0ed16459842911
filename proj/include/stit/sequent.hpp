#ifndef STIT_SEQUENT_HPP
#define STIT_SEQUENT_HPP

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stit/formula.hpp"

namespace stit {

enum class Logic { Ldm, Tstit, Xstit };

// Relational atom kinds of the labelled calculi.  RGbar is the complement of
// the temporal relation, RAx the Xstit group relation, Eq label equality.
enum class RelKind : int { Rbox, Ri, RAg, RG, RGbar, RH, RAx, Eq };

struct RelAtom {
  RelKind kind = RelKind::Rbox;
  int agent = -1;               // Ri
  std::vector<int> group;       // RAx, sorted
  std::string from, to;

  auto operator<=>(const RelAtom&) const = default;
};

RelAtom rbox(std::string a, std::string b);
RelAtom ri(int agent, std::string a, std::string b);
RelAtom rag(std::string a, std::string b);
RelAtom rg(std::string a, std::string b);
RelAtom rgbar(std::string a, std::string b);
RelAtom rh(std::string a, std::string b);
RelAtom rax(std::vector<int> group, std::string a, std::string b);
RelAtom req(std::string a, std::string b);
std::string to_string(const RelAtom& a);

// One-sided labelled sequent: a set of relational atoms plus labelled NNF
// formulas.  Rules are cumulative: premises extend their conclusion.
struct LabelledSequent {
  std::set<RelAtom> rels;
  std::set<std::pair<std::string, Formula>> fmls;

  bool has(const RelAtom& a) const { return rels.count(a) > 0; }
  bool has(const std::string& label, const Formula& f) const {
    return fmls.count({label, f}) > 0;
  }
  std::set<std::string> labels() const;
  bool mentions(const std::string& label) const;

  bool operator==(const LabelledSequent& o) const {
    return rels == o.rels && fmls == o.fmls;
  }
};

std::string to_string(const LabelledSequent& s);

// Rule catalogue.  Logical rules, fresh-label rules for box-type operators,
// propagation rules for diamond-type operators, the relational rules of the
// Tstit calculus, equality rules, and the Xstit system of rules.
enum class RuleName : int {
  Id, And, Or,
  Box, Stit, AgStit, G, H, XStit,
  Dia, CoStit, AgCoStit, F, P, XCoStit,
  ReflBox, EuclBox, ReflI, EuclI, ReflAg, EuclAg,
  BrI, Agd, IOA,
  TransG, SerG, ConvG, ConvH, ConnG, ConnH,
  Ncuh, IrrG, CompG1, CompG2,
  RefEq, EuclEq, ReplEq,
  IOAE, IOAU,
};

std::string rule_name(RuleName r);
std::optional<RuleName> rule_from_name(const std::string& s);

// A rule application: the rule plus whatever instantiation data its schema
// needs.  Unused fields stay empty.
struct RuleApp {
  RuleName rule = RuleName::Id;
  std::string label;            // principal label (logical / box / dia rules)
  Formula formula;              // principal formula
  std::string target;           // dia-type: label of the successor used
  int agent = -1;               // agent-indexed relational rules
  std::vector<int> group;       // Xstit group
  std::string fresh;            // fresh label for fresh-label rules
  std::string x, y, z;          // labels for relational / equality rules
  std::vector<std::string> tuple;  // IOA choice tuple, one label per agent
  int instance_id = -1;         // IOA-E / IOA-U linkage
  std::optional<RelAtom> rel;   // repl=: relational atom to transport

  auto operator<=>(const RuleApp&) const = default;
};

std::string to_string(const RuleApp& app);

struct ProofNode {
  LabelledSequent conclusion;
  RuleApp rule;
  std::vector<ProofNode> premises;
};

struct RuleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Context a rule application is checked against: the agent count, the open
// Xstit instances on the path, and the stationary labels introduced by serG
// (F/P may propagate into a stationary label reflexively).
struct RuleContext {
  int agents = 2;
  std::set<std::string> stationary;
  // instance id -> (root label, fresh box successor)
  std::vector<std::pair<int, std::pair<std::string, std::string>>> xstit_instances;

  const std::pair<std::string, std::string>* find_instance(int id) const;
};

// Applies one rule bottom-up, returning the premises (conclusion plus the
// schema's additions).  Throws RuleError when the instantiation does not
// match the sequent.  `warnings`, when given, collects accepted-but-flagged
// IOA-U instances outside the shape of the reference derivation.
std::vector<LabelledSequent> apply_rule(const LabelledSequent& s, const RuleApp& app,
                                        const RuleContext& ctx,
                                        std::vector<std::string>* warnings = nullptr);

// The relational atom a modal operator travels along (Box/Dia -> Rbox, choice
// operators -> Ri/RAg, temporal -> RG/RH, Xstit -> RAx).
RelAtom operator_atom(const Formula& f, const std::string& from, const std::string& to);

struct CheckResult {
  bool accepted = true;
  std::string reason;
  std::vector<int> node_path;  // child indices from the root to the offender
  std::vector<std::string> warnings;
};

std::string path_string(const std::vector<int>& path);

// Validates a full derivation: every node must instantiate its rule schema,
// premises must match the recomputed ones exactly, leaves must be id/compG1,
// and every IOA-U must reference an IOA-E ancestor of the same instance.
CheckResult check_proof(const ProofNode& t, Logic logic, int agents);

// The reference derivation of the Xstit independence axiom
//   [] <x:{0}> ~p  |  [] <x:{1}> ~q  |  <> ([x:{0}] p & [x:{1}] q)
// with groups A = {0}, B = {1}.
ProofNode appendix_b_fixture();

// Rules admissible per logic.
bool rule_allowed(RuleName r, Logic logic);

}  // namespace stit

#endif  // STIT_SEQUENT_HPP
