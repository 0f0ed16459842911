#ifndef STIT_FORMULA_HPP
#define STIT_FORMULA_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace stit {

using AgentId = int;

// Connectives of the STIT languages.  Stit/CoStit are the per-agent choice
// operators [i]/<i>, AgStit/AgCoStit the grand-coalition operators, and
// XStit/XCoStit the next-moment group operators [x:{..}]/<x:{..}>.
enum class Conn : std::uint8_t {
  Atom,
  NegAtom,
  Not,       // parser-level only, eliminated by to_nnf
  And,
  Or,
  Implies,   // parser-level only
  Box,       // []
  Dia,       // <>
  Stit,      // [i]
  CoStit,    // <i>
  AgStit,    // [Ag]
  AgCoStit,  // <Ag>
  Always,      // G
  Eventually,  // F
  Historically,// H
  Once,        // P
  XStit,     // [x:{A}]
  XCoStit,   // <x:{A}>
};

class Formula;

namespace detail {
struct FormulaNode {
  Conn conn;
  std::string name;             // Atom/NegAtom
  AgentId agent = -1;           // Stit/CoStit
  std::vector<AgentId> group;   // XStit/XCoStit, sorted ascending
  std::shared_ptr<const FormulaNode> left, right;
  std::size_t hash = 0;
};
}  // namespace detail

// Immutable formula tree with value semantics.  Copies share structure.
class Formula {
 public:
  Formula() = default;

  bool valid() const { return node_ != nullptr; }
  Conn conn() const { return node_->conn; }
  const std::string& name() const { return node_->name; }
  AgentId agent() const { return node_->agent; }
  const std::vector<AgentId>& group() const { return node_->group; }
  Formula left() const { return Formula(node_->left); }
  Formula right() const { return Formula(node_->right); }
  std::size_t hash() const { return node_ ? node_->hash : 0; }

  bool is_literal() const {
    return node_ && (node_->conn == Conn::Atom || node_->conn == Conn::NegAtom);
  }
  bool is_binary() const {
    return node_ && (node_->conn == Conn::And || node_->conn == Conn::Or ||
                     node_->conn == Conn::Implies);
  }

  friend int compare(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Formula& a, const Formula& b) { return compare(a, b) != 0; }
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
    int c = compare(a, b);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  // Factories.
  static Formula atom(std::string name);
  static Formula neg_atom(std::string name);
  static Formula lnot(Formula f);
  static Formula land(Formula a, Formula b);
  static Formula lor(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula box(Formula f);
  static Formula dia(Formula f);
  static Formula stit(AgentId i, Formula f);
  static Formula costit(AgentId i, Formula f);
  static Formula ag_stit(Formula f);
  static Formula ag_costit(Formula f);
  static Formula always(Formula f);      // G
  static Formula eventually(Formula f);  // F
  static Formula historically(Formula f);// H
  static Formula once(Formula f);        // P
  static Formula xstit(std::vector<AgentId> group, Formula f);
  static Formula xcostit(std::vector<AgentId> group, Formula f);

 private:
  explicit Formula(std::shared_ptr<const detail::FormulaNode> n) : node_(std::move(n)) {}
  static Formula make(detail::FormulaNode n);
  std::shared_ptr<const detail::FormulaNode> node_;
};

struct ParseError : std::runtime_error {
  ParseError(std::string msg, std::size_t position)
      : std::runtime_error(std::move(msg)), pos(position) {}
  std::size_t pos;
};

// Parses the ASCII surface syntax.  Precedence, low to high: ->, |, &,
// prefix operators.  Agent indices must be < n_agents.
Formula parse_formula(const std::string& text, int n_agents);

// Minimal-parenthesis printer; parse_formula(render(f)) == f.
std::string render(const Formula& f);

// Negation normal form: eliminates Not and Implies, pushes negation to atoms.
Formula to_nnf(const Formula& f);

// NNF complement; requires f in NNF.  complement(complement(f)) == f.
Formula complement(const Formula& f);

bool is_nnf(const Formula& f);

// Direct subformulas including the formula itself.
void collect_subformulas(const Formula& f, std::set<Formula>& out);

// Structural properties.
int formula_size(const Formula& f);
int modal_depth(const Formula& f);
bool is_atemporal(const Formula& f);   // no G/F/H/P
bool has_xstit(const Formula& f);
bool has_agent_ops(const Formula& f);  // [Ag]/<Ag> present
int max_agent_index(const Formula& f); // -1 when agent-free

// Smallest superset of the inputs closed under subformulas and NNF
// complement.  Inputs must be in NNF.
class ClosureSet {
 public:
  ClosureSet() = default;
  explicit ClosureSet(const std::vector<Formula>& seeds);

  const std::set<Formula>& formulas() const { return formulas_; }
  bool contains(const Formula& f) const { return formulas_.count(f) > 0; }
  std::size_t size() const { return formulas_.size(); }

  // One representative per {f, complement(f)} pair, smallest member first.
  std::vector<Formula> representative_pairs() const;

 private:
  std::set<Formula> formulas_;
};

ClosureSet closure_of(const std::vector<Formula>& seeds);

}  // namespace stit

#endif  // STIT_FORMULA_HPP
