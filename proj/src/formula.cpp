#include "stit/formula.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <functional>
#include <sstream>

namespace stit {

namespace {

std::size_t hash_combine(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Formula Formula::make(detail::FormulaNode n) {
  std::size_t h = static_cast<std::size_t>(n.conn);
  h = hash_combine(h, std::hash<std::string>{}(n.name));
  h = hash_combine(h, static_cast<std::size_t>(n.agent + 1));
  for (AgentId a : n.group) h = hash_combine(h, static_cast<std::size_t>(a + 1));
  if (n.left) h = hash_combine(h, n.left->hash);
  if (n.right) h = hash_combine(h, n.right->hash);
  n.hash = h;
  return Formula(std::make_shared<const detail::FormulaNode>(std::move(n)));
}

Formula Formula::atom(std::string name) {
  detail::FormulaNode n;
  n.conn = Conn::Atom;
  n.name = std::move(name);
  return make(std::move(n));
}

Formula Formula::neg_atom(std::string name) {
  detail::FormulaNode n;
  n.conn = Conn::NegAtom;
  n.name = std::move(name);
  return make(std::move(n));
}

#define STIT_UNARY_FACTORY(fn, kind)                         \
  Formula Formula::fn(Formula f) {                           \
    detail::FormulaNode n;                                   \
    n.conn = Conn::kind;                                     \
    n.left = f.node_;                                        \
    return make(std::move(n));                               \
  }

STIT_UNARY_FACTORY(lnot, Not)
STIT_UNARY_FACTORY(box, Box)
STIT_UNARY_FACTORY(dia, Dia)
STIT_UNARY_FACTORY(ag_stit, AgStit)
STIT_UNARY_FACTORY(ag_costit, AgCoStit)
STIT_UNARY_FACTORY(always, Always)
STIT_UNARY_FACTORY(eventually, Eventually)
STIT_UNARY_FACTORY(historically, Historically)
STIT_UNARY_FACTORY(once, Once)
#undef STIT_UNARY_FACTORY

#define STIT_BINARY_FACTORY(fn, kind)                        \
  Formula Formula::fn(Formula a, Formula b) {                \
    detail::FormulaNode n;                                   \
    n.conn = Conn::kind;                                     \
    n.left = a.node_;                                        \
    n.right = b.node_;                                       \
    return make(std::move(n));                               \
  }

STIT_BINARY_FACTORY(land, And)
STIT_BINARY_FACTORY(lor, Or)
STIT_BINARY_FACTORY(implies, Implies)
#undef STIT_BINARY_FACTORY

Formula Formula::stit(AgentId i, Formula f) {
  detail::FormulaNode n;
  n.conn = Conn::Stit;
  n.agent = i;
  n.left = f.node_;
  return make(std::move(n));
}

Formula Formula::costit(AgentId i, Formula f) {
  detail::FormulaNode n;
  n.conn = Conn::CoStit;
  n.agent = i;
  n.left = f.node_;
  return make(std::move(n));
}

Formula Formula::xstit(std::vector<AgentId> group, Formula f) {
  detail::FormulaNode n;
  n.conn = Conn::XStit;
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  n.group = std::move(group);
  n.left = f.node_;
  return make(std::move(n));
}

Formula Formula::xcostit(std::vector<AgentId> group, Formula f) {
  detail::FormulaNode n;
  n.conn = Conn::XCoStit;
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  n.group = std::move(group);
  n.left = f.node_;
  return make(std::move(n));
}

int compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (!a.node_) return -1;
  if (!b.node_) return 1;
  if (a.node_->conn != b.node_->conn)
    return a.node_->conn < b.node_->conn ? -1 : 1;
  if (int c = a.node_->name.compare(b.node_->name)) return c < 0 ? -1 : 1;
  if (a.node_->agent != b.node_->agent) return a.node_->agent < b.node_->agent ? -1 : 1;
  if (a.node_->group != b.node_->group) return a.node_->group < b.node_->group ? -1 : 1;
  if (int c = compare(Formula(a.node_->left), Formula(b.node_->left))) return c;
  return compare(Formula(a.node_->right), Formula(b.node_->right));
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;
  int n_agents;

  explicit Parser(const std::string& t, int agents) : text(t), n_agents(agents) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool match(const std::string& s) {
    skip_ws();
    if (text.compare(pos, s.size(), s) == 0) {
      pos += s.size();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

  int parse_number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected agent index");
    int v = std::stoi(text.substr(start, pos - start));
    if (v >= n_agents)
      throw ParseError("unknown agent index " + std::to_string(v) + " (declared agent count " +
                           std::to_string(n_agents) + ")",
                       start);
    return v;
  }

  std::vector<AgentId> parse_group(char closer) {
    // after "x:{"
    std::vector<AgentId> ids;
    ids.push_back(parse_number());
    while (match(",")) ids.push_back(parse_number());
    if (!match("}")) fail("expected '}' in group operator");
    std::string end(1, closer);
    if (!match(end)) fail(std::string("expected '") + closer + "' closing group operator");
    return ids;
  }

  Formula parse_formula() { return parse_implies(); }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (match("->")) return Formula::implies(lhs, parse_implies());
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == '|') {
        ++pos;
        f = Formula::lor(f, parse_and());
      } else {
        break;
      }
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == '&') {
        ++pos;
        f = Formula::land(f, parse_unary());
      } else {
        break;
      }
    }
    return f;
  }

  Formula parse_unary() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '~') {
      ++pos;
      Formula body = parse_unary();
      // a negated atom is the negative literal, not a Not node
      if (body.conn() == Conn::Atom) return Formula::neg_atom(body.name());
      return Formula::lnot(body);
    }
    if (c == '(') {
      ++pos;
      Formula f = parse_formula();
      if (!match(")")) fail("expected ')'");
      return f;
    }
    if (c == '[') {
      ++pos;
      if (match("]")) return Formula::box(parse_unary());
      if (match("Ag]")) return Formula::ag_stit(parse_unary());
      if (match("x:{")) {
        std::vector<AgentId> group = parse_group(']');
        return Formula::xstit(std::move(group), parse_unary());
      }
      int i = parse_number();
      if (!match("]")) fail("expected ']'");
      return Formula::stit(i, parse_unary());
    }
    if (c == '<') {
      ++pos;
      if (match(">")) return Formula::dia(parse_unary());
      if (match("Ag>")) return Formula::ag_costit(parse_unary());
      if (match("x:{")) {
        std::vector<AgentId> group = parse_group('>');
        return Formula::xcostit(std::move(group), parse_unary());
      }
      int i = parse_number();
      if (!match(">")) fail("expected '>'");
      return Formula::costit(i, parse_unary());
    }
    if (c == 'G' || c == 'F' || c == 'H' || c == 'P') {
      ++pos;
      Formula body = parse_unary();
      switch (c) {
        case 'G': return Formula::always(body);
        case 'F': return Formula::eventually(body);
        case 'H': return Formula::historically(body);
        default:  return Formula::once(body);
      }
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      ++pos;
      while (pos < text.size() &&
             (std::islower(static_cast<unsigned char>(text[pos])) ||
              std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      return Formula::atom(text.substr(start, pos - start));
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Formula parse_formula(const std::string& text, int n_agents) {
  Parser p(text, n_agents);
  Formula f = p.parse_formula();
  if (!p.eof()) p.fail("trailing input");
  return f;
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

// precedence: -> 1, | 2, & 3, prefix 4
int precedence(Conn c) {
  switch (c) {
    case Conn::Implies: return 1;
    case Conn::Or: return 2;
    case Conn::And: return 3;
    default: return 4;
  }
}

std::string group_text(const std::vector<AgentId>& g) {
  std::ostringstream os;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) os << ",";
    os << g[i];
  }
  return os.str();
}

void render_rec(const Formula& f, int parent_prec, std::string& out) {
  int prec = precedence(f.conn());
  bool need_parens = prec < parent_prec;
  if (need_parens) out += "(";
  switch (f.conn()) {
    case Conn::Atom: out += f.name(); break;
    case Conn::NegAtom: out += "~" + f.name(); break;
    case Conn::Not:
      out += "~";
      render_rec(f.left(), 4, out);
      break;
    case Conn::And:
      render_rec(f.left(), 3, out);
      out += " & ";
      render_rec(f.right(), 4, out);  // left-assoc: right child needs higher
      break;
    case Conn::Or:
      render_rec(f.left(), 2, out);
      out += " | ";
      render_rec(f.right(), 3, out);
      break;
    case Conn::Implies:
      render_rec(f.left(), 2, out);  // right-assoc
      out += " -> ";
      render_rec(f.right(), 1, out);
      break;
    case Conn::Box:
      out += "[]";
      render_rec(f.left(), 4, out);
      break;
    case Conn::Dia:
      out += "<>";
      render_rec(f.left(), 4, out);
      break;
    case Conn::Stit:
      out += "[" + std::to_string(f.agent()) + "]";
      render_rec(f.left(), 4, out);
      break;
    case Conn::CoStit:
      out += "<" + std::to_string(f.agent()) + ">";
      render_rec(f.left(), 4, out);
      break;
    case Conn::AgStit:
      out += "[Ag]";
      render_rec(f.left(), 4, out);
      break;
    case Conn::AgCoStit:
      out += "<Ag>";
      render_rec(f.left(), 4, out);
      break;
    case Conn::Always:
      out += "G ";
      render_rec(f.left(), 4, out);
      break;
    case Conn::Eventually:
      out += "F ";
      render_rec(f.left(), 4, out);
      break;
    case Conn::Historically:
      out += "H ";
      render_rec(f.left(), 4, out);
      break;
    case Conn::Once:
      out += "P ";
      render_rec(f.left(), 4, out);
      break;
    case Conn::XStit:
      out += "[x:{" + group_text(f.group()) + "}]";
      render_rec(f.left(), 4, out);
      break;
    case Conn::XCoStit:
      out += "<x:{" + group_text(f.group()) + "}>";
      render_rec(f.left(), 4, out);
      break;
  }
  if (need_parens) out += ")";
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_rec(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Normal forms
// ---------------------------------------------------------------------------

namespace {

Formula nnf_pos(const Formula& f);
Formula nnf_neg(const Formula& f);

Formula nnf_pos(const Formula& f) {
  switch (f.conn()) {
    case Conn::Atom:
    case Conn::NegAtom: return f;
    case Conn::Not: return nnf_neg(f.left());
    case Conn::And: return Formula::land(nnf_pos(f.left()), nnf_pos(f.right()));
    case Conn::Or: return Formula::lor(nnf_pos(f.left()), nnf_pos(f.right()));
    case Conn::Implies: return Formula::lor(nnf_neg(f.left()), nnf_pos(f.right()));
    case Conn::Box: return Formula::box(nnf_pos(f.left()));
    case Conn::Dia: return Formula::dia(nnf_pos(f.left()));
    case Conn::Stit: return Formula::stit(f.agent(), nnf_pos(f.left()));
    case Conn::CoStit: return Formula::costit(f.agent(), nnf_pos(f.left()));
    case Conn::AgStit: return Formula::ag_stit(nnf_pos(f.left()));
    case Conn::AgCoStit: return Formula::ag_costit(nnf_pos(f.left()));
    case Conn::Always: return Formula::always(nnf_pos(f.left()));
    case Conn::Eventually: return Formula::eventually(nnf_pos(f.left()));
    case Conn::Historically: return Formula::historically(nnf_pos(f.left()));
    case Conn::Once: return Formula::once(nnf_pos(f.left()));
    case Conn::XStit: return Formula::xstit(f.group(), nnf_pos(f.left()));
    case Conn::XCoStit: return Formula::xcostit(f.group(), nnf_pos(f.left()));
  }
  return f;
}

Formula nnf_neg(const Formula& f) {
  switch (f.conn()) {
    case Conn::Atom: return Formula::neg_atom(f.name());
    case Conn::NegAtom: return Formula::atom(f.name());
    case Conn::Not: return nnf_pos(f.left());
    case Conn::And: return Formula::lor(nnf_neg(f.left()), nnf_neg(f.right()));
    case Conn::Or: return Formula::land(nnf_neg(f.left()), nnf_neg(f.right()));
    case Conn::Implies: return Formula::land(nnf_pos(f.left()), nnf_neg(f.right()));
    case Conn::Box: return Formula::dia(nnf_neg(f.left()));
    case Conn::Dia: return Formula::box(nnf_neg(f.left()));
    case Conn::Stit: return Formula::costit(f.agent(), nnf_neg(f.left()));
    case Conn::CoStit: return Formula::stit(f.agent(), nnf_neg(f.left()));
    case Conn::AgStit: return Formula::ag_costit(nnf_neg(f.left()));
    case Conn::AgCoStit: return Formula::ag_stit(nnf_neg(f.left()));
    case Conn::Always: return Formula::eventually(nnf_neg(f.left()));
    case Conn::Eventually: return Formula::always(nnf_neg(f.left()));
    case Conn::Historically: return Formula::once(nnf_neg(f.left()));
    case Conn::Once: return Formula::historically(nnf_neg(f.left()));
    case Conn::XStit: return Formula::xcostit(f.group(), nnf_neg(f.left()));
    case Conn::XCoStit: return Formula::xstit(f.group(), nnf_neg(f.left()));
  }
  return f;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf_pos(f); }

Formula complement(const Formula& f) {
  assert(is_nnf(f));
  return nnf_neg(f);
}

bool is_nnf(const Formula& f) {
  if (!f.valid()) return false;
  switch (f.conn()) {
    case Conn::Not:
    case Conn::Implies: return false;
    case Conn::Atom:
    case Conn::NegAtom: return true;
    case Conn::And:
    case Conn::Or: return is_nnf(f.left()) && is_nnf(f.right());
    default: return is_nnf(f.left());
  }
}

void collect_subformulas(const Formula& f, std::set<Formula>& out) {
  if (!f.valid() || !out.insert(f).second) return;
  switch (f.conn()) {
    case Conn::Atom:
    case Conn::NegAtom: return;
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      collect_subformulas(f.left(), out);
      collect_subformulas(f.right(), out);
      return;
    default:
      collect_subformulas(f.left(), out);
      return;
  }
}

int formula_size(const Formula& f) {
  if (!f.valid()) return 0;
  switch (f.conn()) {
    case Conn::Atom:
    case Conn::NegAtom: return 1;
    case Conn::And:
    case Conn::Or:
    case Conn::Implies: return 1 + formula_size(f.left()) + formula_size(f.right());
    default: return 1 + formula_size(f.left());
  }
}

int modal_depth(const Formula& f) {
  if (!f.valid()) return 0;
  switch (f.conn()) {
    case Conn::Atom:
    case Conn::NegAtom: return 0;
    case Conn::Not: return modal_depth(f.left());
    case Conn::And:
    case Conn::Or:
    case Conn::Implies: return std::max(modal_depth(f.left()), modal_depth(f.right()));
    default: return 1 + modal_depth(f.left());
  }
}

bool is_atemporal(const Formula& f) {
  if (!f.valid()) return true;
  switch (f.conn()) {
    case Conn::Always:
    case Conn::Eventually:
    case Conn::Historically:
    case Conn::Once: return false;
    case Conn::Atom:
    case Conn::NegAtom: return true;
    case Conn::And:
    case Conn::Or:
    case Conn::Implies: return is_atemporal(f.left()) && is_atemporal(f.right());
    default: return is_atemporal(f.left());
  }
}

bool has_xstit(const Formula& f) {
  if (!f.valid()) return false;
  if (f.conn() == Conn::XStit || f.conn() == Conn::XCoStit) return true;
  switch (f.conn()) {
    case Conn::Atom:
    case Conn::NegAtom: return false;
    case Conn::And:
    case Conn::Or:
    case Conn::Implies: return has_xstit(f.left()) || has_xstit(f.right());
    default: return has_xstit(f.left());
  }
}

bool has_agent_ops(const Formula& f) {
  if (!f.valid()) return false;
  if (f.conn() == Conn::AgStit || f.conn() == Conn::AgCoStit) return true;
  switch (f.conn()) {
    case Conn::Atom:
    case Conn::NegAtom: return false;
    case Conn::And:
    case Conn::Or:
    case Conn::Implies: return has_agent_ops(f.left()) || has_agent_ops(f.right());
    default: return has_agent_ops(f.left());
  }
}

int max_agent_index(const Formula& f) {
  if (!f.valid()) return -1;
  int m = -1;
  if (f.conn() == Conn::Stit || f.conn() == Conn::CoStit) m = f.agent();
  if (f.conn() == Conn::XStit || f.conn() == Conn::XCoStit)
    for (AgentId a : f.group()) m = std::max(m, a);
  switch (f.conn()) {
    case Conn::Atom:
    case Conn::NegAtom: return m;
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      return std::max({m, max_agent_index(f.left()), max_agent_index(f.right())});
    default: return std::max(m, max_agent_index(f.left()));
  }
}

// ---------------------------------------------------------------------------
// Closure
// ---------------------------------------------------------------------------

ClosureSet::ClosureSet(const std::vector<Formula>& seeds) {
  std::vector<Formula> work(seeds.begin(), seeds.end());
  while (!work.empty()) {
    Formula f = work.back();
    work.pop_back();
    if (!f.valid() || formulas_.count(f)) continue;
    if (!is_nnf(f)) throw std::invalid_argument("closure_of expects NNF inputs");
    formulas_.insert(f);
    work.push_back(complement(f));
    switch (f.conn()) {
      case Conn::Atom:
      case Conn::NegAtom: break;
      case Conn::And:
      case Conn::Or:
        work.push_back(f.left());
        work.push_back(f.right());
        break;
      default:
        work.push_back(f.left());
        break;
    }
  }
}

std::vector<Formula> ClosureSet::representative_pairs() const {
  std::vector<Formula> reps;
  std::set<Formula> seen;
  for (const Formula& f : formulas_) {
    if (seen.count(f)) continue;
    seen.insert(f);
    seen.insert(complement(f));
    reps.push_back(f);
  }
  return reps;
}

ClosureSet closure_of(const std::vector<Formula>& seeds) { return ClosureSet(seeds); }

}  // namespace stit
