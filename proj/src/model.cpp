#include "stit/model.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

namespace stit {

// ---------------------------------------------------------------------------
// Relation
// ---------------------------------------------------------------------------

std::vector<int> Relation::successors(int a) const {
  std::vector<int> out;
  for (auto it = edges_.lower_bound({a, 0}); it != edges_.end() && it->first == a; ++it)
    out.push_back(it->second);
  return out;
}

std::vector<int> Relation::predecessors(int b) const {
  std::vector<int> out;
  for (const auto& e : edges_)
    if (e.second == b) out.push_back(e.first);
  return out;
}

bool Relation::is_reflexive(const std::vector<int>& domain, int* witness) const {
  for (int w : domain)
    if (!has(w, w)) {
      if (witness) *witness = w;
      return false;
    }
  return true;
}

bool Relation::is_symmetric(std::pair<int, int>* witness) const {
  for (const auto& e : edges_)
    if (!has(e.second, e.first)) {
      if (witness) *witness = e;
      return false;
    }
  return true;
}

bool Relation::is_transitive(std::pair<int, int>* witness) const {
  for (const auto& e1 : edges_)
    for (int c : successors(e1.second))
      if (!has(e1.first, c)) {
        if (witness) *witness = {e1.first, c};
        return false;
      }
  return true;
}

Relation Relation::total(int n) {
  Relation r;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) r.add(a, b);
  return r;
}

Relation Relation::identity(int n) {
  Relation r;
  for (int a = 0; a < n; ++a) r.add(a, a);
  return r;
}

Relation Relation::intersect(const std::vector<Relation>& rels) {
  Relation out;
  if (rels.empty()) return out;
  for (const auto& e : rels[0].edges()) {
    bool in_all = true;
    for (std::size_t i = 1; i < rels.size() && in_all; ++i) in_all = rels[i].has(e.first, e.second);
    if (in_all) out.add(e.first, e.second);
  }
  return out;
}

Relation Relation::converse(const Relation& r) {
  Relation out;
  for (const auto& e : r.edges()) out.add(e.second, e.first);
  return out;
}

// ---------------------------------------------------------------------------
// Model lookups
// ---------------------------------------------------------------------------

int LayeredModel::world_index(const std::string& name) const {
  auto it = std::find(base_worlds.begin(), base_worlds.end(), name);
  return it == base_worlds.end() ? -1 : static_cast<int>(it - base_worlds.begin());
}

int ExplicitModel::world_index(const std::string& name) const {
  auto it = std::find(worlds.begin(), worlds.end(), name);
  return it == worlds.end() ? -1 : static_cast<int>(it - worlds.begin());
}

// ---------------------------------------------------------------------------
// Satisfaction, explicit models
// ---------------------------------------------------------------------------

namespace {

bool sat_expl(const ExplicitModel& m, int w, const Formula& f);

bool val_at(const ExplicitModel& m, int w, const std::string& atom) {
  auto it = m.valuation.find(atom);
  return it != m.valuation.end() && it->second.count(w) > 0;
}

// Truth at the stationary copies of world u.  The tail repeats the explicit
// settledness/choice structure among copies; temporal operators collapse by
// stationarity, with the past of a copy consisting of earlier copies, u
// itself, and u's explicit past.
bool sat_tail(const ExplicitModel& m, int u, const Formula& f) {
  switch (f.conn()) {
    case Conn::Atom: return val_at(m, u, f.name());
    case Conn::NegAtom: return !val_at(m, u, f.name());
    case Conn::Not: return !sat_tail(m, u, f.left());
    case Conn::And: return sat_tail(m, u, f.left()) && sat_tail(m, u, f.right());
    case Conn::Or: return sat_tail(m, u, f.left()) || sat_tail(m, u, f.right());
    case Conn::Implies: return !sat_tail(m, u, f.left()) || sat_tail(m, u, f.right());
    case Conn::Box: {
      for (int v : m.r_box.successors(u))
        if (!sat_tail(m, v, f.left())) return false;
      return true;
    }
    case Conn::Dia: {
      for (int v : m.r_box.successors(u))
        if (sat_tail(m, v, f.left())) return true;
      return false;
    }
    case Conn::Stit: {
      for (int v : m.r_i[f.agent()].successors(u))
        if (!sat_tail(m, v, f.left())) return false;
      return true;
    }
    case Conn::CoStit: {
      for (int v : m.r_i[f.agent()].successors(u))
        if (sat_tail(m, v, f.left())) return true;
      return false;
    }
    case Conn::AgStit: {
      for (int v : m.r_ag.successors(u))
        if (!sat_tail(m, v, f.left())) return false;
      return true;
    }
    case Conn::AgCoStit: {
      for (int v : m.r_ag.successors(u))
        if (sat_tail(m, v, f.left())) return true;
      return false;
    }
    case Conn::Always:
    case Conn::Eventually:
      return sat_tail(m, u, f.left());
    case Conn::Historically: {
      if (!sat_tail(m, u, f.left())) return false;
      if (!sat_expl(m, u, f.left())) return false;
      for (int v : m.r_h.successors(u))
        if (!sat_expl(m, v, f.left())) return false;
      return true;
    }
    case Conn::Once: {
      if (sat_tail(m, u, f.left())) return true;
      if (sat_expl(m, u, f.left())) return true;
      for (int v : m.r_h.successors(u))
        if (sat_expl(m, v, f.left())) return true;
      return false;
    }
    case Conn::XStit:
    case Conn::XCoStit:
      throw UnsupportedOperator("Xstit operators are not interpreted on Tstit models");
  }
  return false;
}

// Future tail entry points visible from w: the stationary copies of every
// G-maximal world among w and its explicit successors.
std::vector<int> tail_sources(const ExplicitModel& m, int w) {
  std::vector<int> out;
  if (m.serial_mode != SerialMode::OmegaTail) return out;
  if (m.g_maximal(w)) out.push_back(w);
  for (int u : m.r_g.successors(w))
    if (m.g_maximal(u)) out.push_back(u);
  return out;
}

bool sat_expl(const ExplicitModel& m, int w, const Formula& f) {
  switch (f.conn()) {
    case Conn::Atom: return val_at(m, w, f.name());
    case Conn::NegAtom: return !val_at(m, w, f.name());
    case Conn::Not: return !sat_expl(m, w, f.left());
    case Conn::And: return sat_expl(m, w, f.left()) && sat_expl(m, w, f.right());
    case Conn::Or: return sat_expl(m, w, f.left()) || sat_expl(m, w, f.right());
    case Conn::Implies: return !sat_expl(m, w, f.left()) || sat_expl(m, w, f.right());
    case Conn::Box: {
      for (int v : m.r_box.successors(w))
        if (!sat_expl(m, v, f.left())) return false;
      return true;
    }
    case Conn::Dia: {
      for (int v : m.r_box.successors(w))
        if (sat_expl(m, v, f.left())) return true;
      return false;
    }
    case Conn::Stit: {
      if (f.agent() >= m.agents) throw UnsupportedOperator("agent index out of range");
      for (int v : m.r_i[f.agent()].successors(w))
        if (!sat_expl(m, v, f.left())) return false;
      return true;
    }
    case Conn::CoStit: {
      if (f.agent() >= m.agents) throw UnsupportedOperator("agent index out of range");
      for (int v : m.r_i[f.agent()].successors(w))
        if (sat_expl(m, v, f.left())) return true;
      return false;
    }
    case Conn::AgStit: {
      for (int v : m.r_ag.successors(w))
        if (!sat_expl(m, v, f.left())) return false;
      return true;
    }
    case Conn::AgCoStit: {
      for (int v : m.r_ag.successors(w))
        if (sat_expl(m, v, f.left())) return true;
      return false;
    }
    case Conn::Always: {
      for (int v : m.r_g.successors(w))
        if (!sat_expl(m, v, f.left())) return false;
      for (int u : tail_sources(m, w))
        if (!sat_tail(m, u, f.left())) return false;
      return true;
    }
    case Conn::Eventually: {
      for (int v : m.r_g.successors(w))
        if (sat_expl(m, v, f.left())) return true;
      for (int u : tail_sources(m, w))
        if (sat_tail(m, u, f.left())) return true;
      return false;
    }
    case Conn::Historically: {
      for (int v : m.r_h.successors(w))
        if (!sat_expl(m, v, f.left())) return false;
      return true;
    }
    case Conn::Once: {
      for (int v : m.r_h.successors(w))
        if (sat_expl(m, v, f.left())) return true;
      return false;
    }
    case Conn::XStit:
    case Conn::XCoStit:
      throw UnsupportedOperator("Xstit operators are not interpreted on Tstit models");
  }
  return false;
}

}  // namespace

bool satisfies(const ExplicitModel& m, int world, const Formula& f) {
  assert(world >= 0 && world < m.world_count());
  return sat_expl(m, world, f);
}

// ---------------------------------------------------------------------------
// Satisfaction, layered models
// ---------------------------------------------------------------------------

namespace {

bool val_at(const LayeredModel& m, int w, const std::string& atom) {
  auto it = m.valuation.find(atom);
  return it != m.valuation.end() && it->second.count(w) > 0;
}

// Truth of a formula at (w,k) is constant once k exceeds the nesting depth
// of the past operators: the relations at layers >= 1 coincide, futures look
// alike from every late layer, and only the accumulated past keeps growing.
int stabilization_layer(const Formula& f) {
  switch (f.conn()) {
    case Conn::Atom:
    case Conn::NegAtom: return 0;
    case Conn::Not: return stabilization_layer(f.left());
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      return std::max(stabilization_layer(f.left()), stabilization_layer(f.right()));
    case Conn::Box:
    case Conn::Dia:
    case Conn::Stit:
    case Conn::CoStit:
    case Conn::AgStit:
    case Conn::AgCoStit:
      return std::max(1, stabilization_layer(f.left()));
    case Conn::Always:
    case Conn::Eventually:
      return stabilization_layer(f.left());
    case Conn::Historically:
    case Conn::Once:
      return stabilization_layer(f.left()) + 1;
    default:
      return 1;
  }
}

// t_eff extends the explicit horizon far enough that every subformula has
// stabilized at the last evaluated layer; beyond it the layers repeat layer
// m.T structurally, so box_at/choice_at are clamped to it.
bool sat_layered(const LayeredModel& m, int w, int j, int t_eff, const Formula& f) {
  if (j > t_eff) j = t_eff;
  switch (f.conn()) {
    case Conn::Atom: return val_at(m, w, f.name());
    case Conn::NegAtom: return !val_at(m, w, f.name());
    case Conn::Not: return !sat_layered(m, w, j, t_eff, f.left());
    case Conn::And:
      return sat_layered(m, w, j, t_eff, f.left()) && sat_layered(m, w, j, t_eff, f.right());
    case Conn::Or:
      return sat_layered(m, w, j, t_eff, f.left()) || sat_layered(m, w, j, t_eff, f.right());
    case Conn::Implies:
      return !sat_layered(m, w, j, t_eff, f.left()) || sat_layered(m, w, j, t_eff, f.right());
    case Conn::Box: {
      for (int v : m.box_at(j).successors(w))
        if (!sat_layered(m, v, j, t_eff, f.left())) return false;
      return true;
    }
    case Conn::Dia: {
      for (int v : m.box_at(j).successors(w))
        if (sat_layered(m, v, j, t_eff, f.left())) return true;
      return false;
    }
    case Conn::Stit: {
      if (f.agent() >= m.agents) throw UnsupportedOperator("agent index out of range");
      for (int v : m.choice_at(f.agent(), j).successors(w))
        if (!sat_layered(m, v, j, t_eff, f.left())) return false;
      return true;
    }
    case Conn::CoStit: {
      if (f.agent() >= m.agents) throw UnsupportedOperator("agent index out of range");
      for (int v : m.choice_at(f.agent(), j).successors(w))
        if (sat_layered(m, v, j, t_eff, f.left())) return true;
      return false;
    }
    case Conn::AgStit: {
      for (int v : m.coalition_at(j).successors(w))
        if (!sat_layered(m, v, j, t_eff, f.left())) return false;
      return true;
    }
    case Conn::AgCoStit: {
      for (int v : m.coalition_at(j).successors(w))
        if (sat_layered(m, v, j, t_eff, f.left())) return true;
      return false;
    }
    case Conn::Always: {
      if (j == t_eff) return sat_layered(m, w, t_eff, t_eff, f.left());
      for (int k = j + 1; k <= t_eff; ++k)
        if (!sat_layered(m, w, k, t_eff, f.left())) return false;
      return true;
    }
    case Conn::Eventually: {
      if (j == t_eff) return sat_layered(m, w, t_eff, t_eff, f.left());
      for (int k = j + 1; k <= t_eff; ++k)
        if (sat_layered(m, w, k, t_eff, f.left())) return true;
      return false;
    }
    case Conn::Historically: {
      for (int k = 0; k < j; ++k)
        if (!sat_layered(m, w, k, t_eff, f.left())) return false;
      return true;
    }
    case Conn::Once: {
      for (int k = 0; k < j; ++k)
        if (sat_layered(m, w, k, t_eff, f.left())) return true;
      return false;
    }
    case Conn::XStit:
    case Conn::XCoStit:
      throw UnsupportedOperator("Xstit operators are not interpreted on Tstit models");
  }
  return false;
}

}  // namespace

bool satisfies(const LayeredModel& m, int base_world, int layer, const Formula& f) {
  assert(base_world >= 0 && base_world < m.world_count());
  int t_eff = std::max(m.T, std::max(layer, stabilization_layer(f) + 1));
  return sat_layered(m, base_world, layer, t_eff, f);
}

// ---------------------------------------------------------------------------
// Induced explicit model
// ---------------------------------------------------------------------------

ExplicitModel induced_explicit(const LayeredModel& m) {
  ExplicitModel e;
  e.agents = m.agents;
  e.serial_mode = SerialMode::OmegaTail;
  int n = m.world_count();
  auto idx = [n](int w, int j) { return j * n + w; };
  for (int j = 0; j <= m.T; ++j)
    for (int w = 0; w < n; ++w)
      e.worlds.push_back(m.base_worlds[w] + "@" + std::to_string(j));
  e.r_i.resize(m.agents);
  for (int j = 0; j <= m.T; ++j) {
    for (const auto& edge : m.box_at(j).edges()) e.r_box.add(idx(edge.first, j), idx(edge.second, j));
    for (int i = 0; i < m.agents; ++i)
      for (const auto& edge : m.choice_at(i, j).edges())
        e.r_i[i].add(idx(edge.first, j), idx(edge.second, j));
    for (const auto& edge : m.coalition_at(j).edges())
      e.r_ag.add(idx(edge.first, j), idx(edge.second, j));
  }
  for (int w = 0; w < n; ++w)
    for (int j = 0; j <= m.T; ++j)
      for (int k = j + 1; k <= m.T; ++k) {
        e.r_g.add(idx(w, j), idx(w, k));
        e.r_h.add(idx(w, k), idx(w, j));
      }
  for (const auto& [atom, ws] : m.valuation)
    for (int w : ws)
      for (int j = 0; j <= m.T; ++j) e.valuation[atom].insert(idx(w, j));
  return e;
}

// ---------------------------------------------------------------------------
// Frame checking
// ---------------------------------------------------------------------------

namespace {

std::string wname(const ExplicitModel& m, int w) { return m.worlds[w]; }

ConditionResult check_equivalence(const ExplicitModel& m, const Relation& r,
                                  const std::string& tag) {
  ConditionResult res;
  std::vector<int> domain(m.world_count());
  std::iota(domain.begin(), domain.end(), 0);
  int rw;
  std::pair<int, int> pw;
  if (!r.is_reflexive(domain, &rw)) {
    res.pass = false;
    res.witness = tag + " not reflexive at " + wname(m, rw);
  } else if (!r.is_symmetric(&pw)) {
    res.pass = false;
    res.witness = tag + " not symmetric: (" + wname(m, pw.first) + "," + wname(m, pw.second) +
                  ") lacks converse";
  } else if (!r.is_transitive(&pw)) {
    res.pass = false;
    res.witness = tag + " not transitive: missing (" + wname(m, pw.first) + "," +
                  wname(m, pw.second) + ")";
  }
  return res;
}

// Union-find components of the box relation; mutually box-related tuples
// never cross components.
std::vector<std::vector<int>> box_components(const ExplicitModel& m) {
  int n = m.world_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : m.r_box.edges()) parent[find(e.first)] = find(e.second);
  std::map<int, std::vector<int>> groups;
  for (int w = 0; w < n; ++w) groups[find(w)].push_back(w);
  std::vector<std::vector<int>> out;
  for (auto& [root, ws] : groups) out.push_back(std::move(ws));
  return out;
}

ConditionResult check_c2(const ExplicitModel& m, const FrameCheckOptions& opt) {
  ConditionResult res;
  int n = m.agents;
  for (const auto& cell : box_components(m)) {
    double tuples = 1;
    for (int i = 0; i < n; ++i) tuples *= static_cast<double>(cell.size());
    if (tuples > static_cast<double>(opt.c2_tuple_bound)) {
      res.skipped = true;
      res.witness = "cell of size " + std::to_string(cell.size()) + " exceeds tuple bound";
      return res;
    }
    std::vector<std::size_t> pick(n, 0);
    while (true) {
      std::vector<int> tuple(n);
      for (int i = 0; i < n; ++i) tuple[i] = cell[pick[i]];
      bool mutual = true;
      for (int i = 0; i < n && mutual; ++i)
        for (int k = 0; k < n && mutual; ++k)
          if (!m.r_box.has(tuple[i], tuple[k])) mutual = false;
      if (mutual) {
        bool found = false;
        for (int w = 0; w < m.world_count() && !found; ++w) {
          bool in_all = true;
          for (int i = 0; i < n && in_all; ++i) in_all = m.r_i[i].has(tuple[i], w);
          found = in_all;
        }
        if (!found) {
          res.pass = false;
          std::string t;
          for (int i = 0; i < n; ++i) t += (i ? "," : "") + wname(m, tuple[i]);
          res.witness = "tuple (" + t + ") has empty choice intersection";
          return res;
        }
      }
      int d = n - 1;
      while (d >= 0 && ++pick[d] == cell.size()) pick[d--] = 0;
      if (d < 0) break;
    }
  }
  return res;
}

}  // namespace

const ConditionResult* FrameReport::find(const std::string& key) const {
  for (const auto& [k, v] : conditions)
    if (k == key) return &v;
  return nullptr;
}

bool FrameReport::all_pass() const {
  for (const auto& [k, v] : conditions)
    if (!v.pass && !v.skipped) return false;
  return true;
}

std::string FrameReport::summary() const {
  std::ostringstream os;
  for (const auto& [k, v] : conditions) {
    os << k << ": " << (v.skipped ? "skipped" : v.pass ? "pass" : "FAIL");
    if (!v.witness.empty()) os << " (" << v.witness << ")";
    os << "\n";
  }
  return os.str();
}

FrameReport check_frame(const ExplicitModel& m, const FrameCheckOptions& opt) {
  FrameReport report;
  report.conditions.emplace_back("equiv_box", check_equivalence(m, m.r_box, "R_box"));
  {
    ConditionResult res;
    for (int i = 0; i < m.agents && res.pass; ++i) {
      res = check_equivalence(m, m.r_i[i], "R_" + std::to_string(i));
    }
    report.conditions.emplace_back("equiv_i", res);
  }
  report.conditions.emplace_back("equiv_Ag", check_equivalence(m, m.r_ag, "R_Ag"));

  {  // C1: every choice relation refines settledness
    ConditionResult res;
    for (int i = 0; i < m.agents && res.pass; ++i)
      for (const auto& e : m.r_i[i].edges())
        if (!m.r_box.has(e.first, e.second)) {
          res.pass = false;
          res.witness = "R_" + std::to_string(i) + " edge (" + wname(m, e.first) + "," +
                        wname(m, e.second) + ") not in R_box";
          break;
        }
    report.conditions.emplace_back("C1", res);
  }
  report.conditions.emplace_back("C2", check_c2(m, opt));
  {  // C3: R_Ag equals the intersection of the choice relations
    ConditionResult res;
    std::vector<Relation> rels(m.r_i.begin(), m.r_i.end());
    Relation meet = Relation::intersect(rels);
    if (!(meet == m.r_ag)) {
      res.pass = false;
      for (const auto& e : meet.edges())
        if (!m.r_ag.has(e.first, e.second)) {
          res.witness = "(" + wname(m, e.first) + "," + wname(m, e.second) +
                        ") in intersection but not R_Ag";
          break;
        }
      if (res.witness.empty())
        for (const auto& e : m.r_ag.edges())
          if (!meet.has(e.first, e.second)) {
            res.witness = "(" + wname(m, e.first) + "," + wname(m, e.second) +
                          ") in R_Ag but not intersection";
            break;
          }
    }
    report.conditions.emplace_back("C3", res);
  }
  {  // C4 / C5: forward and backward temporal connectedness
    ConditionResult c4, c5;
    for (const auto& e1 : m.r_g.edges()) {
      for (int z : m.r_g.successors(e1.first)) {
        int y = e1.second;
        if (y == z || m.r_g.has(y, z) || m.r_g.has(z, y)) continue;
        c4.pass = false;
        c4.witness = "successors " + wname(m, y) + ", " + wname(m, z) + " of " +
                     wname(m, e1.first) + " incomparable";
        break;
      }
      if (!c4.pass) break;
    }
    for (const auto& e1 : m.r_g.edges()) {
      for (int z : m.r_g.predecessors(e1.second)) {
        int y = e1.first;
        if (y == z || m.r_g.has(y, z) || m.r_g.has(z, y)) continue;
        c5.pass = false;
        c5.witness = "predecessors " + wname(m, y) + ", " + wname(m, z) + " of " +
                     wname(m, e1.second) + " incomparable";
        break;
      }
      if (!c5.pass) break;
    }
    report.conditions.emplace_back("C4", c4);
    report.conditions.emplace_back("C5", c5);
  }
  {  // C6: R_G ; R_box contained in R_Ag ; R_G
    ConditionResult res;
    for (const auto& e : m.r_g.edges()) {
      for (int z : m.r_box.successors(e.second)) {
        bool found = false;
        for (int u : m.r_ag.successors(e.first))
          if (m.r_g.has(u, z)) {
            found = true;
            break;
          }
        if (!found) {
          res.pass = false;
          res.witness = "no R_Ag;R_G path from " + wname(m, e.first) + " to " + wname(m, z);
          break;
        }
      }
      if (!res.pass) break;
    }
    report.conditions.emplace_back("C6", res);
  }
  {  // C7
    ConditionResult res;
    if (opt.c7 == C7Variant::Disjoint) {
      for (const auto& e : m.r_g.edges())
        if (m.r_box.has(e.first, e.second)) {
          res.pass = false;
          res.witness = "(" + wname(m, e.first) + "," + wname(m, e.second) +
                        ") in both R_box and R_G";
          break;
        }
    } else {
      for (int w = 0; w < m.world_count(); ++w)
        if (m.r_g.has(w, w)) {
          res.pass = false;
          res.witness = "R_G reflexive at " + wname(m, w);
          break;
        }
    }
    report.conditions.emplace_back("C7", res);
  }
  {  // temporal structure
    ConditionResult trans;
    std::pair<int, int> pw;
    if (!m.r_g.is_transitive(&pw)) {
      trans.pass = false;
      trans.witness = "missing (" + wname(m, pw.first) + "," + wname(m, pw.second) + ")";
    }
    report.conditions.emplace_back("G_transitive", trans);

    ConditionResult serial;
    if (m.serial_mode == SerialMode::OmegaTail) {
      // stationary tail supplies successors for G-maximal worlds
    } else {
      for (int w = 0; w < m.world_count(); ++w)
        if (m.r_g.successors(w).empty()) {
          serial.pass = false;
          serial.witness = wname(m, w) + " has no temporal successor";
          break;
        }
    }
    report.conditions.emplace_back("G_serial", serial);

    ConditionResult conv;
    if (!(m.r_h == Relation::converse(m.r_g))) {
      conv.pass = false;
      for (const auto& e : m.r_g.edges())
        if (!m.r_h.has(e.second, e.first)) {
          conv.witness =
              "R_G edge (" + wname(m, e.first) + "," + wname(m, e.second) + ") lacks R_H converse";
          break;
        }
      if (conv.witness.empty())
        for (const auto& e : m.r_h.edges())
          if (!m.r_g.has(e.second, e.first)) {
            conv.witness = "R_H edge (" + wname(m, e.first) + "," + wname(m, e.second) +
                           ") lacks R_G converse";
            break;
          }
    }
    report.conditions.emplace_back("H_converse", conv);
  }
  return report;
}

FrameReport check_frame(const LayeredModel& m, const FrameCheckOptions& opt) {
  return check_frame(induced_explicit(m), opt);
}

// ---------------------------------------------------------------------------
// Model generator
// ---------------------------------------------------------------------------

namespace {

std::string atom_name(int k) {
  static const char* names[] = {"p", "q", "r", "s", "t", "u", "v"};
  if (k < 7) return names[k];
  return "a" + std::to_string(k - 7);
}

}  // namespace

LayeredModel generate_model(const GeneratorParams& params, std::uint64_t seed) {
  if (params.agents < 1 || params.cells < 1 || params.T < 1)
    throw std::invalid_argument("generate_model: agents, cells and T must be >= 1");
  std::vector<int> shape = params.cell_shape;
  if (shape.empty()) shape.assign(params.agents, 2);
  if (static_cast<int>(shape.size()) == 1 && params.agents > 1)
    shape.assign(params.agents, shape[0]);
  if (static_cast<int>(shape.size()) != params.agents)
    throw std::invalid_argument("generate_model: cell_shape must have one entry per agent");
  long long per_cell = 1;
  for (int d : shape) {
    if (d < 1) throw std::invalid_argument("generate_model: cell_shape entries must be >= 1");
    per_cell *= d;
  }
  long long total = per_cell * params.cells;
  if (total > params.max_worlds)
    throw std::invalid_argument("generate_model: " + std::to_string(total) +
                                " worlds exceed the bound of " +
                                std::to_string(params.max_worlds));

  LayeredModel m;
  m.agents = params.agents;
  m.T = params.T;
  m.r_i_0.resize(params.agents);

  // Worlds are grid points; agent i's choice classes fix coordinate i, so
  // every combination of choices intersects in exactly one point.
  std::vector<std::vector<int>> coords;  // per world: cell id + grid coords
  for (int c = 0; c < params.cells; ++c) {
    std::vector<int> point(params.agents, 0);
    while (true) {
      std::vector<int> entry;
      entry.push_back(c);
      entry.insert(entry.end(), point.begin(), point.end());
      coords.push_back(entry);
      m.base_worlds.push_back("w" + std::to_string(coords.size() - 1));
      int d = params.agents - 1;
      while (d >= 0 && ++point[d] == shape[d]) point[d--] = 0;
      if (d < 0) break;
    }
  }

  int n = m.world_count();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (coords[a][0] != coords[b][0]) continue;
      m.r_box_0.add(a, b);
      for (int i = 0; i < params.agents; ++i)
        if (coords[a][i + 1] == coords[b][i + 1]) m.r_i_0[i].add(a, b);
    }
  m.r_fut = Relation::intersect(m.r_i_0);
  m.r_ag_0 = m.r_fut;

  std::mt19937_64 rng(seed);
  for (int k = 0; k < params.atoms; ++k) {
    std::set<int>& ws = m.valuation[atom_name(k)];
    for (int w = 0; w < n; ++w)
      if (rng() & 1) ws.insert(w);
  }
  return m;
}

}  // namespace stit
