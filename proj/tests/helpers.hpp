#ifndef STIT_TESTS_HELPERS_HPP
#define STIT_TESTS_HELPERS_HPP

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "stit/formula.hpp"
#include "stit/model.hpp"

namespace stit::testing {

struct FormulaGenOptions {
  int max_size = 12;
  int agents = 2;
  int atoms = 2;
  bool temporal = true;
  bool agent_ops = true;   // [Ag]/<Ag>
  bool sugar = true;       // Not/Implies (off = NNF-shaped output)
};

inline std::string gen_atom_name(std::mt19937_64& rng, int atoms) {
  static const char* names[] = {"p", "q", "r", "s"};
  return names[rng() % std::min(atoms, 4)];
}

// Random formula in the parser image: negation on atoms becomes the literal.
inline Formula random_formula(std::mt19937_64& rng, FormulaGenOptions opt) {
  if (opt.max_size <= 1) {
    std::string a = gen_atom_name(rng, opt.atoms);
    return rng() % 2 ? Formula::atom(a) : Formula::neg_atom(a);
  }
  FormulaGenOptions sub = opt;
  sub.max_size = opt.max_size - 1;
  int half = opt.max_size / 2;
  auto binary_parts = [&](Formula& l, Formula& r) {
    FormulaGenOptions lo = opt, ro = opt;
    lo.max_size = std::max(1, half);
    ro.max_size = std::max(1, opt.max_size - 1 - half);
    l = random_formula(rng, lo);
    r = random_formula(rng, ro);
  };
  for (;;) {
    switch (rng() % 12) {
      case 0: {
        if (!opt.sugar) break;
        Formula body = random_formula(rng, sub);
        if (body.conn() == Conn::Atom) return Formula::neg_atom(body.name());
        return Formula::lnot(body);
      }
      case 1: {
        Formula l, r;
        binary_parts(l, r);
        return Formula::land(l, r);
      }
      case 2: {
        Formula l, r;
        binary_parts(l, r);
        return Formula::lor(l, r);
      }
      case 3: {
        if (!opt.sugar) break;
        Formula l, r;
        binary_parts(l, r);
        return Formula::implies(l, r);
      }
      case 4: return Formula::box(random_formula(rng, sub));
      case 5: return Formula::dia(random_formula(rng, sub));
      case 6: return Formula::stit(static_cast<int>(rng() % opt.agents),
                                   random_formula(rng, sub));
      case 7: return Formula::costit(static_cast<int>(rng() % opt.agents),
                                     random_formula(rng, sub));
      case 8:
        if (!opt.agent_ops) break;
        return Formula::ag_stit(random_formula(rng, sub));
      case 9:
        if (!opt.agent_ops) break;
        return Formula::ag_costit(random_formula(rng, sub));
      case 10: {
        if (!opt.temporal) break;
        Formula body = random_formula(rng, sub);
        switch (rng() % 2) {
          case 0: return Formula::always(body);
          default: return Formula::eventually(body);
        }
      }
      case 11: {
        if (!opt.temporal) break;
        Formula body = random_formula(rng, sub);
        switch (rng() % 2) {
          case 0: return Formula::historically(body);
          default: return Formula::once(body);
        }
      }
    }
  }
}

inline LayeredModel random_layered_model(std::mt19937_64& rng, int agents, int max_base = 16,
                                         int max_T = 2) {
  for (;;) {
    GeneratorParams params;
    params.agents = agents;
    params.cells = 1 + static_cast<int>(rng() % 2);
    params.cell_shape.clear();
    for (int i = 0; i < agents; ++i)
      params.cell_shape.push_back(1 + static_cast<int>(rng() % 2));
    params.atoms = 1 + static_cast<int>(rng() % 2);
    params.T = 1 + static_cast<int>(rng() % max_T);
    params.max_worlds = max_base;
    long long total = params.cells;
    for (int d : params.cell_shape) total *= d;
    if (total > max_base) continue;
    return generate_model(params, rng());
  }
}

// Independent frame validator: direct loops, no shared machinery with
// check_frame.
struct OracleVerdicts {
  std::map<std::string, bool> pass;
};

inline bool oracle_equiv(const ExplicitModel& m, const Relation& r) {
  int n = m.world_count();
  for (int a = 0; a < n; ++a)
    if (!r.has(a, a)) return false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (r.has(a, b) && !r.has(b, a)) return false;
      for (int c = 0; c < n; ++c)
        if (r.has(a, b) && r.has(b, c) && !r.has(a, c)) return false;
    }
  return true;
}

inline OracleVerdicts frame_oracle(const ExplicitModel& m, C7Variant c7 = C7Variant::Disjoint) {
  OracleVerdicts v;
  int n = m.world_count();
  v.pass["equiv_box"] = oracle_equiv(m, m.r_box);
  {
    bool ok = true;
    for (int i = 0; i < m.agents; ++i) ok = ok && oracle_equiv(m, m.r_i[i]);
    v.pass["equiv_i"] = ok;
  }
  v.pass["equiv_Ag"] = oracle_equiv(m, m.r_ag);
  {
    bool ok = true;
    for (int i = 0; i < m.agents; ++i)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (m.r_i[i].has(a, b) && !m.r_box.has(a, b)) ok = false;
    v.pass["C1"] = ok;
  }
  {
    // every tuple of mutually settled worlds has a joint choice successor
    bool ok = true;
    std::vector<int> tuple(m.agents, 0);
    for (;;) {
      bool mutual = true;
      for (int i = 0; i < m.agents; ++i)
        for (int k = 0; k < m.agents; ++k)
          if (!m.r_box.has(tuple[i], tuple[k])) mutual = false;
      if (mutual) {
        bool witness = false;
        for (int w = 0; w < n && !witness; ++w) {
          bool all = true;
          for (int i = 0; i < m.agents; ++i)
            if (!m.r_i[i].has(tuple[i], w)) all = false;
          witness = all;
        }
        if (!witness) ok = false;
      }
      int d = m.agents - 1;
      while (d >= 0 && ++tuple[d] == n) tuple[d--] = 0;
      if (d < 0) break;
    }
    v.pass["C2"] = ok;
  }
  {
    bool ok = true;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        bool meet = true;
        for (int i = 0; i < m.agents; ++i)
          if (!m.r_i[i].has(a, b)) meet = false;
        if (meet != m.r_ag.has(a, b)) ok = false;
      }
    v.pass["C3"] = ok;
  }
  {
    bool c4 = true, c5 = true;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          if (m.r_g.has(x, y) && m.r_g.has(x, z) && y != z && !m.r_g.has(y, z) &&
              !m.r_g.has(z, y))
            c4 = false;
          if (m.r_g.has(y, x) && m.r_g.has(z, x) && y != z && !m.r_g.has(y, z) &&
              !m.r_g.has(z, y))
            c5 = false;
        }
    v.pass["C4"] = c4;
    v.pass["C5"] = c5;
  }
  {
    bool ok = true;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (m.r_g.has(x, y) && m.r_box.has(y, z)) {
            bool found = false;
            for (int u = 0; u < n; ++u)
              if (m.r_ag.has(x, u) && m.r_g.has(u, z)) found = true;
            if (!found) ok = false;
          }
    v.pass["C6"] = ok;
  }
  {
    bool ok = true;
    if (c7 == C7Variant::Disjoint) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (m.r_g.has(a, b) && m.r_box.has(a, b)) ok = false;
    } else {
      for (int a = 0; a < n; ++a)
        if (m.r_g.has(a, a)) ok = false;
    }
    v.pass["C7"] = ok;
  }
  {
    bool ok = true;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (m.r_g.has(a, b) && m.r_g.has(b, c) && !m.r_g.has(a, c)) ok = false;
    v.pass["G_transitive"] = ok;
  }
  {
    bool ok = true;
    if (m.serial_mode == SerialMode::Closed) {
      for (int a = 0; a < n; ++a) {
        bool has = false;
        for (int b = 0; b < n; ++b)
          if (m.r_g.has(a, b)) has = true;
        if (!has) ok = false;
      }
    }
    v.pass["G_serial"] = ok;
  }
  {
    bool ok = true;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (m.r_h.has(a, b) != m.r_g.has(b, a)) ok = false;
    v.pass["H_converse"] = ok;
  }
  return v;
}

// Random explicit model with corrupted relations, for validator comparison.
inline ExplicitModel random_corrupted_model(std::mt19937_64& rng, int max_worlds = 6) {
  int n = 2 + static_cast<int>(rng() % (max_worlds - 1));
  int agents = 1 + static_cast<int>(rng() % 2);
  ExplicitModel m;
  m.agents = agents;
  m.serial_mode = rng() % 2 ? SerialMode::OmegaTail : SerialMode::Closed;
  for (int w = 0; w < n; ++w) m.worlds.push_back("v" + std::to_string(w));
  m.r_i.resize(agents);
  // start from a sane base: one settled cell split into singleton choices,
  // a linear temporal order
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m.r_box.add(a, b);
  for (int i = 0; i < agents; ++i)
    for (int a = 0; a < n; ++a) m.r_i[i].add(a, a);
  for (int a = 0; a < n; ++a) m.r_ag.add(a, a);
  m.valuation["p"].insert(0);
  // corrupt
  int mutations = 1 + static_cast<int>(rng() % 6);
  for (int k = 0; k < mutations; ++k) {
    int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
    switch (rng() % 5) {
      case 0: m.r_box.add(a, b); break;
      case 1: m.r_i[rng() % agents].add(a, b); break;
      case 2: m.r_ag.add(a, b); break;
      case 3: m.r_g.add(a, b); break;
      case 4: m.r_h.add(a, b); break;
    }
  }
  return m;
}

}  // namespace stit::testing

#endif
