#include "stit/canonical.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

namespace stit {

// ---------------------------------------------------------------------------
// Structured choice-model family
// ---------------------------------------------------------------------------

namespace {

// Restricted growth strings enumerate set partitions of {0..n-1}.
void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> a(n, 0);
  while (true) {
    visit(a);
    int i = n - 1;
    for (; i > 0; --i) {
      int mx = 0;
      for (int j = 0; j < i; ++j) mx = std::max(mx, a[j]);
      if (a[i] <= mx) break;
    }
    if (i == 0) return;
    ++a[i];
    for (int j = i + 1; j < n; ++j) a[j] = 0;
  }
}

std::vector<std::vector<int>> partition_classes(const std::vector<int>& rgs,
                                                const std::vector<int>& members) {
  int k = 0;
  for (int c : rgs) k = std::max(k, c + 1);
  std::vector<std::vector<int>> classes(k);
  for (std::size_t i = 0; i < rgs.size(); ++i) classes[rgs[i]].push_back(members[i]);
  return classes;
}

// Every combination of one choice class per agent must intersect (the grid
// property behind the independence condition).
bool c2_valid(const std::vector<std::vector<std::vector<int>>>& agent_classes) {
  std::vector<std::size_t> pick(agent_classes.size(), 0);
  while (true) {
    bool nonempty = false;
    const auto& first = agent_classes[0][pick[0]];
    for (int w : first) {
      bool in_all = true;
      for (std::size_t i = 1; i < agent_classes.size() && in_all; ++i) {
        const auto& cls = agent_classes[i][pick[i]];
        in_all = std::find(cls.begin(), cls.end(), w) != cls.end();
      }
      if (in_all) {
        nonempty = true;
        break;
      }
    }
    if (!nonempty) return false;
    int d = static_cast<int>(pick.size()) - 1;
    while (d >= 0 && ++pick[d] == agent_classes[d].size()) pick[d--] = 0;
    if (d < 0) return true;
  }
}

struct CellStructure {
  std::vector<std::vector<std::vector<int>>> agent_classes;  // [agent][class][world]
};

// All C2-valid per-agent refinements of one box cell.
std::vector<CellStructure> cell_structures(const std::vector<int>& cell, int agents) {
  std::vector<std::vector<std::vector<std::vector<int>>>> per_agent(agents);
  std::vector<std::vector<std::vector<int>>> options;
  for_each_partition(static_cast<int>(cell.size()), [&](const std::vector<int>& rgs) {
    options.push_back(partition_classes(rgs, cell));
  });
  std::vector<CellStructure> out;
  std::vector<std::size_t> pick(agents, 0);
  while (true) {
    CellStructure cs;
    for (int i = 0; i < agents; ++i) cs.agent_classes.push_back(options[pick[i]]);
    if (c2_valid(cs.agent_classes)) out.push_back(std::move(cs));
    int d = agents - 1;
    while (d >= 0 && ++pick[d] == options.size()) pick[d--] = 0;
    if (d < 0) break;
  }
  return out;
}

// Enumerates atemporal choice models with k worlds; visit returns true to
// stop early.
bool for_each_choice_model(int k, int agents, const std::vector<std::string>& atoms,
                           const std::function<bool(const ExplicitModel&)>& visit) {
  bool stop = false;
  for_each_partition(k, [&](const std::vector<int>& box_rgs) {
    if (stop) return;
    std::vector<int> all(k);
    for (int i = 0; i < k; ++i) all[i] = i;
    auto cells = partition_classes(box_rgs, all);
    std::vector<std::vector<CellStructure>> options;
    for (const auto& cell : cells) options.push_back(cell_structures(cell, agents));

    std::vector<std::size_t> pick(cells.size(), 0);
    while (!stop) {
      ExplicitModel m;
      m.agents = agents;
      m.serial_mode = SerialMode::Closed;
      for (int w = 0; w < k; ++w) m.worlds.push_back("b" + std::to_string(w));
      m.r_i.resize(agents);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        for (int a : cells[c])
          for (int b : cells[c]) m.r_box.add(a, b);
        const CellStructure& cs = options[c][pick[c]];
        for (int i = 0; i < agents; ++i)
          for (const auto& cls : cs.agent_classes[i])
            for (int a : cls)
              for (int b : cls) m.r_i[i].add(a, b);
      }
      m.r_ag = Relation::intersect(m.r_i);

      // all valuations over the given atoms
      long long combos = 1;
      for (std::size_t i = 0; i < atoms.size(); ++i) combos *= (1LL << k);
      for (long long v = 0; v < combos && !stop; ++v) {
        long long rest = v;
        m.valuation.clear();
        for (const auto& atom : atoms) {
          long long mask = rest & ((1LL << k) - 1);
          rest >>= k;
          auto& ws = m.valuation[atom];
          ws.clear();
          for (int w = 0; w < k; ++w)
            if (mask & (1LL << w)) ws.insert(w);
        }
        if (visit(m)) stop = true;
      }

      int d = static_cast<int>(pick.size()) - 1;
      while (d >= 0 && ++pick[d] == options[d].size()) pick[d--] = 0;
      if (d < 0) break;
    }
  });
  return stop;
}

std::vector<std::string> closure_atoms(const ClosureSet& closure) {
  std::set<std::string> names;
  for (const Formula& f : closure.formulas())
    if (f.conn() == Conn::Atom || f.conn() == Conn::NegAtom) names.insert(f.name());
  return {names.begin(), names.end()};
}

}  // namespace

// ---------------------------------------------------------------------------
// Consistency oracle
// ---------------------------------------------------------------------------

ConsistencyOracle::ConsistencyOracle(int agents, ClosureSet closure, OracleConfig cfg)
    : agents_(agents), closure_(std::move(closure)), cfg_(cfg) {}

void ConsistencyOracle::scan() {
  if (scanned_) return;
  scanned_ = true;
  std::vector<std::string> atoms = closure_atoms(closure_);
  std::vector<Formula> fs(closure_.formulas().begin(), closure_.formulas().end());
  for (int k = 1; k <= cfg_.max_worlds; ++k) {
    for_each_choice_model(k, agents_, atoms, [&](const ExplicitModel& m) {
      for (int w = 0; w < m.world_count(); ++w) {
        std::set<Formula> theory;
        for (const Formula& f : fs)
          if (satisfies(m, w, f)) theory.insert(f);
        theories_.insert(std::move(theory));
      }
      return false;
    });
  }
}

const std::set<std::set<Formula>>& ConsistencyOracle::realized_theories() {
  scan();
  return theories_;
}

bool ConsistencyOracle::brute_satisfiable(const std::set<Formula>& subset) {
  scan();
  for (const auto& theory : theories_) {
    bool contains = true;
    for (const Formula& f : subset)
      if (!theory.count(f)) {
        contains = false;
        break;
      }
    if (contains) return true;
  }
  return false;
}

std::optional<bool> ConsistencyOracle::prover_satisfiable(const std::set<Formula>& subset) {
  if (subset.empty()) return true;
  Formula conj;
  for (const Formula& f : subset) conj = conj.valid() ? Formula::land(conj, f) : f;
  Formula negated = complement(to_nnf(conj));
  bool ldm_ok = is_atemporal(conj) && !has_agent_ops(conj) && !has_xstit(conj);
  ProverResult r =
      prove(negated, agents_, ldm_ok ? Logic::Ldm : Logic::Tstit, cfg_.prover_budget);
  if (r.kind == VerdictKind::Proved) return false;   // negation valid: inconsistent
  if (r.kind == VerdictKind::Refuted) return true;   // countermodel satisfies the set
  return std::nullopt;
}

OracleVerdict ConsistencyOracle::check(const std::set<Formula>& subset) {
  // the model search decides positively; the prover covers the rest
  if (brute_satisfiable(subset)) return OracleVerdict::Consistent;
  std::optional<bool> pv = prover_satisfiable(subset);
  if (pv) return *pv ? OracleVerdict::Consistent : OracleVerdict::Inconsistent;
  return OracleVerdict::Unknown;
}

void ConsistencyOracle::check_agreement(const std::set<Formula>& subset) {
  if (brute_satisfiable(subset)) {
    std::optional<bool> pv = prover_satisfiable(subset);
    if (pv && !*pv) {
      std::string set_text;
      for (const Formula& f : subset) set_text += render(f) + "; ";
      throw OracleDisagreement("oracle disagreement on {" + set_text + "}");
    }
  }
}

// ---------------------------------------------------------------------------
// MCS enumeration
// ---------------------------------------------------------------------------

namespace {

bool boolean_coherent(const std::set<Formula>& members) {
  for (const Formula& f : members) {
    if (f.conn() == Conn::And) {
      if (!members.count(f.left()) || !members.count(f.right())) return false;
    } else if (f.conn() == Conn::Or) {
      if (!members.count(f.left()) && !members.count(f.right())) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<FiniteMCS> enumerate_mcs(const ClosureSet& closure, int agents,
                                     ConsistencyOracle& oracle) {
  (void)agents;
  if (closure.size() == 0) throw std::invalid_argument("enumerate_mcs: empty closure");
  std::vector<Formula> reps = closure.representative_pairs();
  std::vector<FiniteMCS> out;

  std::vector<bool> pick(reps.size(), false);
  while (true) {
    std::set<Formula> members;
    for (std::size_t i = 0; i < reps.size(); ++i)
      members.insert(pick[i] ? complement(reps[i]) : reps[i]);
    if (boolean_coherent(members)) {
      switch (oracle.check(members)) {
        case OracleVerdict::Consistent:
          out.push_back({std::move(members), false});
          break;
        case OracleVerdict::Unknown:
          out.push_back({std::move(members), true});
          break;
        case OracleVerdict::Inconsistent:
          break;
      }
    }
    std::size_t d = 0;
    while (d < pick.size() && pick[d]) pick[d++] = false;
    if (d == pick.size()) break;
    pick[d] = true;
  }
  std::sort(out.begin(), out.end(),
            [](const FiniteMCS& a, const FiniteMCS& b) { return a.members < b.members; });
  return out;
}

// ---------------------------------------------------------------------------
// Pre-canonical and canonical models
// ---------------------------------------------------------------------------

namespace {

std::set<Formula> modal_slice(const FiniteMCS& w, int agent) {
  std::set<Formula> out;
  for (const Formula& f : w.members) {
    if (agent < 0 && (f.conn() == Conn::Box || f.conn() == Conn::Dia)) out.insert(f);
    if (agent >= 0 && (f.conn() == Conn::Stit || f.conn() == Conn::CoStit) &&
        f.agent() == agent)
      out.insert(f);
  }
  return out;
}

}  // namespace

PreCanonicalModel build_pre_canonical(const std::vector<FiniteMCS>& mcss, int agents) {
  if (mcss.empty()) throw std::invalid_argument("build_pre_canonical: no worlds");
  PreCanonicalModel pre;
  pre.worlds = mcss;
  pre.r_pres_i.resize(agents);
  int n = static_cast<int>(mcss.size());

  std::vector<std::set<Formula>> box_slice(n);
  std::vector<std::vector<std::set<Formula>>> choice_slice(n);
  for (int w = 0; w < n; ++w) {
    box_slice[w] = modal_slice(mcss[w], -1);
    for (int i = 0; i < agents; ++i) choice_slice[w].push_back(modal_slice(mcss[w], i));
  }
  for (int w = 0; w < n; ++w)
    for (int u = 0; u < n; ++u) {
      if (box_slice[w] != box_slice[u]) continue;
      pre.r_pres_box.add(w, u);
      for (int i = 0; i < agents; ++i)
        if (choice_slice[w][i] == choice_slice[u][i]) pre.r_pres_i[i].add(w, u);
    }
  pre.r_fut = Relation::intersect(pre.r_pres_i);

  // The defining membership condition must come out as a consequence: a box
  // formula in w forces its body in every related world.  Closures too poor
  // to sustain it are flagged.
  for (int w = 0; w < n; ++w)
    for (int u : pre.r_pres_box.successors(w))
      for (const Formula& f : mcss[w].members)
        if (f.conn() == Conn::Box && !mcss[u].members.count(f.left()))
          pre.warnings.push_back("degenerate closure: box membership condition fails between m" +
                                 std::to_string(w) + " and m" + std::to_string(u) + " for " +
                                 render(f));
  for (int w = 0; w < n; ++w)
    for (int i = 0; i < agents; ++i)
      for (int u : pre.r_pres_i[i].successors(w))
        for (const Formula& f : mcss[w].members)
          if (f.conn() == Conn::Stit && f.agent() == i && !mcss[u].members.count(f.left()))
            pre.warnings.push_back(
                "degenerate closure: choice membership condition fails between m" +
                std::to_string(w) + " and m" + std::to_string(u) + " for " + render(f));
  return pre;
}

LayeredModel build_canonical(const PreCanonicalModel& pre, int T) {
  if (T < 1) throw std::invalid_argument("build_canonical: T must be >= 1");
  LayeredModel m;
  m.agents = static_cast<int>(pre.r_pres_i.size());
  m.T = T;
  for (std::size_t w = 0; w < pre.worlds.size(); ++w)
    m.base_worlds.push_back("m" + std::to_string(w));
  m.r_box_0 = pre.r_pres_box;
  m.r_i_0 = pre.r_pres_i;
  m.r_fut = pre.r_fut;
  m.r_ag_0 = pre.r_fut;  // intersection of the choice relations at layer 0
  for (std::size_t w = 0; w < pre.worlds.size(); ++w)
    for (const Formula& f : pre.worlds[w].members)
      if (f.conn() == Conn::Atom) m.valuation[f.name()].insert(static_cast<int>(w));
  return m;
}

// ---------------------------------------------------------------------------
// Truth lemma
// ---------------------------------------------------------------------------

namespace {

bool closure_admissible(const Formula& f) {
  switch (f.conn()) {
    case Conn::Atom:
    case Conn::NegAtom: return true;
    case Conn::And:
    case Conn::Or: return closure_admissible(f.left()) && closure_admissible(f.right());
    case Conn::Box:
    case Conn::Dia:
    case Conn::Stit:
    case Conn::CoStit: return closure_admissible(f.left());
    default: return false;
  }
}

}  // namespace

TruthLemmaReport truth_lemma_check(const Formula& phi0, int agents, int T,
                                   OracleConfig oracle_cfg) {
  Formula nnf = to_nnf(phi0);
  if (!closure_admissible(nnf))
    throw std::invalid_argument(
        "truth_lemma_check: formula must use boolean, box/diamond and choice operators only");
  ClosureSet closure = closure_of({nnf});
  ConsistencyOracle oracle(agents, closure, oracle_cfg);

  TruthLemmaReport report;
  std::vector<FiniteMCS> mcss = enumerate_mcs(closure, agents, oracle);
  report.mcs_count = static_cast<int>(mcss.size());
  for (const auto& w : mcss)
    if (w.possible) ++report.possible_count;

  PreCanonicalModel pre = build_pre_canonical(mcss, agents);
  report.warnings = pre.warnings;
  LayeredModel canon = build_canonical(pre, T);
  report.frame = check_frame(canon);

  for (std::size_t w = 0; w < mcss.size(); ++w) {
    if (mcss[w].possible) continue;
    for (const Formula& f : closure.formulas()) {
      bool truth = satisfies(canon, static_cast<int>(w), 0, f);
      bool member = mcss[w].members.count(f) > 0;
      if (truth != member)
        report.mismatches.push_back("m" + std::to_string(w) + ": " + render(f) + " truth=" +
                                    (truth ? "true" : "false") + " membership=" +
                                    (member ? "in" : "out"));
    }
    // existence property for the diamonds of the world
    for (const Formula& f : mcss[w].members) {
      if (f.conn() == Conn::Dia) {
        bool found = false;
        for (int u : pre.r_pres_box.successors(static_cast<int>(w)))
          if (mcss[u].members.count(f.left())) found = true;
        if (!found)
          report.existence_failures.push_back("m" + std::to_string(w) + ": no box successor for " +
                                              render(f));
      }
      if (f.conn() == Conn::CoStit) {
        bool found = false;
        for (int u : pre.r_pres_i[f.agent()].successors(static_cast<int>(w)))
          if (mcss[u].members.count(f.left())) found = true;
        if (!found)
          report.existence_failures.push_back("m" + std::to_string(w) +
                                              ": no choice successor for " + render(f));
      }
    }
  }
  return report;
}

}  // namespace stit
