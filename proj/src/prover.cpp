#include "stit/prover.hpp"

#include <algorithm>
#include <cassert>

namespace stit {

// ---------------------------------------------------------------------------
// Candidate generation
// ---------------------------------------------------------------------------

namespace {

bool carries_eventually(const LabelledSequent& s, const std::string& l) {
  for (const auto& [label, f] : s.fmls)
    if (label == l && f.conn() == Conn::Eventually) return true;
  return false;
}

bool has_rg_successor(const LabelledSequent& s, const std::string& l) {
  for (const auto& a : s.rels)
    if (a.kind == RelKind::RG && a.from == l) return true;
  return false;
}

// serG materialises one stationary future world.  It fires on ordinary
// labels without a temporal successor that either carry an F-formula or sit
// in the future of a label carrying one; everything else is covered by the
// omega tail of the extracted model.
bool sergeable(const LabelledSequent& s, const std::set<std::string>& stationary,
               const std::string& l) {
  if (stationary.count(l)) return false;
  if (has_rg_successor(s, l)) return false;
  if (carries_eventually(s, l)) return true;
  for (const auto& a : s.rels)
    if (a.kind == RelKind::RG && a.to == l && carries_eventually(s, a.from)) return true;
  return false;
}

void add(std::vector<RuleApp>& out, RuleApp app) { out.push_back(std::move(app)); }

std::vector<RuleApp> collect_candidates(const LabelledSequent& s,
                                        const std::set<std::string>& stationary, int agents,
                                        Logic logic, const ProverOptions& opts) {
  std::vector<RuleApp> out;
  const std::set<std::string> labels = s.labels();

  auto allowed = [&](RuleName r) { return rule_allowed(r, logic); };

  // logical and modal rules, driven by the labelled formulas
  for (const auto& [l, f] : s.fmls) {
    switch (f.conn()) {
      case Conn::And: {
        RuleApp a;
        a.rule = RuleName::And;
        a.label = l;
        a.formula = f;
        add(out, a);
        break;
      }
      case Conn::Or: {
        RuleApp a;
        a.rule = RuleName::Or;
        a.label = l;
        a.formula = f;
        add(out, a);
        break;
      }
      case Conn::Box:
      case Conn::Stit:
      case Conn::AgStit:
      case Conn::Always:
      case Conn::Historically: {
        RuleName r = f.conn() == Conn::Box      ? RuleName::Box
                     : f.conn() == Conn::Stit   ? RuleName::Stit
                     : f.conn() == Conn::AgStit ? RuleName::AgStit
                     : f.conn() == Conn::Always ? RuleName::G
                                                : RuleName::H;
        if (!allowed(r)) break;
        RuleApp a;
        a.rule = r;
        a.label = l;
        a.formula = f;
        add(out, a);
        break;
      }
      case Conn::Dia:
      case Conn::CoStit:
      case Conn::AgCoStit:
      case Conn::Eventually:
      case Conn::Once: {
        RuleName r = f.conn() == Conn::Dia        ? RuleName::Dia
                     : f.conn() == Conn::CoStit   ? RuleName::CoStit
                     : f.conn() == Conn::AgCoStit ? RuleName::AgCoStit
                     : f.conn() == Conn::Eventually ? RuleName::F
                                                    : RuleName::P;
        if (!allowed(r)) break;
        for (const auto& atom : s.rels) {
          if (atom.from != l) continue;
          RelAtom expected = operator_atom(f, l, atom.to);
          if (!(atom == expected)) continue;
          RuleApp a;
          a.rule = r;
          a.label = l;
          a.formula = f;
          a.target = atom.to;
          add(out, a);
        }
        // stationary labels: the copies of l are futures/pasts of l itself
        if ((r == RuleName::F || r == RuleName::P) && stationary.count(l)) {
          RuleApp a;
          a.rule = r;
          a.label = l;
          a.formula = f;
          a.target = l;
          add(out, a);
        }
        break;
      }
      default:
        break;
    }
  }

  // reflexivity and seriality, per label
  for (const auto& l : labels) {
    {
      RuleApp a;
      a.rule = RuleName::ReflBox;
      a.label = l;
      add(out, a);
    }
    if (allowed(RuleName::ReflI))
      for (int i = 0; i < agents; ++i) {
        RuleApp a;
        a.rule = RuleName::ReflI;
        a.label = l;
        a.agent = i;
        add(out, a);
      }
    if (allowed(RuleName::ReflAg)) {
      RuleApp a;
      a.rule = RuleName::ReflAg;
      a.label = l;
      add(out, a);
    }
    {
      RuleApp a;
      a.rule = RuleName::RefEq;
      a.label = l;
      add(out, a);
    }
    if (allowed(RuleName::SerG) && sergeable(s, stationary, l)) {
      RuleApp a;
      a.rule = RuleName::SerG;
      a.label = l;
      add(out, a);
    }
  }

  // relational closure rules, driven by the atoms
  for (const auto& atom : s.rels) {
    switch (atom.kind) {
      case RelKind::Rbox: {
        for (const auto& other : s.rels)
          if (other.kind == RelKind::Rbox && other.from == atom.from) {
            RuleApp a;
            a.rule = RuleName::EuclBox;
            a.x = atom.from;
            a.y = atom.to;
            a.z = other.to;
            add(out, a);
          }
        break;
      }
      case RelKind::Ri: {
        for (const auto& other : s.rels)
          if (other.kind == RelKind::Ri && other.agent == atom.agent &&
              other.from == atom.from) {
            RuleApp a;
            a.rule = RuleName::EuclI;
            a.agent = atom.agent;
            a.x = atom.from;
            a.y = atom.to;
            a.z = other.to;
            add(out, a);
          }
        {
          RuleApp a;
          a.rule = RuleName::BrI;
          a.agent = atom.agent;
          a.x = atom.from;
          a.y = atom.to;
          add(out, a);
        }
        break;
      }
      case RelKind::RAg: {
        if (!allowed(RuleName::EuclAg)) break;
        for (const auto& other : s.rels)
          if (other.kind == RelKind::RAg && other.from == atom.from) {
            RuleApp a;
            a.rule = RuleName::EuclAg;
            a.x = atom.from;
            a.y = atom.to;
            a.z = other.to;
            add(out, a);
          }
        for (int i = 0; i < agents; ++i) {
          RuleApp a;
          a.rule = RuleName::Agd;
          a.agent = i;
          a.x = atom.from;
          a.y = atom.to;
          add(out, a);
        }
        break;
      }
      case RelKind::RG: {
        if (!allowed(RuleName::TransG)) break;
        for (const auto& other : s.rels)
          if (other.kind == RelKind::RG && other.from == atom.to) {
            RuleApp a;
            a.rule = RuleName::TransG;
            a.x = atom.from;
            a.y = atom.to;
            a.z = other.to;
            add(out, a);
          }
        {
          RuleApp a;
          a.rule = RuleName::ConvG;
          a.x = atom.from;
          a.y = atom.to;
          add(out, a);
        }
        for (const auto& other : s.rels)
          if (other.kind == RelKind::RG && other.from == atom.from && atom.to < other.to) {
            RuleApp a;
            a.rule = RuleName::ConnG;
            a.x = atom.from;
            a.y = atom.to;
            a.z = other.to;
            add(out, a);
          }
        // irrG needs the matching box atom
        if (s.has(rbox(atom.from, atom.to))) {
          RuleApp a;
          a.rule = RuleName::IrrG;
          a.x = atom.from;
          a.y = atom.to;
          add(out, a);
        }
        // ncuh: along RG x y then Rbox y z
        for (const auto& other : s.rels)
          if (other.kind == RelKind::Rbox && other.from == atom.to) {
            RuleApp a;
            a.rule = RuleName::Ncuh;
            a.x = atom.from;
            a.y = atom.to;
            a.z = other.to;
            add(out, a);
          }
        break;
      }
      case RelKind::RH: {
        if (!allowed(RuleName::ConvH)) break;
        {
          RuleApp a;
          a.rule = RuleName::ConvH;
          a.x = atom.from;
          a.y = atom.to;
          add(out, a);
        }
        for (const auto& other : s.rels)
          if (other.kind == RelKind::RH && other.from == atom.from && atom.to < other.to) {
            RuleApp a;
            a.rule = RuleName::ConnH;
            a.x = atom.from;
            a.y = atom.to;
            a.z = other.to;
            add(out, a);
          }
        break;
      }
      case RelKind::Eq: {
        for (const auto& other : s.rels)
          if (other.kind == RelKind::Eq && other.from == atom.from) {
            RuleApp a;
            a.rule = RuleName::EuclEq;
            a.x = atom.from;
            a.y = atom.to;
            a.z = other.to;
            add(out, a);
          }
        if (atom.from != atom.to) {
          // transport every atom and formula across the equality
          for (const auto& other : s.rels)
            if (other.from == atom.from || other.to == atom.from) {
              RuleApp a;
              a.rule = RuleName::ReplEq;
              a.x = atom.from;
              a.y = atom.to;
              a.rel = other;
              add(out, a);
            }
          for (const auto& [l, f] : s.fmls)
            if (l == atom.from) {
              RuleApp a;
              a.rule = RuleName::ReplEq;
              a.x = atom.from;
              a.y = atom.to;
              a.label = l;
              a.formula = f;
              add(out, a);
            }
        }
        break;
      }
      default:
        break;
    }
  }

  // IOA: one tuple per combination of pairwise box-related labels
  if (allowed(RuleName::IOA) && agents >= 1) {
    std::vector<std::string> box_labels;
    for (const auto& l : labels) {
      bool in_box = false;
      for (const auto& atom : s.rels)
        if (atom.kind == RelKind::Rbox && (atom.from == l || atom.to == l)) in_box = true;
      if (in_box) box_labels.push_back(l);
    }
    std::vector<int> pick(agents, 0);
    if (!box_labels.empty()) {
      while (true) {
        std::vector<std::string> tuple;
        for (int i = 0; i < agents; ++i) tuple.push_back(box_labels[pick[i]]);
        bool mutual = true;
        for (int i = 0; i < agents && mutual; ++i)
          for (int k = 0; k < agents && mutual; ++k)
            if (i != k && !s.has(rbox(tuple[i], tuple[k]))) mutual = false;
        if (mutual) {
          RuleApp a;
          a.rule = RuleName::IOA;
          a.tuple = tuple;
          add(out, a);
        }
        int d = agents - 1;
        while (d >= 0 && ++pick[d] == static_cast<int>(box_labels.size())) pick[d--] = 0;
        if (d < 0) break;
      }
    }
  }

  // compG2, lazily on temporally connected pairs
  if (allowed(RuleName::CompG2) && opts.compg2 != CompG2Policy::Off) {
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& atom : s.rels) {
      bool temporal = atom.kind == RelKind::RG || atom.kind == RelKind::RH;
      bool boxish = atom.kind == RelKind::Rbox;
      if (!(temporal || (boxish && opts.compg2 == CompG2Policy::TemporalOrBoxPairs))) continue;
      if (atom.from == atom.to) continue;
      pairs.insert({atom.from, atom.to});
      pairs.insert({atom.to, atom.from});
    }
    for (const auto& [x, y] : pairs) {
      RuleApp a;
      a.rule = RuleName::CompG2;
      a.x = x;
      a.y = y;
      add(out, a);
    }
  }

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Saturation
// ---------------------------------------------------------------------------

Saturation::Saturation(LabelledSequent root, int agents, Logic logic, const ProverOptions& opts)
    : seq_(std::move(root)), agents_(agents), logic_(logic), opts_(opts) {
  enqueue_new();
}

int Saturation::label_count() const { return static_cast<int>(seq_.labels().size()); }

namespace {

// Scheduling class: 0 propagation, 1 fresh-label, 2 independence, 3 branching.
int rule_class(RuleName r) {
  switch (r) {
    case RuleName::Box:
    case RuleName::Stit:
    case RuleName::AgStit:
    case RuleName::G:
    case RuleName::H:
    case RuleName::XStit:
    case RuleName::SerG:
    case RuleName::Ncuh:
      return 1;
    case RuleName::IOA:
      return 2;
    case RuleName::And:
    case RuleName::ConnG:
    case RuleName::ConnH:
    case RuleName::CompG2:
      return 3;
    default:
      return 0;
  }
}

}  // namespace

void Saturation::enqueue_new() {
  for (auto& app : collect_candidates(seq_, stationary_, agents_, logic_, opts_))
    if (seen_.insert(app).second) queues_[rule_class(app.rule)].push_back(app);
}

std::optional<RuleApp> Saturation::closing_rule() const {
  for (const auto& [l, f] : seq_.fmls)
    if (f.conn() == Conn::Atom && seq_.has(l, Formula::neg_atom(f.name()))) {
      RuleApp a;
      a.rule = RuleName::Id;
      a.label = l;
      a.formula = f;
      return a;
    }
  for (const auto& atom : seq_.rels)
    if (atom.kind == RelKind::RG && seq_.has(rgbar(atom.from, atom.to))) {
      RuleApp a;
      a.rule = RuleName::CompG1;
      a.x = atom.from;
      a.y = atom.to;
      return a;
    }
  return std::nullopt;
}

// An instance is redundant when all of its additions are already present or
// its purpose is otherwise witnessed.
bool Saturation::redundant(const RuleApp& app) const {
  const LabelledSequent& s = seq_;
  switch (app.rule) {
    case RuleName::And:
      return s.has(app.label, app.formula.left()) || s.has(app.label, app.formula.right());
    case RuleName::Or:
      return s.has(app.label, app.formula.left()) && s.has(app.label, app.formula.right());
    case RuleName::Box:
    case RuleName::Stit:
    case RuleName::AgStit:
    case RuleName::G:
    case RuleName::H: {
      for (const auto& l : s.labels()) {
        RelAtom witness = operator_atom(app.formula, app.label, l);
        if (s.has(witness) && s.has(l, app.formula.left())) return true;
      }
      return false;
    }
    case RuleName::Dia:
    case RuleName::CoStit:
    case RuleName::AgCoStit:
    case RuleName::F:
    case RuleName::P:
      return s.has(app.target, app.formula.left());
    case RuleName::ReflBox: return s.has(rbox(app.label, app.label));
    case RuleName::ReflI: return s.has(ri(app.agent, app.label, app.label));
    case RuleName::ReflAg: return s.has(rag(app.label, app.label));
    case RuleName::RefEq: return s.has(req(app.label, app.label));
    case RuleName::EuclBox: return s.has(rbox(app.y, app.z));
    case RuleName::EuclI: return s.has(ri(app.agent, app.y, app.z));
    case RuleName::EuclAg: return s.has(rag(app.y, app.z));
    case RuleName::EuclEq: return s.has(req(app.y, app.z));
    case RuleName::BrI: return s.has(rbox(app.x, app.y));
    case RuleName::Agd: return s.has(ri(app.agent, app.x, app.y));
    case RuleName::IOA: {
      for (const auto& u : s.labels()) {
        bool all = true;
        for (int i = 0; i < agents_ && all; ++i) all = s.has(ri(i, app.tuple[i], u));
        if (all) return true;
      }
      return false;
    }
    case RuleName::TransG: return s.has(rg(app.x, app.z));
    case RuleName::SerG: return !sergeable(s, stationary_, app.label);
    case RuleName::ConvG: return s.has(rh(app.y, app.x));
    case RuleName::ConvH: return s.has(rg(app.y, app.x));
    case RuleName::ConnG:
    case RuleName::ConnH:
      return s.has(rg(app.y, app.z)) || s.has(req(app.y, app.z)) || s.has(rg(app.z, app.y)) ||
             s.has(req(app.z, app.y));
    case RuleName::Ncuh: {
      for (const auto& u : s.labels())
        if (s.has(rag(app.x, u)) && s.has(rg(u, app.z))) return true;
      return false;
    }
    case RuleName::IrrG: return s.has(rgbar(app.x, app.y));
    case RuleName::CompG2: return s.has(rg(app.x, app.y)) || s.has(rgbar(app.x, app.y));
    case RuleName::ReplEq: {
      if (app.rel) {
        RelAtom moved = *app.rel;
        if (moved.from == app.x) moved.from = app.y;
        if (moved.to == app.x) moved.to = app.y;
        return s.has(moved);
      }
      return s.has(app.y, app.formula);
    }
    default:
      return false;
  }
}

Saturation::Step Saturation::step() {
  Step result;
  if (auto closing = closing_rule()) {
    result.kind = StepKind::Closed;
    result.rule = *closing;
    return result;
  }
  auto literal_count = [this](const std::string& label) {
    int n = 0;
    for (const auto& [l, f] : seq_.fmls)
      if (l == label && f.is_literal()) ++n;
    return n;
  };
  while (true) {
    int cls = 0;
    while (cls < 4 && queues_[cls].empty()) ++cls;
    if (cls == 4) break;
    RuleApp app;
    if (cls == 3) {
      // branch where closure is nearest: prefer labels already carrying
      // literals, and among ties the newest material
      std::size_t best = queues_[cls].size() - 1;
      int best_score = -1;
      for (std::size_t i = 0; i < queues_[cls].size(); ++i) {
        const RuleApp& cand = queues_[cls][i];
        int score = 0;
        if (cand.rule == RuleName::And) score = literal_count(cand.label);
        if (score >= best_score) {
          best_score = score;
          best = i;
        }
      }
      app = queues_[cls][best];
      queues_[cls].erase(queues_[cls].begin() + static_cast<std::ptrdiff_t>(best));
    } else {
      app = queues_[cls].front();
      queues_[cls].pop_front();
    }
    if (redundant(app)) continue;
    // assign the fresh label now so that numbering follows application order
    switch (app.rule) {
      case RuleName::Box:
      case RuleName::Stit:
      case RuleName::AgStit:
      case RuleName::G:
      case RuleName::H:
      case RuleName::XStit:
      case RuleName::IOA:
      case RuleName::SerG:
      case RuleName::Ncuh:
        app.fresh = "x" + std::to_string(fresh_counter_++);
        break;
      default:
        break;
    }
    RuleContext ctx;
    ctx.agents = agents_;
    ctx.stationary = stationary_;
    std::vector<LabelledSequent> premises;
    try {
      premises = apply_rule(seq_, app, ctx, nullptr);
    } catch (const RuleError&) {
      continue;  // stale instance; preconditions were consumed by an equality
    }
    // stationarity bookkeeping mirrors check_proof's child context
    switch (app.rule) {
      case RuleName::SerG:
        stationary_.insert(app.fresh);
        break;
      case RuleName::Box:
      case RuleName::Stit:
      case RuleName::AgStit:
      case RuleName::G:
        if (stationary_.count(app.label)) stationary_.insert(app.fresh);
        break;
      case RuleName::Ncuh:
        if (stationary_.count(app.x)) stationary_.insert(app.fresh);
        break;
      case RuleName::IOA: {
        bool all = !app.tuple.empty();
        for (const auto& l : app.tuple)
          if (!stationary_.count(l)) all = false;
        if (all) stationary_.insert(app.fresh);
        break;
      }
      default:
        break;
    }
    result.kind = StepKind::Applied;
    result.rule = app;
    result.premises = std::move(premises);
    return result;
  }
  result.kind = StepKind::Saturated;
  return result;
}

void Saturation::adopt(const LabelledSequent& premise) {
  seq_ = premise;
  enqueue_new();
}

// ---------------------------------------------------------------------------
// Countermodel extraction
// ---------------------------------------------------------------------------

namespace {

struct UnionFind {
  std::map<std::string, std::string> parent;

  const std::string& find(const std::string& x) {
    auto it = parent.find(x);
    if (it == parent.end()) {
      parent[x] = x;
      return parent.find(x)->first;
    }
    if (it->second == x) return it->second;
    std::string root = find(it->second);
    parent[x] = root;
    return parent.find(x)->second;
  }

  void unite(const std::string& a, const std::string& b) {
    std::string ra = find(a), rb = find(b);
    if (ra == rb) return;
    // smaller name becomes the representative, for stable world names
    if (rb < ra) std::swap(ra, rb);
    parent[rb] = ra;
  }
};

}  // namespace

std::pair<ExplicitModel, std::map<std::string, std::string>> extract_countermodel(
    const LabelledSequent& s, int agents, Logic logic) {
  (void)logic;
  UnionFind uf;
  for (const auto& l : s.labels()) uf.find(l);
  for (const auto& atom : s.rels)
    if (atom.kind == RelKind::Eq) uf.unite(atom.from, atom.to);

  std::map<std::string, std::string> interp;
  std::set<std::string> class_names;
  for (const auto& l : s.labels()) {
    interp[l] = uf.find(l);
    class_names.insert(interp[l]);
  }

  ExplicitModel m;
  m.agents = agents;
  m.serial_mode = SerialMode::OmegaTail;
  m.worlds.assign(class_names.begin(), class_names.end());
  m.r_i.resize(agents);
  auto idx = [&](const std::string& label) { return m.world_index(uf.find(label)); };

  for (const auto& atom : s.rels) {
    int a = idx(atom.from), b = idx(atom.to);
    switch (atom.kind) {
      case RelKind::Rbox: m.r_box.add(a, b); break;
      case RelKind::Ri: m.r_i[atom.agent].add(a, b); break;
      case RelKind::RAg: m.r_ag.add(a, b); break;
      case RelKind::RG: m.r_g.add(a, b); break;
      case RelKind::RH: m.r_h.add(a, b); break;
      case RelKind::RGbar:
      case RelKind::Eq: break;
      case RelKind::RAx:
        throw ProverInternalError("Xstit relational atom in a Tstit branch");
    }
  }
  // grand-coalition repair: R_Ag becomes the intersection of the choices
  m.r_ag = Relation::intersect(m.r_i);

  // an atom is true exactly where its negation was required false
  for (const auto& [l, f] : s.fmls)
    if (f.conn() == Conn::NegAtom) m.valuation[f.name()].insert(idx(l));

  return {m, interp};
}

// ---------------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------------

namespace {

void verify_falsified(const ExplicitModel& m, const std::map<std::string, std::string>& interp,
                      const LabelledSequent& s) {
  auto world = [&](const std::string& label) {
    auto it = interp.find(label);
    assert(it != interp.end());
    return m.world_index(it->second);
  };
  for (const auto& [l, f] : s.fmls)
    if (satisfies(m, world(l), f))
      throw ProverInternalError("extracted model satisfies " + l + ": " + render(f));
  for (const auto& atom : s.rels) {
    int a = world(atom.from), b = world(atom.to);
    bool ok = true;
    switch (atom.kind) {
      case RelKind::Rbox: ok = m.r_box.has(a, b); break;
      case RelKind::Ri: ok = m.r_i[atom.agent].has(a, b); break;
      case RelKind::RAg: ok = m.r_ag.has(a, b); break;
      case RelKind::RG: ok = m.r_g.has(a, b); break;
      case RelKind::RH: ok = m.r_h.has(a, b); break;
      case RelKind::RGbar: ok = !m.r_g.has(a, b); break;
      case RelKind::Eq: ok = a == b; break;
      case RelKind::RAx: ok = false; break;
    }
    if (!ok)
      throw ProverInternalError("extracted model violates atom " + to_string(atom));
  }
}

struct BranchOutcome {
  enum class Kind { Closed, Open, Unknown } kind = Kind::Unknown;
  ProofNode node;            // Closed
  LabelledSequent open_seq;  // Open
  std::string report;        // Unknown
};

struct SearchDriver {
  const SearchBudget& budget;
  ProverStats stats;

  BranchOutcome explore(Saturation sat, int depth) {
    std::vector<std::pair<LabelledSequent, RuleApp>> spine;
    auto fold = [&](ProofNode tip) {
      for (auto it = spine.rbegin(); it != spine.rend(); ++it)
        tip = ProofNode{it->first, it->second, {std::move(tip)}};
      return tip;
    };
    while (true) {
      Saturation::Step st = sat.step();
      if (st.kind == Saturation::StepKind::Closed) {
        BranchOutcome out;
        out.kind = BranchOutcome::Kind::Closed;
        out.node = fold(ProofNode{sat.sequent(), st.rule, {}});
        return out;
      }
      if (st.kind == Saturation::StepKind::Saturated) {
        BranchOutcome out;
        out.kind = BranchOutcome::Kind::Open;
        out.open_seq = sat.sequent();
        stats.labels = std::max(stats.labels, sat.label_count());
        return out;
      }
      ++stats.nodes;
      if (stats.nodes > budget.max_nodes) {
        BranchOutcome out;
        out.report = "node budget exhausted (" + std::to_string(budget.max_nodes) + ")";
        return out;
      }
      // label budget applies per branch
      {
        int labels_after = sat.label_count() + (st.rule.fresh.empty() ? 0 : 1);
        if (labels_after > budget.max_labels) {
          BranchOutcome out;
          out.report = "label budget exhausted (" + std::to_string(budget.max_labels) + ")";
          return out;
        }
      }
      if (st.premises.size() == 1) {
        spine.push_back({sat.sequent(), st.rule});
        sat.adopt(st.premises[0]);
        stats.labels = std::max(stats.labels, sat.label_count());
        continue;
      }
      // branch point
      ++stats.branches;
      if (depth + 1 > budget.max_depth) {
        BranchOutcome out;
        out.report = "depth budget exhausted (" + std::to_string(budget.max_depth) + ")";
        return out;
      }
      std::vector<ProofNode> children;
      bool unknown = false;
      std::string report;
      for (const auto& premise : st.premises) {
        Saturation fork = sat;
        fork.adopt(premise);
        BranchOutcome sub = explore(std::move(fork), depth + 1);
        if (sub.kind == BranchOutcome::Kind::Open) return sub;
        if (sub.kind == BranchOutcome::Kind::Unknown) {
          unknown = true;
          if (report.empty()) report = sub.report;
          continue;
        }
        children.push_back(std::move(sub.node));
      }
      if (unknown) {
        BranchOutcome out;
        out.report = report;
        return out;
      }
      BranchOutcome out;
      out.kind = BranchOutcome::Kind::Closed;
      out.node = fold(ProofNode{sat.sequent(), st.rule, std::move(children)});
      return out;
    }
  }
};

}  // namespace

ProverResult prove(const Formula& f, int agents, Logic logic, const SearchBudget& budget,
                   const ProverOptions& opts) {
  if (budget.max_labels < 1 || budget.max_nodes < 1 || budget.max_depth < 1)
    throw std::invalid_argument("prove: budget fields must be >= 1");
  if (agents < 1) throw std::invalid_argument("prove: agent count must be >= 1");
  if (logic == Logic::Xstit)
    throw std::invalid_argument("prove: proof search covers Ldm and Tstit only");
  if (has_xstit(f))
    throw std::invalid_argument("prove: Xstit operators are not searchable");
  if (logic == Logic::Ldm && (!is_atemporal(f) || has_agent_ops(f)))
    throw std::invalid_argument("prove: Ldm formulas must be atemporal and [Ag]-free");
  if (max_agent_index(f) >= agents)
    throw std::invalid_argument("prove: formula mentions an agent outside the declared set");

  LabelledSequent root;
  root.fmls.insert({"x0", to_nnf(f)});

  SearchDriver driver{budget, {}};
  BranchOutcome out = driver.explore(Saturation(root, agents, logic, opts), 0);

  ProverResult res;
  res.stats = driver.stats;
  switch (out.kind) {
    case BranchOutcome::Kind::Closed: {
      res.kind = VerdictKind::Proved;
      res.proof = std::move(out.node);
      break;
    }
    case BranchOutcome::Kind::Open: {
      auto [model, interp] = extract_countermodel(out.open_seq, agents, logic);
      verify_falsified(model, interp, out.open_seq);
      res.kind = VerdictKind::Refuted;
      res.countermodel = std::move(model);
      res.interpretation = std::move(interp);
      break;
    }
    case BranchOutcome::Kind::Unknown: {
      res.kind = VerdictKind::Unknown;
      res.report = out.report;
      break;
    }
  }
  return res;
}

}  // namespace stit
