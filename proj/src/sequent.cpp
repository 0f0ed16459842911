#include "stit/sequent.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace stit {

// ---------------------------------------------------------------------------
// Relational atoms
// ---------------------------------------------------------------------------

RelAtom rbox(std::string a, std::string b) {
  return RelAtom{RelKind::Rbox, -1, {}, std::move(a), std::move(b)};
}
RelAtom ri(int agent, std::string a, std::string b) {
  return RelAtom{RelKind::Ri, agent, {}, std::move(a), std::move(b)};
}
RelAtom rag(std::string a, std::string b) {
  return RelAtom{RelKind::RAg, -1, {}, std::move(a), std::move(b)};
}
RelAtom rg(std::string a, std::string b) {
  return RelAtom{RelKind::RG, -1, {}, std::move(a), std::move(b)};
}
RelAtom rgbar(std::string a, std::string b) {
  return RelAtom{RelKind::RGbar, -1, {}, std::move(a), std::move(b)};
}
RelAtom rh(std::string a, std::string b) {
  return RelAtom{RelKind::RH, -1, {}, std::move(a), std::move(b)};
}
RelAtom rax(std::vector<int> group, std::string a, std::string b) {
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  return RelAtom{RelKind::RAx, -1, std::move(group), std::move(a), std::move(b)};
}
RelAtom req(std::string a, std::string b) {
  return RelAtom{RelKind::Eq, -1, {}, std::move(a), std::move(b)};
}

std::string to_string(const RelAtom& a) {
  std::ostringstream os;
  switch (a.kind) {
    case RelKind::Rbox: os << "Rbox"; break;
    case RelKind::Ri: os << "R" << a.agent; break;
    case RelKind::RAg: os << "RAg"; break;
    case RelKind::RG: os << "RG"; break;
    case RelKind::RGbar: os << "RGbar"; break;
    case RelKind::RH: os << "RH"; break;
    case RelKind::RAx: {
      os << "RA{";
      for (std::size_t i = 0; i < a.group.size(); ++i) os << (i ? "," : "") << a.group[i];
      os << "}";
      break;
    }
    case RelKind::Eq: os << "Eq"; break;
  }
  os << " " << a.from << " " << a.to;
  return os.str();
}

std::set<std::string> LabelledSequent::labels() const {
  std::set<std::string> out;
  for (const auto& a : rels) {
    out.insert(a.from);
    out.insert(a.to);
  }
  for (const auto& [l, f] : fmls) out.insert(l);
  return out;
}

bool LabelledSequent::mentions(const std::string& label) const {
  for (const auto& a : rels)
    if (a.from == label || a.to == label) return true;
  for (const auto& [l, f] : fmls)
    if (l == label) return true;
  return false;
}

std::string to_string(const LabelledSequent& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& a : s.rels) {
    if (!first) os << ", ";
    os << to_string(a);
    first = false;
  }
  for (const auto& [l, f] : s.fmls) {
    if (!first) os << ", ";
    os << l << ": " << render(f);
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Rule names
// ---------------------------------------------------------------------------

namespace {

const std::pair<RuleName, const char*> kRuleNames[] = {
    {RuleName::Id, "id"},         {RuleName::And, "and"},       {RuleName::Or, "or"},
    {RuleName::Box, "box"},       {RuleName::Stit, "stit"},     {RuleName::AgStit, "agstit"},
    {RuleName::G, "G"},           {RuleName::H, "H"},           {RuleName::XStit, "xstit"},
    {RuleName::Dia, "dia"},       {RuleName::CoStit, "costit"}, {RuleName::AgCoStit, "agcostit"},
    {RuleName::F, "F"},           {RuleName::P, "P"},           {RuleName::XCoStit, "xcostit"},
    {RuleName::ReflBox, "reflBox"}, {RuleName::EuclBox, "euclBox"},
    {RuleName::ReflI, "refl_i"},  {RuleName::EuclI, "eucl_i"},
    {RuleName::ReflAg, "reflAg"}, {RuleName::EuclAg, "euclAg"},
    {RuleName::BrI, "br_i"},      {RuleName::Agd, "agd"},       {RuleName::IOA, "IOA"},
    {RuleName::TransG, "transG"}, {RuleName::SerG, "serG"},     {RuleName::ConvG, "convG"},
    {RuleName::ConvH, "convH"},   {RuleName::ConnG, "connG"},   {RuleName::ConnH, "connH"},
    {RuleName::Ncuh, "ncuh"},     {RuleName::IrrG, "irrG"},     {RuleName::CompG1, "compG1"},
    {RuleName::CompG2, "compG2"}, {RuleName::RefEq, "ref="},    {RuleName::EuclEq, "eucl="},
    {RuleName::ReplEq, "repl="},  {RuleName::IOAE, "IOA-E"},    {RuleName::IOAU, "IOA-U"},
};

}  // namespace

std::string rule_name(RuleName r) {
  for (const auto& [rule, name] : kRuleNames)
    if (rule == r) return name;
  return "?";
}

std::optional<RuleName> rule_from_name(const std::string& s) {
  for (const auto& [rule, name] : kRuleNames)
    if (s == name) return rule;
  return std::nullopt;
}

std::string to_string(const RuleApp& app) {
  std::ostringstream os;
  os << rule_name(app.rule);
  if (!app.label.empty()) os << " @" << app.label;
  if (app.formula.valid()) os << " [" << render(app.formula) << "]";
  if (!app.target.empty()) os << " ->" << app.target;
  if (!app.fresh.empty()) os << " fresh:" << app.fresh;
  return os.str();
}

bool rule_allowed(RuleName r, Logic logic) {
  switch (r) {
    case RuleName::Id:
    case RuleName::And:
    case RuleName::Or:
    case RuleName::Box:
    case RuleName::Dia:
    case RuleName::ReflBox:
    case RuleName::EuclBox:
    case RuleName::RefEq:
    case RuleName::EuclEq:
    case RuleName::ReplEq:
      return true;
    case RuleName::Stit:
    case RuleName::CoStit:
    case RuleName::ReflI:
    case RuleName::EuclI:
    case RuleName::BrI:
    case RuleName::IOA:
      return logic != Logic::Xstit;
    case RuleName::XStit:
    case RuleName::XCoStit:
    case RuleName::IOAE:
    case RuleName::IOAU:
      return logic == Logic::Xstit;
    default:
      // temporal and grand-coalition rules
      return logic == Logic::Tstit;
  }
}

const std::pair<std::string, std::string>* RuleContext::find_instance(int id) const {
  for (const auto& [iid, pair] : xstit_instances)
    if (iid == id) return &pair;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Rule application
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void rule_fail(const RuleApp& app, const std::string& why) {
  throw RuleError(rule_name(app.rule) + ": " + why);
}

void require_principal(const LabelledSequent& s, const RuleApp& app, Conn expected) {
  if (!app.formula.valid() || app.formula.conn() != expected)
    rule_fail(app, "principal formula has the wrong main connective");
  if (!s.has(app.label, app.formula))
    rule_fail(app, "principal formula " + app.label + ": " + render(app.formula) +
                       " not in the sequent");
}

void require_fresh(const LabelledSequent& s, const RuleApp& app) {
  if (app.fresh.empty()) rule_fail(app, "missing fresh label");
  if (s.mentions(app.fresh)) rule_fail(app, "label " + app.fresh + " is not fresh");
}

void require_atom(const LabelledSequent& s, const RuleApp& app, const RelAtom& a) {
  if (!s.has(a)) rule_fail(app, "required atom " + to_string(a) + " not in the sequent");
}

LabelledSequent extend(const LabelledSequent& s, const std::vector<RelAtom>& rels,
                       const std::vector<std::pair<std::string, Formula>>& fmls) {
  LabelledSequent out = s;
  for (const auto& a : rels) out.rels.insert(a);
  for (const auto& lf : fmls) out.fmls.insert(lf);
  return out;
}

Conn principal_conn(RuleName r) {
  switch (r) {
    case RuleName::Box: return Conn::Box;
    case RuleName::Stit: return Conn::Stit;
    case RuleName::AgStit: return Conn::AgStit;
    case RuleName::G: return Conn::Always;
    case RuleName::H: return Conn::Historically;
    case RuleName::XStit: return Conn::XStit;
    case RuleName::Dia: return Conn::Dia;
    case RuleName::CoStit: return Conn::CoStit;
    case RuleName::AgCoStit: return Conn::AgCoStit;
    case RuleName::F: return Conn::Eventually;
    case RuleName::P: return Conn::Once;
    case RuleName::XCoStit: return Conn::XCoStit;
    default: throw RuleError("no principal connective");
  }
}

}  // namespace

RelAtom operator_atom(const Formula& f, const std::string& from, const std::string& to) {
  switch (f.conn()) {
    case Conn::Box:
    case Conn::Dia: return rbox(from, to);
    case Conn::Stit:
    case Conn::CoStit: return ri(f.agent(), from, to);
    case Conn::AgStit:
    case Conn::AgCoStit: return rag(from, to);
    case Conn::Always:
    case Conn::Eventually: return rg(from, to);
    case Conn::Historically:
    case Conn::Once: return rh(from, to);
    case Conn::XStit:
    case Conn::XCoStit: return rax(f.group(), from, to);
    default: throw RuleError("operator_atom: not a modal operator");
  }
}

std::vector<LabelledSequent> apply_rule(const LabelledSequent& s, const RuleApp& app,
                                        const RuleContext& ctx,
                                        std::vector<std::string>* warnings) {
  switch (app.rule) {
    case RuleName::Id: {
      if (!app.formula.valid() || app.formula.conn() != Conn::Atom)
        rule_fail(app, "id closes on propositional atoms");
      if (!s.has(app.label, app.formula))
        rule_fail(app, "atom " + render(app.formula) + " not at " + app.label);
      if (!s.has(app.label, Formula::neg_atom(app.formula.name())))
        rule_fail(app, "complementary literal not at " + app.label);
      return {};
    }
    case RuleName::CompG1: {
      require_atom(s, app, rg(app.x, app.y));
      require_atom(s, app, rgbar(app.x, app.y));
      return {};
    }
    case RuleName::And: {
      require_principal(s, app, Conn::And);
      return {extend(s, {}, {{app.label, app.formula.left()}}),
              extend(s, {}, {{app.label, app.formula.right()}})};
    }
    case RuleName::Or: {
      require_principal(s, app, Conn::Or);
      return {extend(s, {}, {{app.label, app.formula.left()},
                             {app.label, app.formula.right()}})};
    }
    case RuleName::Box:
    case RuleName::Stit:
    case RuleName::AgStit:
    case RuleName::G:
    case RuleName::H:
    case RuleName::XStit: {
      require_principal(s, app, principal_conn(app.rule));
      if (app.rule == RuleName::Stit &&
          (app.formula.agent() < 0 || app.formula.agent() >= ctx.agents))
        rule_fail(app, "agent index out of range");
      require_fresh(s, app);
      return {extend(s, {operator_atom(app.formula, app.label, app.fresh)},
                     {{app.fresh, app.formula.left()}})};
    }
    case RuleName::Dia:
    case RuleName::CoStit:
    case RuleName::AgCoStit:
    case RuleName::F:
    case RuleName::P:
    case RuleName::XCoStit: {
      require_principal(s, app, principal_conn(app.rule));
      if (app.target.empty()) rule_fail(app, "missing target label");
      RelAtom needed = operator_atom(app.formula, app.label, app.target);
      bool stationary_self = (app.rule == RuleName::F || app.rule == RuleName::P) &&
                             app.target == app.label && ctx.stationary.count(app.label) > 0;
      if (!stationary_self) require_atom(s, app, needed);
      return {extend(s, {}, {{app.target, app.formula.left()}})};
    }
    case RuleName::ReflBox: {
      if (!s.mentions(app.label)) rule_fail(app, "label " + app.label + " not in the sequent");
      return {extend(s, {rbox(app.label, app.label)}, {})};
    }
    case RuleName::ReflI: {
      if (app.agent < 0 || app.agent >= ctx.agents) rule_fail(app, "agent index out of range");
      if (!s.mentions(app.label)) rule_fail(app, "label " + app.label + " not in the sequent");
      return {extend(s, {ri(app.agent, app.label, app.label)}, {})};
    }
    case RuleName::ReflAg: {
      if (!s.mentions(app.label)) rule_fail(app, "label " + app.label + " not in the sequent");
      return {extend(s, {rag(app.label, app.label)}, {})};
    }
    case RuleName::EuclBox: {
      require_atom(s, app, rbox(app.x, app.y));
      require_atom(s, app, rbox(app.x, app.z));
      return {extend(s, {rbox(app.y, app.z)}, {})};
    }
    case RuleName::EuclI: {
      if (app.agent < 0 || app.agent >= ctx.agents) rule_fail(app, "agent index out of range");
      require_atom(s, app, ri(app.agent, app.x, app.y));
      require_atom(s, app, ri(app.agent, app.x, app.z));
      return {extend(s, {ri(app.agent, app.y, app.z)}, {})};
    }
    case RuleName::EuclAg: {
      require_atom(s, app, rag(app.x, app.y));
      require_atom(s, app, rag(app.x, app.z));
      return {extend(s, {rag(app.y, app.z)}, {})};
    }
    case RuleName::BrI: {
      if (app.agent < 0 || app.agent >= ctx.agents) rule_fail(app, "agent index out of range");
      require_atom(s, app, ri(app.agent, app.x, app.y));
      return {extend(s, {rbox(app.x, app.y)}, {})};
    }
    case RuleName::Agd: {
      if (app.agent < 0 || app.agent >= ctx.agents) rule_fail(app, "agent index out of range");
      require_atom(s, app, rag(app.x, app.y));
      return {extend(s, {ri(app.agent, app.x, app.y)}, {})};
    }
    case RuleName::IOA: {
      if (static_cast<int>(app.tuple.size()) != ctx.agents)
        rule_fail(app, "choice tuple must name one label per agent");
      for (std::size_t i = 0; i < app.tuple.size(); ++i)
        for (std::size_t k = 0; k < app.tuple.size(); ++k)
          if (i != k) require_atom(s, app, rbox(app.tuple[i], app.tuple[k]));
      require_fresh(s, app);
      std::vector<RelAtom> adds;
      for (int i = 0; i < ctx.agents; ++i) adds.push_back(ri(i, app.tuple[i], app.fresh));
      return {extend(s, adds, {})};
    }
    case RuleName::TransG: {
      require_atom(s, app, rg(app.x, app.y));
      require_atom(s, app, rg(app.y, app.z));
      return {extend(s, {rg(app.x, app.z)}, {})};
    }
    case RuleName::SerG: {
      if (!s.mentions(app.label)) rule_fail(app, "label " + app.label + " not in the sequent");
      require_fresh(s, app);
      return {extend(s, {rg(app.label, app.fresh)}, {})};
    }
    case RuleName::ConvG: {
      require_atom(s, app, rg(app.x, app.y));
      return {extend(s, {rh(app.y, app.x)}, {})};
    }
    case RuleName::ConvH: {
      require_atom(s, app, rh(app.x, app.y));
      return {extend(s, {rg(app.y, app.x)}, {})};
    }
    case RuleName::ConnG: {
      require_atom(s, app, rg(app.x, app.y));
      require_atom(s, app, rg(app.x, app.z));
      if (app.y == app.z) rule_fail(app, "successor labels must differ");
      return {extend(s, {rg(app.y, app.z)}, {}), extend(s, {req(app.y, app.z)}, {}),
              extend(s, {rg(app.z, app.y)}, {})};
    }
    case RuleName::ConnH: {
      require_atom(s, app, rh(app.x, app.y));
      require_atom(s, app, rh(app.x, app.z));
      if (app.y == app.z) rule_fail(app, "predecessor labels must differ");
      return {extend(s, {rg(app.y, app.z)}, {}), extend(s, {req(app.y, app.z)}, {}),
              extend(s, {rg(app.z, app.y)}, {})};
    }
    case RuleName::Ncuh: {
      require_atom(s, app, rg(app.x, app.y));
      require_atom(s, app, rbox(app.y, app.z));
      require_fresh(s, app);
      return {extend(s, {rag(app.x, app.fresh), rg(app.fresh, app.z)}, {})};
    }
    case RuleName::IrrG: {
      require_atom(s, app, rbox(app.x, app.y));
      require_atom(s, app, rg(app.x, app.y));
      return {extend(s, {rgbar(app.x, app.y)}, {})};
    }
    case RuleName::CompG2: {
      if (!s.mentions(app.x) || !s.mentions(app.y))
        rule_fail(app, "labels not in the sequent");
      return {extend(s, {rg(app.x, app.y)}, {}), extend(s, {rgbar(app.x, app.y)}, {})};
    }
    case RuleName::RefEq: {
      if (!s.mentions(app.label)) rule_fail(app, "label " + app.label + " not in the sequent");
      return {extend(s, {req(app.label, app.label)}, {})};
    }
    case RuleName::EuclEq: {
      require_atom(s, app, req(app.x, app.y));
      require_atom(s, app, req(app.x, app.z));
      return {extend(s, {req(app.y, app.z)}, {})};
    }
    case RuleName::ReplEq: {
      require_atom(s, app, req(app.x, app.y));
      if (app.rel) {
        require_atom(s, app, *app.rel);
        RelAtom moved = *app.rel;
        bool touched = false;
        if (moved.from == app.x) { moved.from = app.y; touched = true; }
        if (moved.to == app.x) { moved.to = app.y; touched = true; }
        if (!touched) rule_fail(app, "atom does not mention " + app.x);
        return {extend(s, {moved}, {})};
      }
      if (!app.formula.valid()) rule_fail(app, "nothing to transport");
      if (app.label != app.x) rule_fail(app, "labelled formula must sit at " + app.x);
      if (!s.has(app.label, app.formula))
        rule_fail(app, "labelled formula not in the sequent");
      return {extend(s, {}, {{app.y, app.formula}})};
    }
    case RuleName::IOAE: {
      if (!s.mentions(app.x)) rule_fail(app, "label " + app.x + " not in the sequent");
      if (app.instance_id < 0) rule_fail(app, "missing instance id");
      if (ctx.find_instance(app.instance_id))
        rule_fail(app, "instance id " + std::to_string(app.instance_id) + " already open");
      require_fresh(s, app);
      return {extend(s, {rbox(app.x, app.fresh)}, {})};
    }
    case RuleName::IOAU: {
      const auto* inst = ctx.find_instance(app.instance_id);
      if (!inst)
        rule_fail(app, "no IOA-E ancestor with instance id " + std::to_string(app.instance_id));
      if (app.group.empty()) rule_fail(app, "missing agent group");
      require_atom(s, app, rax(app.group, inst->second, app.z));
      if (app.y.empty() || !s.mentions(app.y)) rule_fail(app, "target label not in the sequent");
      if (warnings && !s.has(rbox(inst->first, app.y)))
        warnings->push_back("IOA-U at " + app.y + ": no Rbox " + inst->first + " " + app.y +
                            " (outside the reference derivation shape)");
      return {extend(s, {rax(app.group, app.y, app.z)}, {})};
    }
  }
  throw RuleError("unknown rule");
}

// ---------------------------------------------------------------------------
// Proof checking
// ---------------------------------------------------------------------------

std::string path_string(const std::vector<int>& path) {
  std::string s = "root";
  for (int i : path) s += "." + std::to_string(i);
  return s;
}

namespace {

void child_context(const RuleApp& app, RuleContext& ctx) {
  switch (app.rule) {
    case RuleName::SerG:
      ctx.stationary.insert(app.fresh);
      break;
    case RuleName::Box:
    case RuleName::Stit:
    case RuleName::AgStit:
    case RuleName::G:
    case RuleName::XStit:
      // witnesses of stationary labels live in the stationary tail; past
      // witnesses (H) do not
      if (ctx.stationary.count(app.label)) ctx.stationary.insert(app.fresh);
      break;
    case RuleName::Ncuh:
      if (ctx.stationary.count(app.x)) ctx.stationary.insert(app.fresh);
      break;
    case RuleName::IOA: {
      bool all = !app.tuple.empty();
      for (const auto& l : app.tuple)
        if (!ctx.stationary.count(l)) all = false;
      if (all) ctx.stationary.insert(app.fresh);
      break;
    }
    case RuleName::IOAE:
      ctx.xstit_instances.push_back({app.instance_id, {app.x, app.fresh}});
      break;
    default:
      break;
  }
}

bool walk(const ProofNode& node, Logic logic, RuleContext ctx, std::vector<int>& path,
          CheckResult& out) {
  if (!rule_allowed(node.rule.rule, logic)) {
    out.accepted = false;
    out.reason = "rule " + rule_name(node.rule.rule) + " is not part of this calculus";
    out.node_path = path;
    return false;
  }
  for (const auto& [l, f] : node.conclusion.fmls)
    if (!is_nnf(f)) {
      out.accepted = false;
      out.reason = "formula at " + l + " is not in negation normal form";
      out.node_path = path;
      return false;
    }
  std::vector<LabelledSequent> expected;
  try {
    expected = apply_rule(node.conclusion, node.rule, ctx, &out.warnings);
  } catch (const RuleError& e) {
    out.accepted = false;
    out.reason = e.what();
    out.node_path = path;
    return false;
  }
  if (expected.size() != node.premises.size()) {
    out.accepted = false;
    out.reason = "rule " + rule_name(node.rule.rule) + " expects " +
                 std::to_string(expected.size()) + " premise(s), found " +
                 std::to_string(node.premises.size());
    out.node_path = path;
    return false;
  }
  child_context(node.rule, ctx);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (!(node.premises[i].conclusion == expected[i])) {
      out.accepted = false;
      out.reason = "premise " + std::to_string(i) + " of " + rule_name(node.rule.rule) +
                   " does not match the rule schema";
      out.node_path = path;
      out.node_path.push_back(static_cast<int>(i));
      return false;
    }
    path.push_back(static_cast<int>(i));
    if (!walk(node.premises[i], logic, ctx, path, out)) return false;
    path.pop_back();
  }
  return true;
}

}  // namespace

CheckResult check_proof(const ProofNode& t, Logic logic, int agents) {
  CheckResult res;
  RuleContext ctx;
  ctx.agents = agents;
  std::vector<int> path;
  walk(t, logic, ctx, path, res);
  return res;
}

// ---------------------------------------------------------------------------
// Reference derivation
// ---------------------------------------------------------------------------

ProofNode appendix_b_fixture() {
  const Formula p = Formula::atom("p");
  const Formula q = Formula::atom("q");
  const Formula co_a = Formula::xcostit({0}, Formula::neg_atom("p"));  // <x:{0}>~p
  const Formula co_b = Formula::xcostit({1}, Formula::neg_atom("q"));
  const Formula st_a = Formula::xstit({0}, p);
  const Formula st_b = Formula::xstit({1}, q);
  const Formula box_a = Formula::box(co_a);
  const Formula box_b = Formula::box(co_b);
  const Formula conj = Formula::land(st_a, st_b);
  const Formula dia_conj = Formula::dia(conj);
  const Formula goal = Formula::lor(Formula::lor(box_a, box_b), dia_conj);

  // Sequents grow cumulatively from the root upward.
  LabelledSequent s0;
  s0.fmls.insert({"w1", goal});
  LabelledSequent s1 = extend(s0, {}, {{"w1", Formula::lor(box_a, box_b)}, {"w1", dia_conj}});
  LabelledSequent s2 = extend(s1, {}, {{"w1", box_a}, {"w1", box_b}});
  LabelledSequent s3 = extend(s2, {rbox("w1", "w2")}, {{"w2", co_a}});
  LabelledSequent s4 = extend(s3, {rbox("w1", "w3")}, {{"w3", co_b}});
  LabelledSequent s5 = extend(s4, {rbox("w1", "w4")}, {});
  LabelledSequent s6 = extend(s5, {}, {{"w4", conj}});

  // Left branch: group {0} secures p at the fresh successor w5.
  LabelledSequent d1_0 = extend(s6, {}, {{"w4", st_a}});
  LabelledSequent d1_1 = extend(d1_0, {rax({0}, "w4", "w5")}, {{"w5", p}});
  LabelledSequent d1_2 = extend(d1_1, {rax({0}, "w2", "w5")}, {});
  LabelledSequent d1_3 = extend(d1_2, {}, {{"w5", Formula::neg_atom("p")}});

  // Right branch: group {1} and w6.
  LabelledSequent d2_0 = extend(s6, {}, {{"w4", st_b}});
  LabelledSequent d2_1 = extend(d2_0, {rax({1}, "w4", "w6")}, {{"w6", q}});
  LabelledSequent d2_2 = extend(d2_1, {rax({1}, "w3", "w6")}, {});
  LabelledSequent d2_3 = extend(d2_2, {}, {{"w6", Formula::neg_atom("q")}});

  auto leaf = [](LabelledSequent seq, const std::string& label, const Formula& atom) {
    RuleApp app;
    app.rule = RuleName::Id;
    app.label = label;
    app.formula = atom;
    return ProofNode{std::move(seq), app, {}};
  };

  auto unary = [](LabelledSequent seq, RuleApp app, ProofNode premise) {
    return ProofNode{std::move(seq), std::move(app), {std::move(premise)}};
  };

  auto principal = [](RuleName r, std::string label, Formula f) {
    RuleApp app;
    app.rule = r;
    app.label = std::move(label);
    app.formula = std::move(f);
    return app;
  };
  auto with_fresh = [&](RuleName r, std::string label, Formula f, std::string fresh) {
    RuleApp app = principal(r, std::move(label), std::move(f));
    app.fresh = std::move(fresh);
    return app;
  };
  auto with_target = [&](RuleName r, std::string label, Formula f, std::string target) {
    RuleApp app = principal(r, std::move(label), std::move(f));
    app.target = std::move(target);
    return app;
  };

  // D1, bottom-up.
  RuleApp xstit_a = with_fresh(RuleName::XStit, "w4", st_a, "w5");
  RuleApp ioa_u1;
  ioa_u1.rule = RuleName::IOAU;
  ioa_u1.group = {0};
  ioa_u1.y = "w2";
  ioa_u1.z = "w5";
  ioa_u1.instance_id = 1;
  RuleApp xco_a = with_target(RuleName::XCoStit, "w2", co_a, "w5");
  ProofNode d1 = unary(d1_0, xstit_a,
                       unary(d1_1, ioa_u1,
                             unary(d1_2, xco_a, leaf(d1_3, "w5", p))));

  RuleApp xstit_b = with_fresh(RuleName::XStit, "w4", st_b, "w6");
  RuleApp ioa_u2;
  ioa_u2.rule = RuleName::IOAU;
  ioa_u2.group = {1};
  ioa_u2.y = "w3";
  ioa_u2.z = "w6";
  ioa_u2.instance_id = 1;
  RuleApp xco_b = with_target(RuleName::XCoStit, "w3", co_b, "w6");
  ProofNode d2 = unary(d2_0, xstit_b,
                       unary(d2_1, ioa_u2,
                             unary(d2_2, xco_b, leaf(d2_3, "w6", q))));

  RuleApp and_rule = principal(RuleName::And, "w4", conj);
  ProofNode n6{s6, and_rule, {std::move(d1), std::move(d2)}};

  RuleApp dia_rule = with_target(RuleName::Dia, "w1", dia_conj, "w4");
  RuleApp ioa_e;
  ioa_e.rule = RuleName::IOAE;
  ioa_e.x = "w1";
  ioa_e.fresh = "w4";
  ioa_e.instance_id = 1;
  RuleApp box_b_rule = with_fresh(RuleName::Box, "w1", box_b, "w3");
  RuleApp box_a_rule = with_fresh(RuleName::Box, "w1", box_a, "w2");
  RuleApp or_inner = principal(RuleName::Or, "w1", Formula::lor(box_a, box_b));
  RuleApp or_outer = principal(RuleName::Or, "w1", goal);

  return unary(s0, or_outer,
               unary(s1, or_inner,
                     unary(s2, box_a_rule,
                           unary(s3, box_b_rule,
                                 unary(s4, ioa_e,
                                       unary(s5, dia_rule, std::move(n6)))))));
}

}  // namespace stit
