#include "stit/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace stit {

using nlohmann::json;

namespace {

json relation_to_json(const Relation& r, const std::vector<std::string>& names) {
  json out = json::array();
  for (const auto& [a, b] : r.edges()) out.push_back({names[a], names[b]});
  return out;
}

Relation relation_from_json(const json& j, const std::vector<std::string>& names,
                            const std::string& key) {
  Relation r;
  if (!j.is_array()) throw JsonError(key + ": expected an array of pairs");
  auto index = [&](const std::string& n) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return static_cast<int>(i);
    throw JsonError(key + ": unknown world \"" + n + "\"");
  };
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw JsonError(key + ": each edge must be a pair");
    r.add(index(e[0].get<std::string>()), index(e[1].get<std::string>()));
  }
  return r;
}

json valuation_to_json(const std::map<std::string, std::set<int>>& valuation,
                       const std::vector<std::string>& names) {
  json out = json::object();
  for (const auto& [atom, ws] : valuation) {
    json arr = json::array();
    for (int w : ws) arr.push_back(names[w]);
    out[atom] = arr;
  }
  return out;
}

std::map<std::string, std::set<int>> valuation_from_json(const json& j,
                                                         const std::vector<std::string>& names) {
  std::map<std::string, std::set<int>> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::set<int>& ws = out[it.key()];
    for (const auto& n : it.value()) {
      const std::string name = n.get<std::string>();
      bool found = false;
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) {
          ws.insert(static_cast<int>(i));
          found = true;
        }
      if (!found) throw JsonError("valuation: unknown world \"" + name + "\"");
    }
  }
  return out;
}

}  // namespace

std::string model_to_json(const LayeredModel& m) {
  json j;
  j["mode"] = "layered";
  j["agents"] = m.agents;
  j["base_worlds"] = m.base_worlds;
  j["T"] = m.T;
  j["R_box_0"] = relation_to_json(m.r_box_0, m.base_worlds);
  json ri = json::object();
  for (int i = 0; i < m.agents; ++i)
    ri[std::to_string(i)] = relation_to_json(m.r_i_0[i], m.base_worlds);
  j["R_i_0"] = ri;
  j["R_fut"] = relation_to_json(m.r_fut, m.base_worlds);
  j["R_Ag_0"] = relation_to_json(m.r_ag_0, m.base_worlds);
  j["valuation"] = valuation_to_json(m.valuation, m.base_worlds);
  return j.dump(2);
}

std::string model_to_json(const ExplicitModel& m) {
  json j;
  j["mode"] = "explicit";
  j["agents"] = m.agents;
  j["worlds"] = m.worlds;
  j["serial_mode"] = m.serial_mode == SerialMode::OmegaTail ? "omega-tail" : "closed";
  j["R_box"] = relation_to_json(m.r_box, m.worlds);
  json ri = json::object();
  for (int i = 0; i < m.agents; ++i) ri[std::to_string(i)] = relation_to_json(m.r_i[i], m.worlds);
  j["R_i"] = ri;
  j["R_Ag"] = relation_to_json(m.r_ag, m.worlds);
  j["R_G"] = relation_to_json(m.r_g, m.worlds);
  j["R_H"] = relation_to_json(m.r_h, m.worlds);
  j["valuation"] = valuation_to_json(m.valuation, m.worlds);
  return j.dump(2);
}

std::variant<LayeredModel, ExplicitModel> model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw JsonError(std::string("model file: ") + e.what());
  }
  const std::string mode = j.value("mode", "");
  if (mode == "layered") {
    LayeredModel m;
    m.agents = j.at("agents").get<int>();
    m.base_worlds = j.at("base_worlds").get<std::vector<std::string>>();
    m.T = j.at("T").get<int>();
    m.r_box_0 = relation_from_json(j.at("R_box_0"), m.base_worlds, "R_box_0");
    m.r_i_0.resize(m.agents);
    for (int i = 0; i < m.agents; ++i)
      m.r_i_0[i] = relation_from_json(j.at("R_i_0").at(std::to_string(i)), m.base_worlds, "R_i_0");
    m.r_fut = relation_from_json(j.at("R_fut"), m.base_worlds, "R_fut");
    m.r_ag_0 = relation_from_json(j.at("R_Ag_0"), m.base_worlds, "R_Ag_0");
    m.valuation = valuation_from_json(j.value("valuation", json::object()), m.base_worlds);
    if (m.T < 1) throw JsonError("layered model: T must be >= 1");
    return m;
  }
  if (mode == "explicit") {
    ExplicitModel m;
    m.agents = j.at("agents").get<int>();
    m.worlds = j.at("worlds").get<std::vector<std::string>>();
    const std::string sm = j.value("serial_mode", "closed");
    if (sm != "closed" && sm != "omega-tail")
      throw JsonError("explicit model: serial_mode must be closed or omega-tail");
    m.serial_mode = sm == "omega-tail" ? SerialMode::OmegaTail : SerialMode::Closed;
    m.r_box = relation_from_json(j.at("R_box"), m.worlds, "R_box");
    m.r_i.resize(m.agents);
    for (int i = 0; i < m.agents; ++i)
      m.r_i[i] = relation_from_json(j.at("R_i").at(std::to_string(i)), m.worlds, "R_i");
    m.r_ag = relation_from_json(j.at("R_Ag"), m.worlds, "R_Ag");
    m.r_g = relation_from_json(j.at("R_G"), m.worlds, "R_G");
    m.r_h = relation_from_json(j.at("R_H"), m.worlds, "R_H");
    m.valuation = valuation_from_json(j.value("valuation", json::object()), m.worlds);
    return m;
  }
  throw JsonError("model file: \"mode\" must be \"layered\" or \"explicit\"");
}

// ---------------------------------------------------------------------------
// Proofs
// ---------------------------------------------------------------------------

namespace {

json rel_atom_to_json(const RelAtom& a) {
  json out = json::array();
  switch (a.kind) {
    case RelKind::Rbox: out.push_back("Rbox"); break;
    case RelKind::Ri:
      out.push_back("Ri");
      out.push_back(a.agent);
      break;
    case RelKind::RAg: out.push_back("RAg"); break;
    case RelKind::RG: out.push_back("RG"); break;
    case RelKind::RGbar: out.push_back("RGbar"); break;
    case RelKind::RH: out.push_back("RH"); break;
    case RelKind::RAx:
      out.push_back("RA");
      out.push_back(a.group);
      break;
    case RelKind::Eq: out.push_back("Eq"); break;
  }
  out.push_back(a.from);
  out.push_back(a.to);
  return out;
}

RelAtom rel_atom_from_json(const json& j) {
  if (!j.is_array() || j.size() < 3) throw JsonError("rel: malformed relational atom");
  const std::string kind = j[0].get<std::string>();
  if (kind == "Ri") {
    if (j.size() != 4) throw JsonError("rel: Ri expects [\"Ri\", agent, from, to]");
    return ri(j[1].get<int>(), j[2].get<std::string>(), j[3].get<std::string>());
  }
  if (kind == "RA") {
    if (j.size() != 4) throw JsonError("rel: RA expects [\"RA\", [agents], from, to]");
    return rax(j[1].get<std::vector<int>>(), j[2].get<std::string>(), j[3].get<std::string>());
  }
  if (j.size() != 3) throw JsonError("rel: expected [kind, from, to]");
  const std::string from = j[1].get<std::string>(), to = j[2].get<std::string>();
  if (kind == "Rbox") return rbox(from, to);
  if (kind == "RAg") return rag(from, to);
  if (kind == "RG") return rg(from, to);
  if (kind == "RGbar") return rgbar(from, to);
  if (kind == "RH") return rh(from, to);
  if (kind == "Eq") return req(from, to);
  throw JsonError("rel: unknown atom kind \"" + kind + "\"");
}

json sequent_to_json(const LabelledSequent& s) {
  json out;
  json rels = json::array();
  for (const auto& a : s.rels) rels.push_back(rel_atom_to_json(a));
  json fmls = json::array();
  for (const auto& [l, f] : s.fmls) fmls.push_back({l, render(f)});
  out["rel"] = rels;
  out["fml"] = fmls;
  return out;
}

LabelledSequent sequent_from_json(const json& j, int agents) {
  LabelledSequent s;
  for (const auto& r : j.value("rel", json::array())) s.rels.insert(rel_atom_from_json(r));
  for (const auto& lf : j.value("fml", json::array())) {
    if (!lf.is_array() || lf.size() != 2) throw JsonError("fml: expected [label, formula]");
    s.fmls.insert({lf[0].get<std::string>(), parse_formula(lf[1].get<std::string>(), agents)});
  }
  return s;
}

json inst_to_json(const RuleApp& app) {
  json out = json::object();
  if (!app.label.empty()) out["label"] = app.label;
  if (app.formula.valid()) out["formula"] = render(app.formula);
  if (!app.target.empty()) out["target"] = app.target;
  if (app.agent >= 0) out["agent"] = app.agent;
  if (!app.group.empty()) out["group"] = app.group;
  if (!app.fresh.empty()) out["fresh"] = app.fresh;
  if (!app.x.empty()) out["x"] = app.x;
  if (!app.y.empty()) out["y"] = app.y;
  if (!app.z.empty()) out["z"] = app.z;
  if (!app.tuple.empty()) out["tuple"] = app.tuple;
  if (app.instance_id >= 0) out["instance"] = app.instance_id;
  if (app.rel) out["rel"] = rel_atom_to_json(*app.rel);
  return out;
}

RuleApp inst_from_json(const json& rule_j, const json& j, int agents) {
  RuleApp app;
  auto r = rule_from_name(rule_j.get<std::string>());
  if (!r) throw JsonError("unknown rule \"" + rule_j.get<std::string>() + "\"");
  app.rule = *r;
  app.label = j.value("label", "");
  if (j.contains("formula")) app.formula = parse_formula(j["formula"].get<std::string>(), agents);
  app.target = j.value("target", "");
  app.agent = j.value("agent", -1);
  if (j.contains("group")) app.group = j["group"].get<std::vector<int>>();
  app.fresh = j.value("fresh", "");
  app.x = j.value("x", "");
  app.y = j.value("y", "");
  app.z = j.value("z", "");
  if (j.contains("tuple")) app.tuple = j["tuple"].get<std::vector<std::string>>();
  app.instance_id = j.value("instance", -1);
  if (j.contains("rel")) app.rel = rel_atom_from_json(j["rel"]);
  return app;
}

json node_to_json(const ProofNode& n) {
  json out;
  out["rule"] = rule_name(n.rule.rule);
  out["inst"] = inst_to_json(n.rule);
  out["conclusion"] = sequent_to_json(n.conclusion);
  json prem = json::array();
  for (const auto& p : n.premises) prem.push_back(node_to_json(p));
  out["premises"] = prem;
  return out;
}

ProofNode node_from_json(const json& j, int agents) {
  ProofNode n;
  if (!j.contains("rule")) throw JsonError("proof node: missing \"rule\"");
  n.rule = inst_from_json(j["rule"], j.value("inst", json::object()), agents);
  n.conclusion = sequent_from_json(j.value("conclusion", json::object()), agents);
  for (const auto& p : j.value("premises", json::array()))
    n.premises.push_back(node_from_json(p, agents));
  return n;
}

}  // namespace

std::string proof_to_json(const ProofNode& t) { return node_to_json(t).dump(2); }

ProofNode proof_from_json(const std::string& text, int agents) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw JsonError(std::string("proof file: ") + e.what());
  }
  return node_from_json(j, agents);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw JsonError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw JsonError("cannot write " + path);
  out << content;
}

}  // namespace stit
