// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Runs the axiom-provability checks, the reference-derivation
// checks with mutations, the countermodel loop, the randomized soundness and
// oracle-agreement suites, the canonical-model checks, and the frame
// validator comparison.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "stit/canonical.hpp"
#include "stit/json_io.hpp"
#include "stit/prover.hpp"
#include "stit/sequent.hpp"

using namespace stit;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail = "") {
  std::printf("criterion %d (%s): %s%s%s\n", criterion, name.c_str(), pass ? "PASS" : "FAIL",
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ProofNode* descend(ProofNode& n, const std::vector<int>& path) {
  ProofNode* cur = &n;
  for (int i : path) cur = &cur->premises[i];
  return cur;
}

// 1. The characteristic axioms are provable within 10 seconds and 12 labels,
//    and the emitted derivations check.
void criterion1() {
  const char* axioms[] = {"[]p -> [0]p", "[0]p -> p",
                          "(<>[0]p & <>[1]q) -> <>([0]p & [1]q)"};
  bool pass = true;
  std::ostringstream detail;
  for (const char* text : axioms) {
    auto t0 = std::chrono::steady_clock::now();
    ProverResult r =
        prove(parse_formula(text, 2), 2, Logic::Tstit, SearchBudget{12, 200000, 2000});
    double secs = seconds_since(t0);
    bool ok = r.kind == VerdictKind::Proved && secs < 10.0 && r.stats.labels <= 12 &&
              check_proof(*r.proof, Logic::Tstit, 2).accepted;
    if (!ok) {
      pass = false;
      detail << text << " failed; ";
    }
  }
  report(1, "axiom provability", pass, detail.str());
}

// 2. The reference derivation is accepted; five systematic mutations are
//    each rejected with a node path.
void criterion2() {
  bool pass = check_proof(appendix_b_fixture(), Logic::Xstit, 2).accepted;
  std::ostringstream detail;
  if (!pass) detail << "fixture rejected; ";

  auto zeros = [](int n) { return std::vector<int>(n, 0); };
  std::vector<std::pair<std::string, std::function<void(ProofNode&)>>> mutations = {
      {"freshness violation",
       [&](ProofNode& f) { descend(f, zeros(7))->rule.fresh = "w3"; }},
      {"dropped relational atom",
       [&](ProofNode& f) { descend(f, zeros(9))->conclusion.rels.erase(rax({0}, "w2", "w5")); }},
      {"swapped rule name",
       [&](ProofNode& f) { descend(f, zeros(6))->rule.rule = RuleName::Or; }},
      {"broken instance linkage",
       [&](ProofNode& f) { descend(f, zeros(8))->rule.instance_id = 7; }},
      {"altered leaf",
       [&](ProofNode& f) { descend(f, zeros(10))->rule.formula = Formula::atom("q"); }},
  };
  for (auto& [name, mutate] : mutations) {
    ProofNode f = appendix_b_fixture();
    mutate(f);
    CheckResult res = check_proof(f, Logic::Xstit, 2);
    if (res.accepted || res.node_path.empty()) {
      pass = false;
      detail << name << " not rejected with a path; ";
    }
  }
  report(2, "reference derivation and mutations", pass, detail.str());
}

// 3. Ten non-theorems refute within 10 seconds each; the model checker
//    confirms falsity at the root world and the frame validator passes.
void criterion3() {
  const char* non_theorems[] = {"p -> []p", "[0]p -> [1]p", "<>p -> []p", "G p -> p",
                                "<0>p -> p", "[]p -> G p",   "F p -> G p", "p -> H p",
                                "P p -> p",  "<>p -> <0>p"};
  bool pass = true;
  std::ostringstream detail;
  for (const char* text : non_theorems) {
    auto t0 = std::chrono::steady_clock::now();
    ProverResult r =
        prove(parse_formula(text, 2), 2, Logic::Tstit, SearchBudget{12, 200000, 2000});
    double secs = seconds_since(t0);
    bool ok = r.kind == VerdictKind::Refuted && secs < 10.0;
    if (ok) {
      const ExplicitModel& m = *r.countermodel;
      int root = m.world_index(r.interpretation.at(r.root_label));
      ok = root >= 0 && !satisfies(m, root, parse_formula(text, 2)) &&
           check_frame(m).all_pass();
    }
    if (!ok) {
      pass = false;
      detail << text << " failed; ";
    }
  }
  report(3, "countermodel loop", pass, detail.str());
}

// 4. 300 random formulas x 50 generated models: whatever is proved holds at
//    every world.
void criterion4() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(424242);
  std::vector<LayeredModel> models;
  for (int i = 0; i < 50; ++i) models.push_back(testing::random_layered_model(rng, 2, 16, 2));

  testing::FormulaGenOptions opt;
  opt.max_size = 12;
  int proved = 0, violations = 0;
  for (int i = 0; i < 300; ++i) {
    Formula f = testing::random_formula(rng, opt);
    ProverResult r;
    try {
      r = prove(f, 2, Logic::Tstit, SearchBudget{10, 20000, 600});
    } catch (const ProverInternalError&) {
      ++violations;
      continue;
    }
    if (r.kind != VerdictKind::Proved) continue;
    ++proved;
    for (const auto& m : models)
      for (int w = 0; w < m.world_count(); ++w)
        for (int j = 0; j <= m.T; ++j)
          if (!satisfies(m, w, j, f)) ++violations;
  }
  std::ostringstream detail;
  detail << proved << " proved, " << violations << " violations, " << seconds_since(t0)
         << "s";
  report(4, "soundness suite", violations == 0 && seconds_since(t0) < 300.0, detail.str());
}

// 5. Canonical construction: zero mismatches and all frame conditions for
//    the four sample formulas, under two minutes total.
void criterion5() {
  auto t0 = std::chrono::steady_clock::now();
  struct Case {
    const char* text;
    int agents;
  };
  Case cases[] = {{"p", 1}, {"<>p", 1}, {"[]p -> [0]p", 2},
                  {"(<>[0]p & <>[1]q) -> <>([0]p & [1]q)", 2}};
  bool pass = true;
  std::ostringstream detail;
  for (const Case& c : cases) {
    TruthLemmaReport r = truth_lemma_check(parse_formula(c.text, c.agents), c.agents, 2);
    bool ok = r.ok() && r.frame.all_pass();
    // layer locality, coalition stability and stationarity on the same model
    if (ok) {
      ClosureSet closure = closure_of({to_nnf(parse_formula(c.text, c.agents))});
      ConsistencyOracle oracle(c.agents, closure);
      auto mcss = enumerate_mcs(closure, c.agents, oracle);
      PreCanonicalModel pre = build_pre_canonical(mcss, c.agents);
      LayeredModel canon = build_canonical(pre, 3);
      ExplicitModel e = induced_explicit(canon);
      int n = canon.world_count();
      auto layer_of = [n](int w) { return w / n; };
      for (const auto& edge : e.r_box.edges())
        if (layer_of(edge.first) != layer_of(edge.second)) ok = false;
      for (const auto& edge : e.r_ag.edges())
        if (layer_of(edge.first) != layer_of(edge.second)) ok = false;
      for (int a = 0; a < n && ok; ++a)
        for (int b = 0; b < n; ++b)
          if (e.r_ag.has(n + a, n + b) != e.r_ag.has(2 * n + a, 2 * n + b)) ok = false;
      for (const Formula& f : closure.formulas())
        for (int w = 0; w < n && ok; ++w) {
          bool at1 = satisfies(canon, w, 1, f);
          for (int j = 2; j <= canon.T; ++j)
            if (satisfies(canon, w, j, f) != at1) ok = false;
        }
    }
    if (!ok) {
      pass = false;
      detail << c.text << " failed; ";
    }
  }
  double secs = seconds_since(t0);
  detail << secs << "s";
  report(5, "canonical construction", pass && secs < 120.0, detail.str());
}

// 6. Oracle agreement on 200 random subsets of small closures: zero
//    disagreements between the model search and the prover.
void criterion6() {
  std::mt19937_64 rng(606060);
  const char* pool[] = {"p", "<>p", "[]p", "p & q", "[]p -> [0]p", "[0]p | [1]q", "<0><1>p"};
  int disagreements = 0, decisive = 0;
  for (int round = 0; round < 200; ++round) {
    const char* text = pool[rng() % 7];
    ClosureSet closure = closure_of({to_nnf(parse_formula(text, 2))});
    ConsistencyOracle oracle(2, closure);
    std::vector<Formula> reps = closure.representative_pairs();
    std::set<Formula> subset;
    for (const Formula& rep : reps)
      if (rng() % 2) subset.insert(rng() % 2 ? rep : complement(rep));
    if (subset.empty()) subset.insert(reps[0]);
    try {
      oracle.check_agreement(subset);
      bool brute = oracle.brute_satisfiable(subset);
      auto pv = oracle.prover_satisfiable(subset);
      if (brute && pv) ++decisive;
    } catch (const OracleDisagreement&) {
      ++disagreements;
    }
  }
  std::ostringstream detail;
  detail << decisive << " jointly decisive, " << disagreements << " disagreements";
  report(6, "oracle agreement", disagreements == 0, detail.str());
}

// 7. The frame validator matches an independently written triple-loop
//    oracle on 50 corrupted models.
void criterion7() {
  std::mt19937_64 rng(707070);
  int mismatches = 0;
  for (int round = 0; round < 50; ++round) {
    ExplicitModel m = testing::random_corrupted_model(rng, 6);
    FrameReport report_ = check_frame(m);
    testing::OracleVerdicts oracle = testing::frame_oracle(m);
    for (const auto& [key, expected] : oracle.pass) {
      const ConditionResult* got = report_.find(key);
      if (!got || got->skipped || got->pass != expected) ++mismatches;
    }
  }
  report(7, "frame validator equivalence", mismatches == 0,
         std::to_string(mismatches) + " mismatches");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  if (failures) std::printf("%d criterion(s) FAILED\n", failures);
  else std::printf("all criteria passed\n");
  return failures == 0 ? 0 : 1;
}
