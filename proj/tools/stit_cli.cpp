// Command-line front end: proof search, model checking, model generation,
// canonical-model construction, and proof checking.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stit/canonical.hpp"
#include "stit/json_io.hpp"
#include "stit/model.hpp"
#include "stit/prover.hpp"
#include "stit/sequent.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitSoftware = 70;
constexpr int kExitIo = 74;

stit::Logic parse_logic(const std::string& s) {
  if (s == "ldm") return stit::Logic::Ldm;
  if (s == "tstit") return stit::Logic::Tstit;
  if (s == "xstit") return stit::Logic::Xstit;
  throw CLI::ValidationError("--logic must be ldm, tstit or xstit");
}

struct ProveArgs {
  std::string formula;
  std::string logic = "tstit";
  int agents = 2;
  int max_labels = 12;
  long max_nodes = 200000;
  int max_depth = 2000;
  std::string proof_out;
  std::string model_out;
  bool quiet = false;
};

int run_prove(const ProveArgs& args) {
  stit::Formula f = stit::parse_formula(args.formula, args.agents);
  stit::SearchBudget budget{args.max_labels, args.max_nodes, args.max_depth};
  stit::ProverResult r = stit::prove(f, args.agents, parse_logic(args.logic), budget);
  switch (r.kind) {
    case stit::VerdictKind::Proved: {
      if (!args.quiet)
        std::cout << "Proved (" << r.stats.nodes << " rule applications)\n";
      if (!args.proof_out.empty())
        stit::write_file(args.proof_out, stit::proof_to_json(*r.proof));
      return 0;
    }
    case stit::VerdictKind::Refuted: {
      if (!args.quiet) {
        std::cout << "Refuted; root world " << r.interpretation.at(r.root_label) << "\n";
        std::cout << stit::model_to_json(*r.countermodel) << "\n";
      }
      if (!args.model_out.empty())
        stit::write_file(args.model_out, stit::model_to_json(*r.countermodel));
      return 1;
    }
    case stit::VerdictKind::Unknown:
      if (!args.quiet) std::cout << "Unknown: " << r.report << "\n";
      return 2;
  }
  return kExitSoftware;
}

int run_check_model(const std::string& path, const std::string& c7, long long c2_bound) {
  stit::FrameCheckOptions opt;
  if (c7 == "irreflexive")
    opt.c7 = stit::C7Variant::Irreflexive;
  else if (c7 != "disjoint")
    throw CLI::ValidationError("--c7 must be disjoint or irreflexive");
  opt.c2_tuple_bound = c2_bound;
  auto model = stit::model_from_json(stit::read_file(path));
  stit::FrameReport report = std::holds_alternative<stit::LayeredModel>(model)
                                 ? check_frame(std::get<stit::LayeredModel>(model), opt)
                                 : check_frame(std::get<stit::ExplicitModel>(model), opt);
  std::cout << report.summary();
  return report.all_pass() ? 0 : 1;
}

int run_gen_model(int agents, int cells, const std::string& shape, int atoms, int T,
                  std::uint64_t seed, const std::string& out) {
  stit::GeneratorParams params;
  params.agents = agents;
  params.cells = cells;
  params.atoms = atoms;
  params.T = T;
  params.cell_shape.clear();
  std::stringstream ss(shape);
  std::string tok;
  while (std::getline(ss, tok, 'x'))
    if (!tok.empty()) params.cell_shape.push_back(std::stoi(tok));
  stit::LayeredModel m = stit::generate_model(params, seed);
  std::string text = stit::model_to_json(m);
  if (out.empty())
    std::cout << text << "\n";
  else
    stit::write_file(out, text);
  std::cerr << "# seed=" << seed << " worlds=" << m.world_count() << "\n";
  return 0;
}

int run_canonical(const std::string& formula, int agents, int T, const std::string& emit_model,
                  bool check_truth, const std::string& report_out) {
  stit::Formula f = stit::parse_formula(formula, agents);
  stit::TruthLemmaReport report = stit::truth_lemma_check(f, agents, T);

  nlohmann::json j;
  j["mcs_count"] = report.mcs_count;
  j["possible_count"] = report.possible_count;
  j["mismatches"] = report.mismatches;
  j["existence_failures"] = report.existence_failures;
  j["warnings"] = report.warnings;
  j["frame_all_pass"] = report.frame.all_pass();

  std::cout << "worlds (finite MCSs): " << report.mcs_count
            << (report.possible_count ? " (" + std::to_string(report.possible_count) +
                                            " undecided, excluded from strict checks)"
                                      : "")
            << "\n";
  std::cout << report.frame.summary();
  if (check_truth) {
    if (report.ok())
      std::cout << "truth lemma: all membership/truth equivalences hold\n";
    else {
      for (const auto& m : report.mismatches) std::cout << "mismatch: " << m << "\n";
      for (const auto& e : report.existence_failures) std::cout << "existence: " << e << "\n";
    }
  }
  for (const auto& w : report.warnings) std::cout << "warning: " << w << "\n";

  if (!emit_model.empty()) {
    stit::ClosureSet closure = stit::closure_of({stit::to_nnf(f)});
    stit::ConsistencyOracle oracle(agents, closure);
    auto mcss = stit::enumerate_mcs(closure, agents, oracle);
    auto pre = stit::build_pre_canonical(mcss, agents);
    stit::write_file(emit_model, stit::model_to_json(stit::build_canonical(pre, T)));
  }
  if (!report_out.empty()) stit::write_file(report_out, j.dump(2));
  return (check_truth && !report.ok()) || !report.frame.all_pass() ? 1 : 0;
}

int run_check_proof(const std::string& path, const std::string& logic, int agents) {
  stit::ProofNode proof = stit::proof_from_json(stit::read_file(path), agents);
  stit::CheckResult res = stit::check_proof(proof, parse_logic(logic), agents);
  for (const auto& w : res.warnings) std::cout << "warning: " << w << "\n";
  if (res.accepted) {
    std::cout << "accepted\n";
    return 0;
  }
  std::cout << "rejected at " << stit::path_string(res.node_path) << ": " << res.reason << "\n";
  return 1;
}

int run_batch(const std::string& path, const std::string& logic, int agents, int max_labels,
              long max_nodes, const std::string& csv_out) {
  std::ifstream in(path);
  if (!in) throw stit::JsonError("cannot read " + path);
  std::ostringstream csv;
  csv << "# logic=" << logic << " agents=" << agents << " max_labels=" << max_labels
      << " max_nodes=" << max_nodes << "\n";
  csv << "formula,verdict,labels,nodes,wall_ms\n";
  std::string line;
  stit::SearchBudget budget{max_labels, max_nodes, 2000};
  while (std::getline(in, line)) {
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty() || trimmed[0] == '#') continue;
    stit::Formula f = stit::parse_formula(trimmed, agents);
    auto t0 = std::chrono::steady_clock::now();
    stit::ProverResult r = stit::prove(f, agents, parse_logic(logic), budget);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    const char* verdict = r.kind == stit::VerdictKind::Proved    ? "proved"
                          : r.kind == stit::VerdictKind::Refuted ? "refuted"
                                                                 : "unknown";
    csv << '"' << trimmed << "\"," << verdict << "," << r.stats.labels << "," << r.stats.nodes
        << "," << ms << "\n";
  }
  if (csv_out.empty())
    std::cout << csv.str();
  else
    stit::write_file(csv_out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proof search, model checking and canonical models for temporal STIT logics"};
  app.require_subcommand(1);

  ProveArgs prove_args;
  auto* prove_cmd = app.add_subcommand("prove", "Run proof search on a formula");
  prove_cmd->add_option("formula", prove_args.formula, "Formula text")->required();
  prove_cmd->add_option("--logic", prove_args.logic, "ldm or tstit");
  prove_cmd->add_option("--agents", prove_args.agents, "Agent count")->check(CLI::PositiveNumber);
  prove_cmd->add_option("--max-labels", prove_args.max_labels)->check(CLI::PositiveNumber);
  prove_cmd->add_option("--max-nodes", prove_args.max_nodes)->check(CLI::PositiveNumber);
  prove_cmd->add_option("--max-depth", prove_args.max_depth)->check(CLI::PositiveNumber);
  prove_cmd->add_option("--proof-out", prove_args.proof_out, "Write the proof JSON here");
  prove_cmd->add_option("--model-out", prove_args.model_out, "Write the countermodel here");
  prove_cmd->add_flag("--quiet", prove_args.quiet);

  std::string model_path, c7 = "disjoint";
  long long c2_bound = 10'000'000;
  auto* check_model_cmd = app.add_subcommand("check-model", "Validate frame conditions");
  check_model_cmd->add_option("model", model_path, "Model JSON file")->required();
  check_model_cmd->add_option("--c7", c7, "disjoint or irreflexive");
  check_model_cmd->add_option("--c2-bound", c2_bound, "Tuple bound for the C2 check");

  int gen_agents = 2, gen_cells = 1, gen_atoms = 1, gen_T = 1;
  std::string gen_shape = "2x2", gen_out;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("gen-model", "Generate a frame-valid layered model");
  gen_cmd->add_option("--agents", gen_agents)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--cells", gen_cells)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--cell-shape", gen_shape, "Per-agent choice counts, e.g. 2x2");
  gen_cmd->add_option("--atoms", gen_atoms)->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--T", gen_T)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen_seed);
  gen_cmd->add_option("--out", gen_out);

  std::string canon_formula, canon_emit, canon_report;
  int canon_agents = 1, canon_T = 1;
  bool canon_truth = false;
  auto* canon_cmd = app.add_subcommand("canonical", "Build the canonical model for a formula");
  canon_cmd->add_option("formula", canon_formula)->required();
  canon_cmd->add_option("--agents", canon_agents)->check(CLI::PositiveNumber);
  canon_cmd->add_option("--layers", canon_T)->check(CLI::PositiveNumber);
  canon_cmd->add_option("--emit-model", canon_emit);
  canon_cmd->add_flag("--check-truth-lemma", canon_truth);
  canon_cmd->add_option("--report", canon_report, "Machine-readable report JSON");

  std::string proof_path, proof_logic = "tstit";
  int proof_agents = 2;
  auto* check_proof_cmd = app.add_subcommand("check-proof", "Validate a derivation file");
  check_proof_cmd->add_option("proof", proof_path)->required();
  check_proof_cmd->add_option("--logic", proof_logic, "ldm, tstit or xstit");
  check_proof_cmd->add_option("--agents", proof_agents)->check(CLI::PositiveNumber);

  std::string batch_path, batch_logic = "tstit", batch_csv;
  int batch_agents = 2, batch_labels = 12;
  long batch_nodes = 200000;
  auto* batch_cmd = app.add_subcommand("batch", "Prove a list of formulas, emit CSV");
  batch_cmd->add_option("file", batch_path, "One formula per line, # comments")->required();
  batch_cmd->add_option("--logic", batch_logic);
  batch_cmd->add_option("--agents", batch_agents)->check(CLI::PositiveNumber);
  batch_cmd->add_option("--max-labels", batch_labels)->check(CLI::PositiveNumber);
  batch_cmd->add_option("--max-nodes", batch_nodes)->check(CLI::PositiveNumber);
  batch_cmd->add_option("--csv", batch_csv, "CSV output path");

  std::string fixture_out;
  auto* fixture_cmd =
      app.add_subcommand("fixture", "Write the built-in independence-axiom derivation");
  fixture_cmd->add_option("--out", fixture_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (prove_cmd->parsed()) return run_prove(prove_args);
    if (check_model_cmd->parsed()) return run_check_model(model_path, c7, c2_bound);
    if (gen_cmd->parsed())
      return run_gen_model(gen_agents, gen_cells, gen_shape, gen_atoms, gen_T, gen_seed, gen_out);
    if (canon_cmd->parsed())
      return run_canonical(canon_formula, canon_agents, canon_T, canon_emit, canon_truth,
                           canon_report);
    if (check_proof_cmd->parsed()) return run_check_proof(proof_path, proof_logic, proof_agents);
    if (batch_cmd->parsed())
      return run_batch(batch_path, batch_logic, batch_agents, batch_labels, batch_nodes,
                       batch_csv);
    if (fixture_cmd->parsed()) {
      std::string text = stit::proof_to_json(stit::appendix_b_fixture());
      if (fixture_out.empty())
        std::cout << text << "\n";
      else
        stit::write_file(fixture_out, text);
      return 0;
    }
  } catch (const stit::ParseError& e) {
    std::cerr << "error: " << e.what() << " at position " << e.pos << "\n";
    return kExitUsage;
  } catch (const stit::JsonError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitSoftware;
  }
  return kExitUsage;
}
