#ifndef STIT_MODEL_HPP
#define STIT_MODEL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stit/formula.hpp"

namespace stit {

// Binary relation on world indices.
class Relation {
 public:
  Relation() = default;

  void add(int a, int b) { edges_.insert({a, b}); }
  bool has(int a, int b) const { return edges_.count({a, b}) > 0; }
  const std::set<std::pair<int, int>>& edges() const { return edges_; }
  bool empty() const { return edges_.empty(); }

  std::vector<int> successors(int a) const;
  std::vector<int> predecessors(int b) const;

  bool is_reflexive(const std::vector<int>& domain, int* witness = nullptr) const;
  bool is_symmetric(std::pair<int, int>* witness = nullptr) const;
  bool is_transitive(std::pair<int, int>* witness = nullptr) const;

  static Relation total(int n);
  static Relation identity(int n);
  static Relation intersect(const std::vector<Relation>& rels);
  static Relation converse(const Relation& r);

  bool operator==(const Relation& o) const { return edges_ == o.edges_; }

 private:
  std::set<std::pair<int, int>> edges_;
};

enum class SerialMode { Closed, OmegaTail };

// Finitely represented temporal Kripke STIT model: base worlds crossed with
// layers 0..T, where layer T is a stationary tail standing for all later
// layers.  Layer 0 uses the *_0 relations, layers >= 1 use r_fut for the
// settledness, choice, and grand-coalition relations.  The temporal relation
// connects (w,j) to (w,k) for the same base world and j < k.
struct LayeredModel {
  int agents = 1;
  std::vector<std::string> base_worlds;
  int T = 1;
  Relation r_box_0;
  std::vector<Relation> r_i_0;  // one per agent
  Relation r_ag_0;
  Relation r_fut;
  std::map<std::string, std::set<int>> valuation;  // atom -> base worlds

  int world_count() const { return static_cast<int>(base_worlds.size()); }
  int world_index(const std::string& name) const;
  const Relation& box_at(int layer) const { return layer == 0 ? r_box_0 : r_fut; }
  const Relation& choice_at(int agent, int layer) const {
    return layer == 0 ? r_i_0[agent] : r_fut;
  }
  const Relation& coalition_at(int layer) const { return layer == 0 ? r_ag_0 : r_fut; }
};

// Fully explicit model with arbitrary edge sets; produced by countermodel
// extraction and accepted from model files.  In omega-tail mode, worlds
// without temporal successors repeat forever in a stationary tail.
struct ExplicitModel {
  int agents = 1;
  std::vector<std::string> worlds;
  Relation r_box;
  std::vector<Relation> r_i;
  Relation r_ag;
  Relation r_g;
  Relation r_h;
  std::map<std::string, std::set<int>> valuation;  // atom -> worlds
  SerialMode serial_mode = SerialMode::Closed;

  int world_count() const { return static_cast<int>(worlds.size()); }
  int world_index(const std::string& name) const;
  bool g_maximal(int w) const { return r_g.successors(w).empty(); }
};

struct ConditionResult {
  bool pass = true;
  bool skipped = false;
  std::string witness;  // human-readable counterexample, empty on pass
};

// Frame-condition report.  Condition keys: equiv_box, equiv_i, equiv_Ag,
// C1..C7, G_transitive, G_serial, H_converse.
struct FrameReport {
  std::vector<std::pair<std::string, ConditionResult>> conditions;

  const ConditionResult* find(const std::string& key) const;
  bool all_pass() const;
  std::string summary() const;
};

enum class C7Variant { Disjoint, Irreflexive };

struct FrameCheckOptions {
  C7Variant c7 = C7Variant::Disjoint;
  // C2 is brute force over |cell|^agents tuples; checks beyond this bound are
  // reported as skipped.
  long long c2_tuple_bound = 10'000'000;
};

FrameReport check_frame(const ExplicitModel& m, const FrameCheckOptions& opt = {});
FrameReport check_frame(const LayeredModel& m, const FrameCheckOptions& opt = {});

// Flattens the layered model into the induced explicit model on worlds
// (base, layer) for layer <= T.  serial_mode is OmegaTail by construction.
ExplicitModel induced_explicit(const LayeredModel& m);

struct UnsupportedOperator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Truth at a world.  Xstit operators are rejected (UnsupportedOperator).
bool satisfies(const ExplicitModel& m, int world, const Formula& f);
bool satisfies(const LayeredModel& m, int base_world, int layer, const Formula& f);

struct GeneratorParams {
  int agents = 2;
  int cells = 1;
  std::vector<int> cell_shape = {2, 2};  // per-agent choice counts per cell
  int atoms = 1;
  int T = 1;
  int max_worlds = 64;
};

// Builds a model whose layer-0 cells are choice grids, so every frame
// condition holds by construction.  Deterministic per seed.
LayeredModel generate_model(const GeneratorParams& params, std::uint64_t seed);

}  // namespace stit

#endif  // STIT_MODEL_HPP
