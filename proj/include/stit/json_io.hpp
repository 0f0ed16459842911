#ifndef STIT_JSON_IO_HPP
#define STIT_JSON_IO_HPP

#include <string>
#include <variant>

#include "stit/model.hpp"
#include "stit/sequent.hpp"

namespace stit {

struct JsonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Model files: {"mode": "layered"|"explicit", ...}; see README for the full
// key set.
std::string model_to_json(const LayeredModel& m);
std::string model_to_json(const ExplicitModel& m);
std::variant<LayeredModel, ExplicitModel> model_from_json(const std::string& text);

// Proof files: nodes {"rule", "inst", "conclusion", "premises"}, sequents as
// {"rel": [...], "fml": [["label","formula text"], ...]}.
std::string proof_to_json(const ProofNode& t);
ProofNode proof_from_json(const std::string& text, int agents);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace stit

#endif  // STIT_JSON_IO_HPP
