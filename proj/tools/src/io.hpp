#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "aperiodica/modelset.hpp"
#include "aperiodica/substitution.hpp"
#include "aperiodica/words.hpp"

namespace aperiodica::cli {

struct RuleFile {
  SubstitutionRule rule;
  std::optional<Letter> seed;
};

// {"alphabet": [...], "images": {"a": "ab", ...}, "seed": "a"}; seed optional.
RuleFile parse_rule(const nlohmann::json& doc);
RuleFile load_rule(const std::string& path);

struct ModelSetSpec {
  modelset::LatticeSpec lattice;
  modelset::Window window;
  std::optional<Rational> radius;
};

// {"d": 5, "omega": "golden"|"sqrt", "window": {"lo": ..., "hi": ...}, "R": "500"}.
// Endpoints are rational strings or {"p": ..., "q": ...} meaning p + q·√d.
ModelSetSpec parse_modelset_spec(const nlohmann::json& doc);
ModelSetSpec load_modelset_spec(const std::string& path);

nlohmann::json read_json_file(const std::string& path);

nlohmann::json field_element_json(const FieldElement& z);
nlohmann::json lattice_point_json(const modelset::LatticeSpec& lattice, modelset::LatticeCoords c);

}  // namespace aperiodica::cli
