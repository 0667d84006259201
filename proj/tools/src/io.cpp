#include "io.hpp"

#include <fstream>
#include <sstream>

#include "aperiodica/errors.hpp"

namespace aperiodica::cli {

using nlohmann::json;

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open '" + path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

namespace {

const json& member(const json& doc, const char* key, const std::string& what) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw InputError(what + " is missing \"" + key + "\"");
  }
  return doc.at(key);
}

Rational rational_value(const json& v, const std::string& what) {
  if (v.is_string()) {
    return parse_rational(v.get<std::string>());
  }
  if (v.is_number_integer()) {
    return Rational(v.get<std::int64_t>());
  }
  throw InputError(what + " must be an exact rational written as a string (\"p/q\") or an integer");
}

FieldElement endpoint(const json& v, std::int64_t d, const std::string& what) {
  if (v.is_object()) {
    const Rational p = v.contains("p") ? rational_value(v.at("p"), what + ".p") : Rational(0);
    const Rational q = v.contains("q") ? rational_value(v.at("q"), what + ".q") : Rational(0);
    return FieldElement(d, p, q);
  }
  if (v.is_string() || v.is_number_integer()) {
    return FieldElement(d, rational_value(v, what));
  }
  throw InputError(what + " is not expressible in Q(sqrt " + std::to_string(d) +
                   "); use \"p/q\" or {\"p\": ..., \"q\": ...} for p + q*sqrt(d)");
}

}  // namespace

RuleFile parse_rule(const json& doc) {
  const auto& alpha = member(doc, "alphabet", "rule file");
  if (!alpha.is_array()) {
    throw InputError("rule file: \"alphabet\" must be an array of symbol strings");
  }
  std::vector<std::string> symbols;
  for (const auto& s : alpha) {
    if (!s.is_string()) {
      throw InputError("rule file: alphabet symbols must be strings");
    }
    symbols.push_back(s.get<std::string>());
  }
  Alphabet alphabet(std::move(symbols));

  const auto& imgs = member(doc, "images", "rule file");
  if (!imgs.is_object()) {
    throw InputError("rule file: \"images\" must map each symbol to its image word");
  }
  std::vector<Word> images;
  for (const auto& sym : alphabet.symbols()) {
    if (!imgs.contains(sym) || !imgs.at(sym).is_string()) {
      throw InputError("rule file: no image for symbol '" + sym + "'");
    }
    images.push_back(alphabet.parse(imgs.at(sym).get<std::string>()));
  }
  for (const auto& [key, _] : imgs.items()) {
    if (!alphabet.index_of(key)) {
      throw InputError("rule file: image given for unknown symbol '" + key + "'");
    }
  }

  std::optional<Letter> seed;
  if (doc.contains("seed") && !doc.at("seed").is_null()) {
    if (!doc.at("seed").is_string()) {
      throw InputError("rule file: \"seed\" must be a symbol string");
    }
    const auto name = doc.at("seed").get<std::string>();
    seed = alphabet.index_of(name);
    if (!seed) {
      throw InputError("rule file: seed '" + name + "' is not in the alphabet");
    }
  }
  return RuleFile{SubstitutionRule(alphabet, std::move(images)), seed};
}

RuleFile load_rule(const std::string& path) {
  return parse_rule(read_json_file(path));
}

ModelSetSpec parse_modelset_spec(const json& doc) {
  const auto& dv = member(doc, "d", "model-set spec");
  if (!dv.is_number_integer()) {
    throw InputError("model-set spec: \"d\" must be an integer");
  }
  const auto d = dv.get<std::int64_t>();
  Omega omega = Omega::sqrt_d;
  if (doc.contains("omega")) {
    const auto& o = doc.at("omega");
    const std::string name = o.is_string() ? o.get<std::string>() : std::string();
    if (name == "golden") {
      omega = Omega::golden;
    } else if (name == "sqrt") {
      omega = Omega::sqrt_d;
    } else {
      throw InputError("model-set spec: \"omega\" must be \"golden\" or \"sqrt\"");
    }
  }
  modelset::LatticeSpec lattice(QuadField(d, omega));
  const auto& w = member(doc, "window", "model-set spec");
  auto lo = endpoint(member(w, "lo", "window"), d, "window.lo");
  auto hi = endpoint(member(w, "hi", "window"), d, "window.hi");
  std::optional<Rational> radius;
  if (doc.contains("R")) {
    radius = rational_value(doc.at("R"), "R");
  }
  return ModelSetSpec{lattice, modelset::Window(std::move(lo), std::move(hi)), radius};
}

ModelSetSpec load_modelset_spec(const std::string& path) {
  return parse_modelset_spec(read_json_file(path));
}

nlohmann::json field_element_json(const FieldElement& z) {
  return json{{"exact", to_string(z)}, {"decimal", decimal(z.to_double())}};
}

nlohmann::json lattice_point_json(const modelset::LatticeSpec& lattice, modelset::LatticeCoords c) {
  return json{{"m", c.m}, {"n", c.n}, {"value", decimal(lattice.value(c))}};
}

}  // namespace aperiodica::cli
