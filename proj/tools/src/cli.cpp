#include "cli.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "aperiodica/errors.hpp"
#include "aperiodica/modelset.hpp"
#include "aperiodica/rudin_shapiro.hpp"
#include "aperiodica/spectral.hpp"
#include "aperiodica/substitution.hpp"
#include "io.hpp"

namespace aperiodica::cli {

using nlohmann::json;

namespace {

// Raised when a check ran to completion and came out negative.
struct VerdictFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  std::string format = "json";
  bool tsv = false;
  std::string path;

  bool as_tsv() const { return tsv || format == "tsv"; }
};

void add_output_options(CLI::App* sub, OutputOptions& o) {
  auto* format = sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "tsv"}));
  auto* tsv = sub->add_flag("--tsv", o.tsv, "Same as --format tsv");
  format->excludes(tsv);
  sub->add_option("-o,--output", o.path, "Write to FILE instead of stdout");
}

void emit(const OutputOptions& o, std::ostream& out, const std::string& text) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.path);
  if (!file) {
    throw InputError("cannot write '" + o.path + "'");
  }
  file << text;
}

std::string dump(const json& doc) {
  return doc.dump(2) + "\n";
}

// Doubles are rounded to 15 significant digits before serialisation so that
// output does not depend on the last bits of a computation.
double num15(double x) {
  const double r = std::strtod(decimal(x).c_str(), nullptr);
  return r == 0.0 ? 0.0 : r;
}

json sorted_words(const Alphabet& alphabet, const WordSet& words) {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto& w : words) {
    out.push_back(alphabet.format(w));
  }
  std::sort(out.begin(), out.end());
  return out;
}

WindowOptions window_options(std::optional<Letter> seed) {
  WindowOptions options;
  options.seed = seed;
  if (const char* env = std::getenv("APERIODICA_MAX_PREFIX"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    errno = 0;
    const auto value = std::strtoull(env, &end, 10);
    if (errno != 0 || *end != '\0' || value == 0) {
      throw InputError(std::string("APERIODICA_MAX_PREFIX must be a positive integer, got '") + env + "'");
    }
    options.max_prefix = static_cast<std::size_t>(value);
  }
  return options;
}

// ---------------------------------------------------------------- atlas

struct AtlasArgs {
  std::string rule;
  std::size_t n = 0;
  std::string method = "induction";
  OutputOptions output;
};

void cmd_atlas(const AtlasArgs& a, std::ostream& out, std::ostream& err) {
  const auto file = load_rule(a.rule);
  const auto& alphabet = file.rule.alphabet();
  if (a.n == 0) {
    throw InputError("-N must be at least 1");
  }
  require_primitive(file.rule);

  json doc{{"N", a.n}, {"method", a.method}};
  std::optional<Atlas> induction;
  std::optional<Atlas> window;
  if (a.method != "window") {
    induction = atlas_by_induction(file.rule, a.n);
  }
  if (a.method != "induction") {
    window = atlas_by_window(file.rule, a.n, window_options(file.seed));
  }
  const Atlas& atlas = induction ? *induction : *window;
  doc["count"] = atlas.count();
  doc["words"] = sorted_words(alphabet, atlas.words);
  if (induction) {
    doc["induction"] = {{"count", induction->count()}, {"iterations", induction->iterations}};
  }
  if (window) {
    doc["window"] = {{"count", window->count()}, {"prefix_length", window->prefix_length}};
  }
  bool agree = true;
  if (induction && window) {
    agree = induction->words == window->words;
    doc["methods_agree"] = agree;
  }

  if (a.output.as_tsv()) {
    std::string text;
    for (const auto& w : doc["words"]) {
      text += w.get<std::string>() + "\n";
    }
    emit(a.output, out, text);
  } else {
    emit(a.output, out, dump(doc));
  }
  if (!agree) {
    err << "atlas methods disagree at N = " << a.n << ": induction has " << induction->count()
        << " words, window has " << window->count() << "\n";
    throw VerdictFailure("atlas methods disagree");
  }
}

// -------------------------------------------------------------- exclude

struct ExcludeArgs {
  std::string rule;
  std::size_t nmax = 0;
  bool phi = false;
  OutputOptions output;
};

void cmd_exclude(const ExcludeArgs& a, std::ostream& out) {
  const auto file = load_rule(a.rule);
  if (a.nmax == 0) {
    throw InputError("--nmax must be at least 1");
  }
  if (a.phi && file.rule.size() != 4) {
    throw InputError("--phi projects four letters (a, b -> 0; c, d -> 1); the rule has " +
                     std::to_string(file.rule.size()));
  }
  require_primitive(file.rule);
  const Alphabet& shown = a.phi ? rudin_shapiro::binary_alphabet() : file.rule.alphabet();

  std::map<std::size_t, WordSet> by_length;
  for (auto& atlas : atlases_by_induction(file.rule, a.nmax)) {
    if (a.phi) {
      WordSet projected;
      for (const auto& w : atlas.words) {
        projected.insert(rudin_shapiro::phi(w));
      }
      by_length[atlas.length] = std::move(projected);
    } else {
      by_length[atlas.length] = std::move(atlas.words);
    }
  }
  const auto verdict = exclusion_verdict(by_length);

  json rows = json::array();
  std::string tsv = "n\tcount\tpalindromes\n";
  for (const auto& [n, words] : by_length) {
    const auto pals = palindromes_in(words);
    rows.push_back({{"n", n}, {"count", words.size()}, {"palindromes", sorted_words(shown, pals)}});
    tsv += std::to_string(n) + "\t" + std::to_string(words.size()) + "\t" + std::to_string(pals.size()) + "\n";
  }
  json pair = nullptr;
  if (verdict.first_excluding_pair) {
    pair = json::array({*verdict.first_excluding_pair, *verdict.first_excluding_pair + 1});
  }
  const json doc{{"N_max", a.nmax},
                 {"projection", a.phi ? json("phi") : json(nullptr)},
                 {"lengths_with_palindromes", verdict.lengths_with_palindromes},
                 {"first_excluding_pair", pair},
                 {"status", to_string(verdict.status)},
                 {"rows", rows}};
  emit(a.output, out, a.output.as_tsv() ? tsv : dump(doc));
}

// ------------------------------------------------------------- rs-table

struct TableArgs {
  std::size_t nmax = 20;
  bool golden = false;
  OutputOptions output;
};

json verdict_json(const PalindromeVerdict& v) {
  json pair = nullptr;
  if (v.first_excluding_pair) {
    pair = json::array({*v.first_excluding_pair, *v.first_excluding_pair + 1});
  }
  return {{"lengths_with_palindromes", v.lengths_with_palindromes},
          {"first_excluding_pair", pair},
          {"status", to_string(v.status)}};
}

void cmd_rs_table(const TableArgs& a, std::ostream& out, std::ostream& err) {
  if (a.nmax == 0) {
    throw InputError("N_max must be at least 1");
  }
  const auto table = rudin_shapiro::table1(a.nmax);
  if (a.output.as_tsv()) {
    emit(a.output, out, rudin_shapiro::to_tsv(table.rows));
  } else {
    json rows = json::array();
    for (const auto& r : table.rows) {
      rows.push_back({{"n", r.n},
                      {"count4", r.count4},
                      {"pal4", rudin_shapiro::to_string(r.pal4)},
                      {"count2", r.count2},
                      {"pal2", rudin_shapiro::to_string(r.pal2)},
                      {"inferred_none4", r.inferred_none4},
                      {"inferred_none2", r.inferred_none2}});
    }
    emit(a.output, out,
         dump({{"rows", rows}, {"quaternary", verdict_json(table.quaternary)}, {"binary", verdict_json(table.binary)}}));
  }
  if (a.golden) {
    const auto mismatches = rudin_shapiro::compare(rudin_shapiro::published_table1(), table.rows);
    for (const auto& m : mismatches) {
      err << "mismatch n=" << m.n << " " << m.column << ": expected '" << m.expected << "', got '" << m.actual
          << "'\n";
    }
    if (!mismatches.empty()) {
      throw VerdictFailure(std::to_string(mismatches.size()) + " cells differ from the stored table");
    }
  }
}

// ------------------------------------------------------------- modelset

struct ModelSetArgs {
  std::string action;
  std::string spec;
  std::string radius;
  std::size_t top = 20;
  double b = 0.01;
  OutputOptions output;
};

std::string omega_name(Omega o) {
  return o == Omega::golden ? "golden" : "sqrt";
}

void warn_if_not_generic(const ModelSetSpec& spec, std::ostream& err) {
  const auto check = modelset::check_generic(spec.window, spec.lattice);
  if (check.generic) {
    return;
  }
  err << "warning: window is not generic (W4 fails):";
  for (const auto& w : check.witnesses) {
    err << " " << w.endpoint << " = " << to_string(w.value) << " lies in L* (m = " << w.coords.m
        << ", n = " << w.coords.n << ");";
  }
  if (const auto shift = modelset::suggest_generic_shift(spec.window, spec.lattice)) {
    err << " shifting the window by " << to_string(*shift) << " restores genericity\n";
  } else {
    err << " no shift on the 1/12 grid restores genericity\n";
  }
}

json genericity_json(const ModelSetSpec& spec) {
  const auto check = modelset::check_generic(spec.window, spec.lattice);
  json witnesses = json::array();
  for (const auto& w : check.witnesses) {
    witnesses.push_back({{"endpoint", w.endpoint}, {"value", field_element_json(w.value)}, {"m", w.coords.m},
                         {"n", w.coords.n}});
  }
  json doc{{"W1", check.w1}, {"W2", check.w2}, {"W3", check.w3},
           {"W4", check.generic}, {"generic", check.generic}, {"witnesses", witnesses}};
  if (!check.generic) {
    const auto shift = modelset::suggest_generic_shift(spec.window, spec.lattice);
    doc["shift_suggestion"] = shift ? json(to_string(*shift)) : json(nullptr);
  }
  return doc;
}

void cmd_modelset(const ModelSetArgs& a, std::ostream& out, std::ostream& err) {
  auto spec = load_modelset_spec(a.spec);
  if (!a.radius.empty()) {
    spec.radius = parse_rational(a.radius);
  }
  const Rational radius = spec.radius.value_or(Rational(500));
  const auto& lattice = spec.lattice;
  json doc{{"field", {{"d", lattice.d()}, {"omega", omega_name(lattice.field().omega_kind())}}},
           {"window", {{"lo", field_element_json(spec.window.lo())}, {"hi", field_element_json(spec.window.hi())}}}};

  warn_if_not_generic(spec, err);
  if (a.action == "check-window") {
    const auto g = genericity_json(spec);
    if (a.output.as_tsv()) {
      std::string text = "condition\tholds\n";
      for (const char* key : {"W1", "W2", "W3", "W4"}) {
        text += std::string(key) + "\t" + (g[key].get<bool>() ? "yes" : "no") + "\n";
      }
      emit(a.output, out, text);
    } else {
      doc.update(g);
      emit(a.output, out, dump(doc));
    }
    return;
  }

  doc["R"] = to_string(radius);
  const auto patch = modelset::enumerate_patch(lattice, spec.window, radius);

  if (a.action == "generate") {
    const auto seq = modelset::gaps_to_letters(patch);
    json points = json::array();
    std::string tsv = "index\tm\tn\tvalue\n";
    for (std::size_t i = 0; i < patch.points.size(); ++i) {
      const auto& p = patch.points[i];
      points.push_back(lattice_point_json(lattice, p));
      tsv += std::to_string(i) + "\t" + std::to_string(p.m) + "\t" + std::to_string(p.n) + "\t" +
             decimal(lattice.value(p)) + "\n";
    }
    json legend = json::array();
    for (std::size_t i = 0; i < seq.legend.size(); ++i) {
      auto gap = lattice_point_json(lattice, seq.legend[i]);
      gap["letter"] = seq.alphabet.symbol(static_cast<Letter>(i));
      gap["exact"] = to_string(lattice.element(seq.legend[i]));
      legend.push_back(gap);
    }
    doc["count"] = patch.points.size();
    doc["points"] = points;
    doc["legend"] = legend;
    if (seq.legend.size() == 2) {
      doc["gap_ratio"] = field_element_json(lattice.element(seq.legend[1]) / lattice.element(seq.legend[0]));
    }
    doc["origin"] = seq.origin;
    doc["sequence"] = seq.alphabet.format(seq.letters);
    emit(a.output, out, a.output.as_tsv() ? tsv : dump(doc));
    return;
  }

  if (a.action == "symmetry") {
    doc["center"] = field_element_json(modelset::centro_symmetry_center(spec.window));
    doc["centro_symmetric"] = true;  // every interval is symmetric about its midpoint
    const auto witness = modelset::inversion_witness(patch);
    if (witness) {
      doc["witness"] = {{"t", lattice_point_json(lattice, witness->shift)},
                        {"t_star", decimal(lattice.star_value(witness->shift))},
                        {"range", {decimal(witness->range_lo), decimal(witness->range_hi)}},
                        {"points_checked", witness->points_checked}};
    } else {
      doc["witness"] = nullptr;
      err << "no inversion witness among the candidate shifts of this patch\n";
    }
    if (a.output.as_tsv()) {
      std::string text = "t_m\tt_n\tt\tpoints_checked\n";
      if (witness) {
        text += std::to_string(witness->shift.m) + "\t" + std::to_string(witness->shift.n) + "\t" +
                decimal(lattice.value(witness->shift)) + "\t" + std::to_string(witness->points_checked) + "\n";
      }
      emit(a.output, out, text);
    } else {
      emit(a.output, out, dump(doc));
    }
    return;
  }

  // palindromes
  const auto seq = modelset::gaps_to_letters(patch);
  const auto hits = modelset::palindrome_scan(seq.letters, std::nullopt, 1, -seq.origin);
  const auto report = modelset::strong_palindromicity_report(hits, a.b);
  json top = json::array();
  std::string tsv = "center\tlength\n";
  for (std::size_t i = 0; i < hits.size() && i < a.top; ++i) {
    top.push_back({{"center", hits[i].center()}, {"length", hits[i].length}});
    tsv += decimal(hits[i].center()) + "\t" + std::to_string(hits[i].length) + "\n";
  }
  json records = json::array();
  for (const auto& r : report.records) {
    records.push_back({{"center", r.center}, {"length", r.length}, {"log_ratio", num15(r.log_ratio)}});
  }
  doc["letters"] = seq.letters.size();
  doc["origin"] = seq.origin;
  doc["max_length"] = hits.empty() ? 0 : hits.front().length;
  doc["longest"] = top;
  doc["strong_palindromicity"] = {{"B", a.b},
                                  {"records", records},
                                  {"record_decreases", report.record_decreases},
                                  {"min_log_ratio", report.min_log_ratio ? json(num15(*report.min_log_ratio))
                                                                          : json(nullptr)}};
  emit(a.output, out, a.output.as_tsv() ? tsv : dump(doc));
}

// ------------------------------------------------------------- spectrum

struct SpectrumArgs {
  std::string rule;
  std::string spec;
  std::size_t size = 0;
  double lambda = 1.0;
  std::string values;
  std::string boundary = "dirichlet";
  std::size_t ids_points = 101;
  OutputOptions output;
};

std::vector<double> parse_values(const std::string& text, const Alphabet& alphabet) {
  std::vector<double> values(alphabet.size());
  if (text.empty()) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i] = static_cast<double>(i);
    }
    return values;
  }
  std::vector<bool> seen(alphabet.size(), false);
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw InputError("--values entries look like a=0, got '" + item + "'");
    }
    const auto letter = alphabet.index_of(item.substr(0, eq));
    if (!letter) {
      throw InputError("--values names unknown letter '" + item.substr(0, eq) + "'");
    }
    const std::string number = item.substr(eq + 1);
    char* end = nullptr;
    const double v = std::strtod(number.c_str(), &end);
    if (number.empty() || *end != '\0' || !std::isfinite(v)) {
      throw InputError("--values: '" + number + "' is not a real number");
    }
    values[*letter] = v;
    seen[*letter] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw InputError("--values gives no value for letter '" + alphabet.symbol(static_cast<Letter>(i)) + "'");
    }
  }
  return values;
}

void cmd_spectrum(const SpectrumArgs& a, std::ostream& out) {
  if (a.size == 0) {
    throw InputError("-N must be at least 1");
  }
  const auto boundary = a.boundary == "periodic" ? spectral::Boundary::periodic : spectral::Boundary::dirichlet;
  std::string source = "free";
  spectral::TridiagonalOperator op;
  if (!a.rule.empty()) {
    source = "rule";
    const auto file = load_rule(a.rule);
    require_primitive(file.rule);
    auto stream = fixed_point_stream(file.rule, file.seed);
    const auto x = stream.prefix(a.size);
    const auto values = parse_values(a.values, file.rule.alphabet());
    op = spectral::build_finite(x, values, a.lambda, {0, a.size}, boundary);
  } else if (!a.spec.empty()) {
    source = "modelset";
    const auto spec = load_modelset_spec(a.spec);
    Rational radius(static_cast<long long>(std::max<std::size_t>(a.size, 16)));
    std::optional<modelset::LetterSequence> seq;
    for (int attempt = 0; attempt < 40; ++attempt, radius *= 2) {
      seq = modelset::gaps_to_letters(modelset::enumerate_patch(spec.lattice, spec.window, radius));
      if (seq->letters.size() >= a.size) {
        break;
      }
    }
    if (seq->letters.size() < a.size) {
      throw LimitError("model-set patch did not reach " + std::to_string(a.size) + " letters");
    }
    const auto values = parse_values(a.values, seq->alphabet);
    op = spectral::build_finite(seq->letters, values, a.lambda, {0, a.size}, boundary);
  } else {
    op = spectral::free_laplacian(a.size);
    op.boundary = boundary;
  }

  const auto ev = spectral::eigenvalues(op);
  const auto [lo, hi] = spectral::spectral_bounds(op);
  const auto grid = spectral::ids_grid(ev, lo, hi, std::max<std::size_t>(a.ids_points, 2));

  if (a.output.as_tsv()) {
    std::string text = "E\tN(E)\n";
    for (const auto& [e, n] : grid) {
      text += decimal(e) + "\t" + decimal(n) + "\n";
    }
    emit(a.output, out, text);
    return;
  }
  json eigen = json::array();
  for (double e : ev) {
    eigen.push_back(num15(e));
  }
  json ids = json::array();
  for (const auto& [e, n] : grid) {
    ids.push_back({num15(e), num15(n)});
  }
  json doc{{"size", a.size},     {"lambda", a.lambda}, {"source", source}, {"boundary", a.boundary},
           {"eigenvalues", eigen}, {"ids", ids}};
  if (boundary == spectral::Boundary::dirichlet) {
    doc["sturm_count_above"] = spectral::sturm_count(op, hi + 1.0);
  }
  emit(a.output, out, dump(doc));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Substitution sequences, palindromes, model sets and finite-section spectra", "aperiodica"};
  app.require_subcommand(1);

  AtlasArgs atlas;
  auto* atlas_cmd = app.add_subcommand("atlas", "Length-N factor set of a primitive substitution");
  atlas_cmd->add_option("--rule", atlas.rule, "Rule file (JSON)")->required();
  atlas_cmd->add_option("-N", atlas.n, "Word length")->required();
  atlas_cmd->add_option("--method", atlas.method, "Enumeration method")
      ->check(CLI::IsMember({"induction", "window", "both"}));
  add_output_options(atlas_cmd, atlas.output);

  ExcludeArgs exclude;
  auto* exclude_cmd = app.add_subcommand("exclude", "Palindrome lengths and the consecutive-length exclusion");
  exclude_cmd->add_option("--rule", exclude.rule, "Rule file (JSON)")->required();
  exclude_cmd->add_option("--nmax", exclude.nmax, "Largest length scanned")->required();
  exclude_cmd->add_flag("--phi", exclude.phi, "Project a,b -> 0 and c,d -> 1 first");
  add_output_options(exclude_cmd, exclude.output);

  TableArgs table;
  auto* table_cmd = app.add_subcommand("rs-table", "Rudin-Shapiro complexity and palindrome table");
  table_cmd->add_option("nmax,--nmax", table.nmax, "Rows 1..N_max (default 20)");
  table_cmd->add_flag("--golden", table.golden, "Compare with the stored table; exit 1 on any difference");
  add_output_options(table_cmd, table.output);

  ModelSetArgs ms;
  auto* ms_cmd = app.add_subcommand("modelset", "Cut-and-project sets over a real quadratic field");
  ms_cmd->add_option("action", ms.action, "generate | check-window | symmetry | palindromes")
      ->required()
      ->check(CLI::IsMember({"generate", "check-window", "symmetry", "palindromes"}));
  ms_cmd->add_option("--spec", ms.spec, "Model-set spec file (JSON)")->required();
  ms_cmd->add_option("-R", ms.radius, "Patch radius as an exact rational (overrides the spec)");
  ms_cmd->add_option("--top", ms.top, "Longest palindromes listed (palindromes)");
  ms_cmd->add_option("-B", ms.b, "Exponent in exp(B|m|)/length (palindromes)");
  add_output_options(ms_cmd, ms.output);

  SpectrumArgs sp;
  auto* sp_cmd = app.add_subcommand("spectrum", "Eigenvalues and IDS of a finite tight-binding section");
  auto* sp_rule = sp_cmd->add_option("--rule", sp.rule, "Sequence from a substitution fixed point");
  auto* sp_spec = sp_cmd->add_option("--spec", sp.spec, "Sequence from a model set");
  sp_rule->excludes(sp_spec);
  sp_cmd->add_option("-N", sp.size, "Section size")->required();
  sp_cmd->add_option("--lambda", sp.lambda, "Coupling");
  sp_cmd->add_option("--values", sp.values, "Potential per letter, e.g. a=0,b=1");
  sp_cmd->add_option("--boundary", sp.boundary, "Boundary condition")
      ->check(CLI::IsMember({"dirichlet", "periodic"}));
  sp_cmd->add_option("--ids-points", sp.ids_points, "Energies in the IDS grid");
  add_output_options(sp_cmd, sp.output);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (atlas_cmd->parsed()) {
      cmd_atlas(atlas, out, err);
    } else if (exclude_cmd->parsed()) {
      cmd_exclude(exclude, out);
    } else if (table_cmd->parsed()) {
      cmd_rs_table(table, out, err);
    } else if (ms_cmd->parsed()) {
      cmd_modelset(ms, out, err);
    } else if (sp_cmd->parsed()) {
      cmd_spectrum(sp, out);
    }
  } catch (const VerdictFailure& e) {
    err << "error: " << e.what() << "\n";
    return exit_verdict;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ConstructionError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const LimitError& e) {
    err << "error: " << e.what() << "\n";
    return exit_verdict;
  }
  return exit_ok;
}

}  // namespace aperiodica::cli
