#include "aperiodica/rudin_shapiro.hpp"

#include <bit>
#include <map>
#include <sstream>

#include "aperiodica/errors.hpp"

namespace aperiodica::rudin_shapiro {

SubstitutionRule quaternary_rule() {
  Alphabet abcd({"a", "b", "c", "d"});
  std::vector<Word> images{abcd.parse("ab"), abcd.parse("ac"), abcd.parse("db"), abcd.parse("dc")};
  return SubstitutionRule(std::move(abcd), std::move(images));
}

const Alphabet& binary_alphabet() {
  static const Alphabet alphabet({"0", "1"});
  return alphabet;
}

unsigned block_count_a(std::uint64_t n) {
  // Bit i of n & (n >> 1) is set exactly when bits i and i+1 of n are both 1.
  return static_cast<unsigned>(std::popcount(n & (n >> 1)));
}

Word binary_prefix(std::size_t length) {
  Word out(length);
  for (std::size_t n = 0; n < length; ++n) {
    out[n] = static_cast<Letter>(block_count_a(n) & 1U);
  }
  return out;
}

Word phi(std::span<const Letter> quaternary) {
  Word out;
  out.reserve(quaternary.size());
  for (Letter l : quaternary) {
    if (l > 3) {
      throw InputError("phi: letter index " + std::to_string(l) + " is not one of a, b, c, d");
    }
    out.push_back(l < 2 ? 0 : 1);
  }
  return out;
}

bool equivalence_check(std::size_t length) {
  auto stream = fixed_point_stream(quaternary_rule(), Letter{0});
  const auto projected = phi(stream.prefix(length));
  return projected == binary_prefix(length);
}

std::vector<Atlas> binary_atlases(std::size_t max_length) {
  auto quaternary = atlases_by_induction(quaternary_rule(), max_length);
  std::vector<Atlas> out;
  out.reserve(quaternary.size());
  for (const auto& atlas : quaternary) {
    Atlas projected{atlas.length, {}, atlas.iterations, 0};
    for (const auto& w : atlas.words) {
      projected.words.insert(phi(w));
    }
    out.push_back(std::move(projected));
  }
  return out;
}

Atlas binary_atlas(std::size_t length) {
  return std::move(binary_atlases(length).back());
}

namespace {

Cell cell_for(const WordSet& atlas, std::size_t n, const PalindromeVerdict& verdict, bool& inferred) {
  if (verdict.first_excluding_pair && n > *verdict.first_excluding_pair + 1) {
    inferred = true;
    return Cell::blank;
  }
  return palindromes_in(atlas).empty() ? Cell::no : Cell::yes;
}

}  // namespace

Table1 table1(std::size_t max_length) {
  if (max_length == 0) {
    throw InputError("table1 needs at least one row");
  }
  const auto quaternary = atlases_by_induction(quaternary_rule(), max_length);
  std::map<std::size_t, WordSet> by_length4;
  std::map<std::size_t, WordSet> by_length2;
  for (const auto& atlas : quaternary) {
    by_length4[atlas.length] = atlas.words;
    auto& projected = by_length2[atlas.length];
    for (const auto& w : atlas.words) {
      projected.insert(phi(w));
    }
  }
  Table1 table;
  table.quaternary = exclusion_verdict(by_length4);
  table.binary = exclusion_verdict(by_length2);
  for (std::size_t n = 1; n <= max_length; ++n) {
    Table1Row row;
    row.n = n;
    row.count4 = by_length4[n].size();
    row.count2 = by_length2[n].size();
    row.pal4 = cell_for(by_length4[n], n, table.quaternary, row.inferred_none4);
    row.pal2 = cell_for(by_length2[n], n, table.binary, row.inferred_none2);
    table.rows.push_back(row);
  }
  return table;
}

const std::vector<Table1Row>& published_table1() {
  using enum Cell;
  static const std::vector<Table1Row> rows = [] {
    struct Raw {
      std::size_t n, c4;
      Cell p4;
      std::size_t c2;
      Cell p2;
    };
    const Raw raw[] = {
        {1, 4, yes, 2, yes},      {2, 8, no, 4, yes},       {3, 16, yes, 8, yes},     {4, 24, no, 16, yes},
        {5, 32, yes, 24, yes},    {6, 40, no, 36, yes},     {7, 48, yes, 46, yes},    {8, 56, no, 56, yes},
        {9, 64, no, 64, no},      {10, 72, blank, 72, yes}, {11, 80, blank, 80, no},  {12, 88, blank, 88, yes},
        {13, 96, blank, 96, no},  {14, 104, blank, 104, yes}, {15, 112, blank, 112, no}, {16, 120, blank, 120, no},
        {17, 128, blank, 128, blank}, {18, 136, blank, 136, blank}, {19, 144, blank, 144, blank},
        {20, 152, blank, 152, blank},
    };
    std::vector<Table1Row> out;
    for (const auto& r : raw) {
      Table1Row row;
      row.n = r.n;
      row.count4 = r.c4;
      row.pal4 = r.p4;
      row.count2 = r.c2;
      row.pal2 = r.p2;
      row.inferred_none4 = r.p4 == blank;
      row.inferred_none2 = r.p2 == blank;
      out.push_back(row);
    }
    return out;
  }();
  return rows;
}

std::string to_string(Cell cell) {
  switch (cell) {
    case Cell::yes:
      return "yes";
    case Cell::no:
      return "no";
    case Cell::blank:
      return "";
  }
  return "";
}

std::string to_tsv(const std::vector<Table1Row>& rows) {
  std::ostringstream out;
  out << "n\tcount4\tpal4\tcount2\tpal2\n";
  for (const auto& r : rows) {
    out << r.n << '\t' << r.count4 << '\t' << to_string(r.pal4) << '\t' << r.count2 << '\t' << to_string(r.pal2)
        << '\n';
  }
  return out.str();
}

namespace {

Cell parse_cell(const std::string& text) {
  if (text == "yes") {
    return Cell::yes;
  }
  if (text == "no") {
    return Cell::no;
  }
  if (text.empty()) {
    return Cell::blank;
  }
  throw InputError("table cell must be yes, no or empty, got '" + text + "'");
}

std::size_t parse_count(const std::string& text) {
  std::size_t pos = 0;
  const auto value = std::stoull(text, &pos);
  if (pos != text.size()) {
    throw InputError("bad integer cell '" + text + "'");
  }
  return value;
}

}  // namespace

std::vector<Table1Row> parse_tsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Table1Row> rows;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    if (header) {
      header = false;
      if (line.rfind("n\t", 0) == 0) {
        continue;
      }
    }
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      auto tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) {
        break;
      }
      start = tab + 1;
    }
    if (cols.size() != 5) {
      throw InputError("table row needs 5 tab-separated columns: '" + line + "'");
    }
    try {
      Table1Row row;
      row.n = parse_count(cols[0]);
      row.count4 = parse_count(cols[1]);
      row.pal4 = parse_cell(cols[2]);
      row.count2 = parse_count(cols[3]);
      row.pal2 = parse_cell(cols[4]);
      rows.push_back(row);
    } catch (const std::logic_error& e) {
      throw InputError("bad table row '" + line + "': " + e.what());
    }
  }
  return rows;
}

std::vector<CellMismatch> compare(const std::vector<Table1Row>& expected, const std::vector<Table1Row>& actual) {
  std::map<std::size_t, const Table1Row*> index;
  for (const auto& row : expected) {
    index[row.n] = &row;
  }
  std::vector<CellMismatch> out;
  for (const auto& row : actual) {
    auto it = index.find(row.n);
    if (it == index.end()) {
      continue;
    }
    const auto& want = *it->second;
    auto check = [&](const char* column, const std::string& e, const std::string& a) {
      if (e != a) {
        out.push_back({row.n, column, e, a});
      }
    };
    check("count4", std::to_string(want.count4), std::to_string(row.count4));
    check("pal4", to_string(want.pal4), to_string(row.pal4));
    check("count2", std::to_string(want.count2), std::to_string(row.count2));
    check("pal2", to_string(want.pal2), to_string(row.pal2));
  }
  return out;
}

}  // namespace aperiodica::rudin_shapiro
