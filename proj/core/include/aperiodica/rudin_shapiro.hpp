#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "aperiodica/substitution.hpp"
#include "aperiodica/words.hpp"

namespace aperiodica::rudin_shapiro {

// a -> ab, b -> ac, c -> db, d -> dc over the alphabet {a, b, c, d}.
SubstitutionRule quaternary_rule();

// {0, 1}; letter index equals the binary value.
const Alphabet& binary_alphabet();

// Number of (possibly overlapping) adjacent "11" bit pairs in n.
unsigned block_count_a(std::uint64_t n);

// x_0 .. x_{len-1} with x_n = (1 − (−1)^{a(n)}) / 2.
Word binary_prefix(std::size_t length);

// a, b -> 0 and c, d -> 1.
Word phi(std::span<const Letter> quaternary);

// Compares phi(quaternary fixed point from a) against binary_prefix.
bool equivalence_check(std::size_t length);

// Projected quaternary atlases; element i is the binary atlas at N = i + 1.
std::vector<Atlas> binary_atlases(std::size_t max_length);
Atlas binary_atlas(std::size_t length);

enum class Cell { yes, no, blank };

struct Table1Row {
  std::size_t n = 0;
  std::size_t count4 = 0;
  Cell pal4 = Cell::blank;
  std::size_t count2 = 0;
  Cell pal2 = Cell::blank;
  // Set for rows past the first palindrome-free pair, where the table prints
  // a blank but the two-consecutive-lengths argument implies "no".
  bool inferred_none4 = false;
  bool inferred_none2 = false;

  bool same_cells(const Table1Row& other) const {
    return n == other.n && count4 == other.count4 && pal4 == other.pal4 && count2 == other.count2 &&
           pal2 == other.pal2;
  }
};

struct Table1 {
  std::vector<Table1Row> rows;
  PalindromeVerdict quaternary;
  PalindromeVerdict binary;
};

Table1 table1(std::size_t max_length = 20);

// The 20 rows as published, blanks included.
const std::vector<Table1Row>& published_table1();

std::string to_string(Cell cell);

// Columns n, count4, pal4, count2, pal2 with a header line; blanks are empty.
std::string to_tsv(const std::vector<Table1Row>& rows);
std::vector<Table1Row> parse_tsv(const std::string& text);

struct CellMismatch {
  std::size_t n;
  std::string column;
  std::string expected;
  std::string actual;
};

// Cell-wise comparison of every row of `actual` whose n also appears in
// `expected`. A shorter `actual` is a prefix check.
std::vector<CellMismatch> compare(const std::vector<Table1Row>& expected, const std::vector<Table1Row>& actual);

}  // namespace aperiodica::rudin_shapiro
