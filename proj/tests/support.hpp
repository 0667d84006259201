#pragma once

#include <set>
#include <string>
#include <vector>

#include "aperiodica/substitution.hpp"
#include "oracles.hpp"

namespace testing_support {

inline std::set<std::string> strings(const aperiodica::Alphabet& alphabet, const aperiodica::WordSet& words) {
  std::set<std::string> out;
  for (const auto& w : words) {
    out.insert(alphabet.format(w));
  }
  return out;
}

// Rule over single-character symbols, e.g. {{'a', "ab"}, {'b', "a"}}.
inline aperiodica::SubstitutionRule rule(const oracle::Images& images) {
  std::vector<std::string> symbols;
  for (const auto& [c, _] : images) {
    symbols.emplace_back(1, c);
  }
  aperiodica::Alphabet alphabet(symbols);
  std::vector<aperiodica::Word> words;
  for (const auto& [_, img] : images) {
    words.push_back(alphabet.parse(img));
  }
  return aperiodica::SubstitutionRule(alphabet, words);
}

inline const oracle::Images fibonacci{{'a', "ab"}, {'b', "a"}};
inline const oracle::Images thue_morse{{'a', "ab"}, {'b', "ba"}};
inline const oracle::Images rudin_shapiro{{'a', "ab"}, {'b', "ac"}, {'c', "db"}, {'d', "dc"}};
inline const oracle::Images period_doubling{{'a', "ab"}, {'b', "aa"}};

}  // namespace testing_support
