#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aperiodica {

// A letter is an index into an Alphabet. Alphabets are capped at 256 symbols.
using Letter = std::uint8_t;
using Word = std::vector<Letter>;
using WordSet = std::set<Word>;

// Ordered, duplicate-free list of symbol names. The position of a symbol is
// its letter index, so the order is part of the identity of the alphabet.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  // "a", "b", ... for small alphabets.
  static Alphabet latin(std::size_t size);

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(Letter letter) const;
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::optional<Letter> index_of(std::string_view symbol) const;
  bool contains(const Word& w) const;

  // True when every symbol is a single character, in which case words render
  // without separators.
  bool single_char() const { return single_char_; }

  // Renders a word as symbol names. Multi-character alphabets join with '.'.
  std::string format(std::span<const Letter> w) const;

  // Inverse of format(). A '.' anywhere in the text forces dot-separated
  // parsing; otherwise single-character alphabets are read per character.
  Word parse(std::string_view text) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
  bool single_char_ = true;
};

bool is_palindrome(std::span<const Letter> w);

Word reversed(std::span<const Letter> w);

// Drops the first and last letter. Requires |w| >= 2.
Word inner(std::span<const Letter> w);

// Palindromic members of a set of equal-length words.
WordSet palindromes_in(const WordSet& atlas);

enum class PalindromicStatus { excluded, undetermined };

struct PalindromeVerdict {
  std::set<std::size_t> lengths_with_palindromes;
  // Smallest n with no palindromes of length n and none of length n + 1.
  std::optional<std::size_t> first_excluding_pair;
  PalindromicStatus status = PalindromicStatus::undetermined;
  std::size_t max_length_checked = 0;
};

// Applies the two-consecutive-lengths criterion: a palindrome of length m
// shrinks to one of length m - 2 by dropping its end letters, so two adjacent
// palindrome-free lengths n, n + 1 rule out every length >= n.
// atlas_by_length must hold exactly the keys 1..N_max.
PalindromeVerdict exclusion_verdict(const std::map<std::size_t, WordSet>& atlas_by_length);

std::string to_string(PalindromicStatus status);

}  // namespace aperiodica
