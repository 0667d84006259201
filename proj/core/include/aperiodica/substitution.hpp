#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aperiodica/words.hpp"

namespace aperiodica {

// Letter-to-word map extended to words by concatenation.
class SubstitutionRule {
 public:
  SubstitutionRule(Alphabet alphabet, std::vector<Word> images);

  const Alphabet& alphabet() const { return alphabet_; }
  const Word& image(Letter letter) const;
  const std::vector<Word>& images() const { return images_; }
  std::size_t size() const { return alphabet_.size(); }

  Word apply(std::span<const Letter> w) const;

  // k-fold application; power(0) is the identity rule.
  SubstitutionRule power(unsigned k) const;

  friend bool operator==(const SubstitutionRule&, const SubstitutionRule&) = default;

 private:
  Alphabet alphabet_;
  std::vector<Word> images_;
};

// (outer ∘ inner)(a) = outer(inner(a)). Both rules must share one alphabet.
SubstitutionRule compose(const SubstitutionRule& outer, const SubstitutionRule& inner);

// Square nonnegative integer matrix; entry (i, j) counts letter i in the
// image of letter j. With this orientation matrix(σ∘ρ) = matrix(σ)·matrix(ρ).
class SubstitutionMatrix {
 public:
  explicit SubstitutionMatrix(std::size_t rank);
  SubstitutionMatrix(std::size_t rank, std::vector<std::uint64_t> row_major);

  static SubstitutionMatrix identity(std::size_t rank);

  std::size_t rank() const { return rank_; }
  std::uint64_t operator()(std::size_t i, std::size_t j) const { return entries_[i * rank_ + j]; }
  std::uint64_t& operator()(std::size_t i, std::size_t j) { return entries_[i * rank_ + j]; }
  std::uint64_t column_sum(std::size_t j) const;
  bool strictly_positive() const;

  friend SubstitutionMatrix operator*(const SubstitutionMatrix& a, const SubstitutionMatrix& b);
  friend bool operator==(const SubstitutionMatrix&, const SubstitutionMatrix&) = default;

 private:
  std::size_t rank_;
  std::vector<std::uint64_t> entries_;
};

SubstitutionMatrix matrix(const SubstitutionRule& rule);

// Wielandt's bound r² − 2r + 2 on the primitivity exponent (1 for r = 1).
std::size_t wielandt_bound(std::size_t rank);

// Smallest k with M^k strictly positive, searched up to the Wielandt bound,
// which makes the answer a complete decision. Works on the zero pattern, so
// large powers never overflow.
std::optional<std::size_t> is_primitive(const SubstitutionMatrix& m);

// Prefixes of the one-sided fixed point u = σ^k(u) starting with `seed`.
// Expansion is lazy; the buffer only grows.
class FixedPointStream {
 public:
  FixedPointStream(SubstitutionRule rule, Letter seed, unsigned power);

  const SubstitutionRule& rule() const { return rule_; }
  Letter seed() const { return seed_; }
  unsigned power() const { return power_; }

  // Ensures at least `length` letters are expanded and returns exactly that
  // many. The span is invalidated by the next call that grows the buffer.
  std::span<const Letter> prefix(std::size_t length);
  std::size_t expanded() const { return buffer_.size(); }

 private:
  SubstitutionRule rule_;
  SubstitutionRule powered_;
  Letter seed_;
  unsigned power_;
  Word buffer_;
};

// Finds the smallest k with σ^k(seed) starting with seed and |σ^k(seed)| > 1.
// Without a seed, the smallest such k over all letters wins, ties going to
// the first letter in alphabet order. Throws ConstructionError if none exists
// within wielandt_bound(r) + r powers.
FixedPointStream fixed_point_stream(const SubstitutionRule& rule, std::optional<Letter> seed = std::nullopt);

// Induced substitution on length-N words: the m windows of length N that start
// at the first m positions of σ(w), where m = |σ(w_0)|.
std::vector<Word> induced_substitute(const SubstitutionRule& rule, std::span<const Letter> w);

struct Atlas {
  std::size_t length = 0;
  WordSet words;
  // Number of set-map applications needed to reach the stable set (induction
  // method) or the final prefix length inspected (window method).
  std::size_t iterations = 0;
  std::size_t prefix_length = 0;

  std::size_t count() const { return words.size(); }
};

// Letters reachable from `seed` under repeated σ.
WordSet base_atlas(const SubstitutionRule& rule, Letter seed);

// A_1..A_N by induction: right-extend A_{N−1} by every letter, then iterate
// S ↦ ∪ set(induced_substitute(w)) until the set no longer changes.
// Element i of the result is A_{i+1}. Throws InputError for non-primitive
// rules.
std::vector<Atlas> atlases_by_induction(const SubstitutionRule& rule, std::size_t max_length);
Atlas atlas_by_induction(const SubstitutionRule& rule, std::size_t length);

struct WindowOptions {
  std::size_t initial_prefix = 64;
  std::size_t max_prefix = std::size_t{1} << 26;
  std::optional<Letter> seed;
};

// Collects distinct length-N factors of successively doubled fixed-point
// prefixes until one doubling adds nothing. Throws LimitError when
// max_prefix is reached first.
Atlas atlas_by_window(const SubstitutionRule& rule, std::size_t length, const WindowOptions& options = {});

std::size_t complexity(const SubstitutionRule& rule, std::size_t length);

// Throws InputError naming the Wielandt bound when the rule is not primitive.
void require_primitive(const SubstitutionRule& rule);

}  // namespace aperiodica
