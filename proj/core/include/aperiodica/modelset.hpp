#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aperiodica/quadratic_field.hpp"
#include "aperiodica/words.hpp"

// Codimension-one cut-and-project sets: physical and internal space are both
// the real line, the lattice is {(z, z*) : z ∈ Z + Zω} and the star map is
// Galois conjugation in Q(√d).
namespace aperiodica::modelset {

// Coordinates of z = m + n·ω in L.
struct LatticeCoords {
  std::int64_t m = 0;
  std::int64_t n = 0;

  friend bool operator==(const LatticeCoords&, const LatticeCoords&) = default;
  friend auto operator<=>(const LatticeCoords&, const LatticeCoords&) = default;
};

inline LatticeCoords operator+(LatticeCoords a, LatticeCoords b) { return {a.m + b.m, a.n + b.n}; }
inline LatticeCoords operator-(LatticeCoords a, LatticeCoords b) { return {a.m - b.m, a.n - b.n}; }
inline LatticeCoords operator-(LatticeCoords a) { return {-a.m, -a.n}; }

class LatticeSpec {
 public:
  explicit LatticeSpec(QuadField field);

  const QuadField& field() const { return field_; }
  std::int64_t d() const { return field_.d(); }

  FieldElement omega() const;
  FieldElement omega_conjugate() const;

  // z = m + nω and z* = m + nω'.
  FieldElement element(LatticeCoords c) const;
  FieldElement star(LatticeCoords c) const;
  double value(LatticeCoords c) const;
  double star_value(LatticeCoords c) const;

  // Exact order of m + nω in R, integer arithmetic only.
  int compare(LatticeCoords a, LatticeCoords b) const;
  int sign(LatticeCoords c) const;

  // Coordinates of z in L, if z ∈ L.
  std::optional<LatticeCoords> coordinates(const FieldElement& z) const;
  // Coordinates (m, n) with x = m + nω', if x ∈ L*.
  std::optional<LatticeCoords> star_coordinates(const FieldElement& x) const;

 private:
  QuadField field_;
  double sqrt_d_;
};

// Galois conjugation p + q√d ↦ p − q√d.
FieldElement star(const FieldElement& z);

// Closed interval [lo, hi] with lo < hi.
class Window {
 public:
  Window(FieldElement lo, FieldElement hi);

  const FieldElement& lo() const { return lo_; }
  const FieldElement& hi() const { return hi_; }
  FieldElement length() const { return hi_ - lo_; }
  bool contains(const FieldElement& x) const { return lo_ <= x && x <= hi_; }
  Window shifted(const FieldElement& by) const { return Window(lo_ + by, hi_ + by); }

 private:
  FieldElement lo_;
  FieldElement hi_;
};

struct BoundaryHit {
  std::string endpoint;  // "lo" or "hi"
  FieldElement value;
  LatticeCoords coords;  // value = m + nω'
};

struct GenericityCheck {
  // W1 compact, W2 closure of a nonempty interior, W3 null boundary. For a
  // closed interval with lo < hi these hold by construction.
  bool w1 = true;
  bool w2 = true;
  bool w3 = true;
  // W4: no endpoint lies in L*.
  bool generic = false;
  std::vector<BoundaryHit> witnesses;
};

GenericityCheck check_generic(const Window& window, const LatticeSpec& lattice);

// Smallest rational shift k/denominator (|k| = 1, 2, ..., positive first)
// that makes the shifted window generic.
std::optional<Rational> suggest_generic_shift(const Window& window, const LatticeSpec& lattice,
                                              std::int64_t denominator = 12, std::int64_t max_steps = 10000);

struct ModelSetPatch {
  LatticeSpec lattice;
  Window window;
  Rational radius;
  // Λ(Ω) ∩ [−R, R], strictly increasing.
  std::vector<LatticeCoords> points;
};

// All z = m + nω with |z| <= R and z* ∈ [lo, hi]. For each feasible n the
// admissible m form an interval read off the two linear constraints; every
// candidate is confirmed with exact arithmetic.
ModelSetPatch enumerate_patch(const LatticeSpec& lattice, const Window& window, const Rational& radius);

struct LetterSequence {
  Alphabet alphabet;
  Word letters;
  // legend[i] is the gap (as a lattice vector) written as letter i; sorted
  // ascending by length.
  std::vector<LatticeCoords> legend;
  // Letter k sits between points k and k + 1; this is the index of the
  // first point at or right of the origin.
  std::int64_t origin = 0;
};

// Distinct gaps between consecutive points, sorted ascending, become letters
// a, b, c, ... in that order.
LetterSequence gaps_to_letters(const ModelSetPatch& patch);

// c with Ω = −Ω + c; for an interval this is lo + hi.
FieldElement centro_symmetry_center(const Window& window);

struct InversionWitness {
  LatticeCoords shift;  // t with −Λ = Λ + t on the checked range
  double range_lo = 0;
  double range_hi = 0;
  std::size_t points_checked = 0;
};

struct InversionOptions {
  // Fraction of the overlap of −Λ and Λ + t that is compared.
  double interior = 0.8;
  // Overlap must cover at least this fraction of the patch diameter.
  double min_overlap = 0.5;
  std::size_t max_candidates = 256;
};

// Searches shifts t ∈ L (candidates ordered by |t* + c|, closest first) for
// which −Λ and Λ + t coincide on the interior of their common range.
std::optional<InversionWitness> inversion_witness(const ModelSetPatch& patch, const InversionOptions& options = {});

struct PalindromeHit {
  // Sum of first and last index of the occurrence; center = doubled_center / 2.
  std::int64_t doubled_center = 0;
  std::size_t length = 0;

  double center() const { return static_cast<double>(doubled_center) / 2.0; }
  friend bool operator==(const PalindromeHit&, const PalindromeHit&) = default;
};

struct CenterRange {
  std::int64_t doubled_lo;
  std::int64_t doubled_hi;
};

// Maximal palindromes (longest one per center) of length >= min_length with
// centers in `range`, sorted by length descending then center ascending.
// `first_index` is the sequence index of w[0].
std::vector<PalindromeHit> palindrome_scan(std::span<const Letter> w, std::optional<CenterRange> range = std::nullopt,
                                           std::size_t min_length = 1, std::int64_t first_index = 0);

struct StrongPalindromicityRow {
  double center = 0;
  std::size_t length = 0;
  double log_ratio = 0;  // B|m| − ln ℓ
  double ratio = 0;      // e^{B|m|}/ℓ, may be +inf
};

struct StrongPalindromicityReport {
  double b = 0;
  std::vector<StrongPalindromicityRow> rows;
  // Record palindromes: ordered by |center|, each longer than every palindrome
  // closer to the origin.
  std::vector<StrongPalindromicityRow> records;
  std::size_t record_decreases = 0;  // consecutive records whose ratio drops
  std::optional<double> min_log_ratio;
};

// Purely descriptive; no convergence claim is drawn from a finite range.
StrongPalindromicityReport strong_palindromicity_report(std::span<const PalindromeHit> hits, double b);

struct RecurrenceRow {
  std::size_t length = 0;
  std::size_t factors = 0;
  // Largest distance between consecutive occurrences of any one factor.
  std::size_t max_return = 0;
};

// Empirical recurrence of every factor of length 1..max_length.
std::vector<RecurrenceRow> recurrence_report(std::span<const Letter> w, std::size_t max_length);

}  // namespace aperiodica::modelset
