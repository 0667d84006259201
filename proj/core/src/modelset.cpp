#include "aperiodica/modelset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string_view>
#include <unordered_map>

#include "aperiodica/errors.hpp"

namespace aperiodica::modelset {

namespace {

__extension__ typedef __int128 i128;

// sign(a + b√d) for d > 0 not a square.
int sign_quad(i128 a, i128 b, std::int64_t d) {
  const int sa = (a > 0) - (a < 0);
  const int sb = (b > 0) - (b < 0);
  if (sb == 0) {
    return sa;
  }
  if (sa == 0 || sa == sb) {
    return sb;
  }
  return a * a > b * b * d ? sa : sb;
}

bool fits(const BigInt& v, std::int64_t limit) {
  return v <= limit && v >= -limit;
}

constexpr std::int64_t kCoordLimit = std::int64_t{1} << 28;
constexpr std::int64_t kScaleLimit = std::int64_t{1} << 20;
constexpr std::int64_t kValueLimit = std::int64_t{1} << 50;

// Exact tests of lattice points against fixed field elements. Everything is
// scaled by a common denominator D so the comparisons run in 128-bit
// integers; inputs too large for that fall back to rational arithmetic.
class ScaledPredicates {
 public:
  ScaledPredicates(const LatticeSpec& lattice, const Window& window, const Rational& radius)
      : lattice_(lattice), window_(window), radius_(lattice.d(), radius) {
    using boost::multiprecision::denominator;
    BigInt scale = 2;
    for (const auto* r : {&window.lo().rational_part(), &window.lo().sqrt_part(), &window.hi().rational_part(),
                          &window.hi().sqrt_part(), &radius}) {
      scale = boost::multiprecision::lcm(scale, BigInt(denominator(*r)));
    }
    auto scaled = [&](const Rational& r) { return BigInt(r * scale); };
    const BigInt lo_a = scaled(window.lo().rational_part());
    const BigInt lo_b = scaled(window.lo().sqrt_part());
    const BigInt hi_a = scaled(window.hi().rational_part());
    const BigInt hi_b = scaled(window.hi().sqrt_part());
    const BigInt r_a = scaled(radius);
    fast_ = fits(scale, kScaleLimit) && lattice.d() < kScaleLimit;
    for (const auto* v : {&lo_a, &lo_b, &hi_a, &hi_b, &r_a}) {
      fast_ = fast_ && fits(*v, kValueLimit);
    }
    if (fast_) {
      scale_ = scale.convert_to<std::int64_t>();
      lo_a_ = lo_a.convert_to<std::int64_t>();
      lo_b_ = lo_b.convert_to<std::int64_t>();
      hi_a_ = hi_a.convert_to<std::int64_t>();
      hi_b_ = hi_b.convert_to<std::int64_t>();
      r_a_ = r_a.convert_to<std::int64_t>();
    }
  }

  bool star_in_window(LatticeCoords c) const {
    if (fast_ && small(c)) {
      const auto [a, b] = scaled_star(c);
      return sign_quad(i128(a) - lo_a_, i128(b) - lo_b_, lattice_.d()) >= 0 &&
             sign_quad(i128(hi_a_) - a, i128(hi_b_) - b, lattice_.d()) >= 0;
    }
    return window_.contains(lattice_.star(c));
  }

  bool within_radius(LatticeCoords c) const {
    if (fast_ && small(c)) {
      const auto [a, b] = scaled_value(c);
      return sign_quad(i128(r_a_) - a, -i128(b), lattice_.d()) >= 0 &&
             sign_quad(i128(r_a_) + a, i128(b), lattice_.d()) >= 0;
    }
    const auto z = lattice_.element(c);
    return (radius_ - z).sign() >= 0 && (radius_ + z).sign() >= 0;
  }

 private:
  static bool small(LatticeCoords c) {
    return c.m < kCoordLimit && c.m > -kCoordLimit && c.n < kCoordLimit && c.n > -kCoordLimit;
  }

  // D·(m + nω) as a + b√d.
  std::pair<i128, i128> scaled_value(LatticeCoords c) const {
    if (lattice_.field().omega_kind() == Omega::sqrt_d) {
      return {i128(c.m) * scale_, i128(c.n) * scale_};
    }
    const i128 half = i128(c.n) * (scale_ / 2);
    return {i128(c.m) * scale_ + half, half};
  }

  // D·(m + nω') as a + b√d.
  std::pair<i128, i128> scaled_star(LatticeCoords c) const {
    auto [a, b] = scaled_value(c);
    return {a, -b};
  }

  const LatticeSpec& lattice_;
  const Window& window_;
  FieldElement radius_;
  bool fast_ = false;
  std::int64_t scale_ = 1;
  std::int64_t lo_a_ = 0, lo_b_ = 0, hi_a_ = 0, hi_b_ = 0, r_a_ = 0;
};

std::int64_t to_int64(const BigInt& v) {
  if (!fits(v, std::numeric_limits<std::int64_t>::max() / 4)) {
    throw LimitError("lattice coordinate " + v.str() + " exceeds 64-bit range");
  }
  return v.convert_to<std::int64_t>();
}

}  // namespace

LatticeSpec::LatticeSpec(QuadField field) : field_(field), sqrt_d_(std::sqrt(static_cast<double>(field.d()))) {}

FieldElement LatticeSpec::omega() const {
  if (field_.omega_kind() == Omega::sqrt_d) {
    return FieldElement(d(), 0, 1);
  }
  return FieldElement(d(), Rational(1, 2), Rational(1, 2));
}

FieldElement LatticeSpec::omega_conjugate() const {
  return omega().conjugate();
}

FieldElement LatticeSpec::element(LatticeCoords c) const {
  return FieldElement(d(), Rational(c.m)) + FieldElement(d(), Rational(c.n)) * omega();
}

FieldElement LatticeSpec::star(LatticeCoords c) const {
  return element(c).conjugate();
}

double LatticeSpec::value(LatticeCoords c) const {
  const double w = field_.omega_kind() == Omega::sqrt_d ? sqrt_d_ : (1.0 + sqrt_d_) / 2.0;
  return static_cast<double>(c.m) + static_cast<double>(c.n) * w;
}

double LatticeSpec::star_value(LatticeCoords c) const {
  const double w = field_.omega_kind() == Omega::sqrt_d ? -sqrt_d_ : (1.0 - sqrt_d_) / 2.0;
  return static_cast<double>(c.m) + static_cast<double>(c.n) * w;
}

int LatticeSpec::sign(LatticeCoords c) const {
  if (field_.omega_kind() == Omega::sqrt_d) {
    return sign_quad(c.m, c.n, d());
  }
  return sign_quad(i128(2) * c.m + c.n, c.n, d());
}

int LatticeSpec::compare(LatticeCoords a, LatticeCoords b) const {
  return sign(a - b);
}

namespace {

bool is_integer(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1;
}

}  // namespace

std::optional<LatticeCoords> LatticeSpec::coordinates(const FieldElement& z) const {
  if (z.d() != d()) {
    throw InputError("element of Q(sqrt " + std::to_string(z.d()) + ") is not in Q(sqrt " + std::to_string(d()) +
                     ")");
  }
  Rational m = z.rational_part();
  Rational n = z.sqrt_part();
  if (field_.omega_kind() == Omega::golden) {
    // m + n(1+√d)/2 = (m + n/2) + (n/2)√d
    n = 2 * z.sqrt_part();
    m = z.rational_part() - z.sqrt_part();
  }
  if (!is_integer(m) || !is_integer(n)) {
    return std::nullopt;
  }
  return LatticeCoords{to_int64(boost::multiprecision::numerator(m)), to_int64(boost::multiprecision::numerator(n))};
}

std::optional<LatticeCoords> LatticeSpec::star_coordinates(const FieldElement& x) const {
  return coordinates(x.conjugate());
}

FieldElement star(const FieldElement& z) {
  return z.conjugate();
}

Window::Window(FieldElement lo, FieldElement hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.d() != hi_.d()) {
    throw InputError("window endpoints come from different fields");
  }
  if (!(lo_ < hi_)) {
    throw InputError("window needs lo < hi (nonempty interior), got [" + to_string(lo_) + ", " + to_string(hi_) +
                     "]");
  }
}

GenericityCheck check_generic(const Window& window, const LatticeSpec& lattice) {
  GenericityCheck check;
  for (const auto& [name, value] : {std::pair<std::string, const FieldElement*>{"lo", &window.lo()},
                                    std::pair<std::string, const FieldElement*>{"hi", &window.hi()}}) {
    if (auto coords = lattice.star_coordinates(*value)) {
      check.witnesses.push_back({name, *value, *coords});
    }
  }
  check.generic = check.witnesses.empty();
  return check;
}

std::optional<Rational> suggest_generic_shift(const Window& window, const LatticeSpec& lattice,
                                              std::int64_t denominator, std::int64_t max_steps) {
  if (denominator <= 0) {
    throw InputError("shift grid denominator must be positive");
  }
  if (check_generic(window, lattice).generic) {
    return Rational(0);
  }
  for (std::int64_t k = 1; k <= max_steps; ++k) {
    for (const std::int64_t sign : {1, -1}) {
      const Rational shift(sign * k, denominator);
      if (check_generic(window.shifted(FieldElement(lattice.d(), shift)), lattice).generic) {
        return shift;
      }
    }
  }
  return std::nullopt;
}

ModelSetPatch enumerate_patch(const LatticeSpec& lattice, const Window& window, const Rational& radius) {
  if (window.lo().d() != lattice.d()) {
    throw InputError("window is not over the lattice's field");
  }
  if (radius <= 0) {
    throw InputError("patch radius must be positive");
  }
  ModelSetPatch patch{lattice, window, radius, {}};
  const auto d = lattice.d();
  const FieldElement r(d, radius);
  // z − z* = n(ω − ω'), so n is confined by |z| <= R and z* ∈ [lo, hi].
  const FieldElement delta = lattice.omega() - lattice.omega_conjugate();
  const auto n_min = to_int64(((-r - window.hi()) / delta).ceil());
  const auto n_max = to_int64(((r - window.lo()) / delta).floor());

  const ScaledPredicates exact(lattice, window, radius);
  const double lo = window.lo().to_double();
  const double hi = window.hi().to_double();
  const double rad = radius.convert_to<double>();
  for (std::int64_t n = n_min; n <= n_max; ++n) {
    const double shift_star = lattice.star_value({0, n});
    const double shift = lattice.value({0, n});
    const double m_lo = std::max(lo - shift_star, -rad - shift);
    const double m_hi = std::min(hi - shift_star, rad - shift);
    if (m_lo > m_hi + 2.0) {
      continue;
    }
    const auto first = static_cast<std::int64_t>(std::floor(m_lo)) - 1;
    const auto last = static_cast<std::int64_t>(std::ceil(m_hi)) + 1;
    for (std::int64_t m = first; m <= last; ++m) {
      const LatticeCoords c{m, n};
      if (exact.star_in_window(c) && exact.within_radius(c)) {
        patch.points.push_back(c);
      }
    }
  }
  std::sort(patch.points.begin(), patch.points.end(),
            [&](LatticeCoords a, LatticeCoords b) { return lattice.compare(a, b) < 0; });
  return patch;
}

LetterSequence gaps_to_letters(const ModelSetPatch& patch) {
  const auto& pts = patch.points;
  if (pts.size() < 2) {
    throw InputError("gaps_to_letters needs at least two points, patch has " + std::to_string(pts.size()));
  }
  const auto& lattice = patch.lattice;
  std::vector<LatticeCoords> gaps;
  gaps.reserve(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    gaps.push_back(pts[i + 1] - pts[i]);
  }
  std::vector<LatticeCoords> legend = gaps;
  std::sort(legend.begin(), legend.end());
  legend.erase(std::unique(legend.begin(), legend.end()), legend.end());
  std::sort(legend.begin(), legend.end(), [&](LatticeCoords a, LatticeCoords b) { return lattice.compare(a, b) < 0; });
  if (legend.size() > 26) {
    throw InputError("patch has " + std::to_string(legend.size()) + " distinct gaps, more than 26 letters");
  }
  LetterSequence out{Alphabet::latin(legend.size()), {}, legend, 0};
  out.letters.reserve(gaps.size());
  for (const auto& g : gaps) {
    auto it = std::lower_bound(legend.begin(), legend.end(), g,
                               [&](LatticeCoords a, LatticeCoords b) { return lattice.compare(a, b) < 0; });
    out.letters.push_back(static_cast<Letter>(it - legend.begin()));
  }
  auto origin = std::find_if(pts.begin(), pts.end(), [&](LatticeCoords c) { return lattice.sign(c) >= 0; });
  out.origin = origin - pts.begin();
  return out;
}

FieldElement centro_symmetry_center(const Window& window) {
  return window.lo() + window.hi();
}

namespace {

// Points of `sorted` (ascending), each mapped through f, restricted to [lo, hi].
template <class F>
std::vector<LatticeCoords> mapped_in_range(const LatticeSpec& lattice, const std::vector<LatticeCoords>& pts, F f,
                                           double lo, double hi) {
  std::vector<LatticeCoords> out;
  for (const auto& p : pts) {
    const auto q = f(p);
    const double v = lattice.value(q);
    if (v >= lo && v <= hi) {
      out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<InversionWitness> inversion_witness(const ModelSetPatch& patch, const InversionOptions& options) {
  if (patch.points.empty()) {
    return std::nullopt;
  }
  const auto& lattice = patch.lattice;
  const auto c = centro_symmetry_center(patch.window);
  const double c_value = c.to_double();
  const double radius = patch.radius.convert_to<double>();
  // −Λ(Ω) = Λ(Ω − c) and Λ(Ω) + t = Λ(Ω + t*), so good shifts have t* close
  // to −c. Collect lattice points with |t| small enough to leave the required
  // overlap and t* within one window length of −c.
  const Rational max_shift = patch.radius * 2 * Rational(std::llround((1.0 - options.min_overlap) * 1e6), 1000000);
  if (max_shift <= 0) {
    return std::nullopt;
  }
  const Window near(-c - patch.window.length(), -c + patch.window.length());
  auto candidates = enumerate_patch(lattice, near, max_shift).points;
  std::sort(candidates.begin(), candidates.end(), [&](LatticeCoords a, LatticeCoords b) {
    const double da = std::abs(lattice.star_value(a) + c_value);
    const double db = std::abs(lattice.star_value(b) + c_value);
    return da != db ? da < db : a < b;
  });
  if (candidates.size() > options.max_candidates) {
    candidates.resize(options.max_candidates);
  }
  for (const auto& t : candidates) {
    const double tv = lattice.value(t);
    const double overlap_lo = std::max(-radius, -radius + tv);
    const double overlap_hi = std::min(radius, radius + tv);
    const double mid = (overlap_lo + overlap_hi) / 2.0;
    const double half = options.interior * (overlap_hi - overlap_lo) / 2.0;
    const double lo = mid - half;
    const double hi = mid + half;
    const auto negated = mapped_in_range(lattice, patch.points, [](LatticeCoords p) { return -p; }, lo, hi);
    const auto shifted = mapped_in_range(lattice, patch.points, [&](LatticeCoords p) { return p + t; }, lo, hi);
    if (!negated.empty() && negated == shifted) {
      return InversionWitness{t, lo, hi, negated.size()};
    }
  }
  return std::nullopt;
}

std::vector<PalindromeHit> palindrome_scan(std::span<const Letter> w, std::optional<CenterRange> range,
                                           std::size_t min_length, std::int64_t first_index) {
  const auto n = static_cast<std::int64_t>(w.size());
  std::vector<std::int64_t> odd(w.size(), 0);
  std::vector<std::int64_t> even(w.size(), 0);
  // Manacher: odd[i] = radius of the longest odd palindrome centred at i,
  // even[i] = half-length of the longest even palindrome centred at i − 1/2.
  for (std::int64_t i = 0, l = 0, r = -1; i < n; ++i) {
    std::int64_t k = i > r ? 1 : std::min(odd[l + r - i], r - i + 1);
    while (i - k >= 0 && i + k < n && w[i - k] == w[i + k]) {
      ++k;
    }
    odd[i] = k;
    if (i + k - 1 > r) {
      l = i - k + 1;
      r = i + k - 1;
    }
  }
  for (std::int64_t i = 0, l = 0, r = -1; i < n; ++i) {
    std::int64_t k = i > r ? 0 : std::min(even[l + r - i + 1], r - i + 1);
    while (i - k - 1 >= 0 && i + k < n && w[i - k - 1] == w[i + k]) {
      ++k;
    }
    even[i] = k;
    if (i + k - 1 > r) {
      l = i - k;
      r = i + k - 1;
    }
  }
  std::vector<PalindromeHit> hits;
  auto keep = [&](std::int64_t doubled, std::int64_t length) {
    if (length < static_cast<std::int64_t>(min_length) || length == 0) {
      return;
    }
    if (range && (doubled < range->doubled_lo || doubled > range->doubled_hi)) {
      return;
    }
    hits.push_back({doubled, static_cast<std::size_t>(length)});
  };
  for (std::int64_t i = 0; i < n; ++i) {
    keep(2 * (first_index + i), 2 * odd[i] - 1);
    keep(2 * (first_index + i) - 1, 2 * even[i]);
  }
  std::sort(hits.begin(), hits.end(), [](const PalindromeHit& a, const PalindromeHit& b) {
    return a.length != b.length ? a.length > b.length : a.doubled_center < b.doubled_center;
  });
  return hits;
}

StrongPalindromicityReport strong_palindromicity_report(std::span<const PalindromeHit> hits, double b) {
  if (!(b > 0)) {
    throw InputError("strong palindromicity parameter B must be positive");
  }
  StrongPalindromicityReport report;
  report.b = b;
  for (const auto& h : hits) {
    StrongPalindromicityRow row;
    row.center = h.center();
    row.length = h.length;
    row.log_ratio = b * std::abs(row.center) - std::log(static_cast<double>(h.length));
    row.ratio = std::exp(row.log_ratio);
    report.rows.push_back(row);
    if (!report.min_log_ratio || row.log_ratio < *report.min_log_ratio) {
      report.min_log_ratio = row.log_ratio;
    }
  }
  auto by_distance = report.rows;
  std::stable_sort(by_distance.begin(), by_distance.end(), [](const auto& x, const auto& y) {
    return std::abs(x.center) != std::abs(y.center) ? std::abs(x.center) < std::abs(y.center) : x.length > y.length;
  });
  for (const auto& row : by_distance) {
    if (report.records.empty() || row.length > report.records.back().length) {
      if (!report.records.empty() && row.log_ratio < report.records.back().log_ratio) {
        ++report.record_decreases;
      }
      report.records.push_back(row);
    }
  }
  return report;
}

std::vector<RecurrenceRow> recurrence_report(std::span<const Letter> w, std::size_t max_length) {
  std::vector<RecurrenceRow> rows;
  const auto* chars = reinterpret_cast<const char*>(w.data());
  for (std::size_t len = 1; len <= max_length && len <= w.size(); ++len) {
    std::unordered_map<std::string_view, std::size_t> last;
    RecurrenceRow row{len, 0, 0};
    for (std::size_t i = 0; i + len <= w.size(); ++i) {
      auto [it, inserted] = last.try_emplace(std::string_view(chars + i, len), i);
      if (!inserted) {
        row.max_return = std::max(row.max_return, i - it->second);
        it->second = i;
      }
    }
    row.factors = last.size();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace aperiodica::modelset
