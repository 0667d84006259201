#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace aperiodica {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "p", "p/q" or a finite decimal such as "-0.125" exactly.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

BigInt floor(const Rational& r);

// Generator of the module L = Z + Z·ω.
enum class Omega {
  sqrt_d,   // ω = √d
  golden,   // ω = (1 + √d)/2, requires d ≡ 1 (mod 4)
};

// Real quadratic field Q(√d) with d squarefree and > 1.
class QuadField {
 public:
  QuadField(std::int64_t d, Omega omega);

  std::int64_t d() const { return d_; }
  Omega omega_kind() const { return omega_; }

  friend bool operator==(const QuadField&, const QuadField&) = default;

 private:
  std::int64_t d_;
  Omega omega_;
};

// Exact p + q·√d.
class FieldElement {
 public:
  FieldElement(std::int64_t d, Rational p = 0, Rational q = 0);

  std::int64_t d() const { return d_; }
  const Rational& rational_part() const { return p_; }
  const Rational& sqrt_part() const { return q_; }

  // Galois conjugate p − q·√d.
  FieldElement conjugate() const { return FieldElement(d_, p_, -q_); }

  // −1, 0 or +1, decided exactly.
  int sign() const;
  double to_double() const;
  BigInt floor() const;
  BigInt ceil() const;

  FieldElement operator-() const { return FieldElement(d_, -p_, -q_); }
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.d_ == b.d_ && a.p_ == b.p_ && a.q_ == b.q_;
  }
  friend int compare(const FieldElement& a, const FieldElement& b) { return (a - b).sign(); }
  friend bool operator<(const FieldElement& a, const FieldElement& b) { return compare(a, b) < 0; }
  friend bool operator<=(const FieldElement& a, const FieldElement& b) { return compare(a, b) <= 0; }

 private:
  std::int64_t d_;
  Rational p_;
  Rational q_;
};

// "p + q*sqrt(d)" with exact rationals.
std::string to_string(const FieldElement& z);

// Fixed 15 significant digits.
std::string decimal(double value);

}  // namespace aperiodica
