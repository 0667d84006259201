#include "aperiodica/quadratic_field.hpp"

#include <cmath>
#include <cstdio>

#include "aperiodica/errors.hpp"

namespace aperiodica {

namespace {

bool squarefree(std::int64_t d) {
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) {
      return false;
    }
  }
  return true;
}

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw InputError("'" + std::string(whole) + "' is not an exact rational");
  }
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw InputError("'" + std::string(whole) + "' is not an exact rational");
    }
  }
  return BigInt(std::string(digits));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') {
    text.remove_prefix(1);
  }
  while (!text.empty() && text.back() == ' ') {
    text.remove_suffix(1);
  }
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = parse_integer(text.substr(0, slash), whole);
    const auto den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) {
      throw InputError("'" + std::string(whole) + "' has a zero denominator");
    }
    value = Rational(num, den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto int_part = text.substr(0, dot);
    const auto frac_part = text.substr(dot + 1);
    BigInt num = int_part.empty() ? BigInt(0) : parse_integer(int_part, whole);
    BigInt den = 1;
    if (!frac_part.empty()) {
      const auto frac = parse_integer(frac_part, whole);
      for (std::size_t i = 0; i < frac_part.size(); ++i) {
        den *= 10;
      }
      num = num * den + frac;
    } else if (int_part.empty()) {
      throw InputError("'" + std::string(whole) + "' is not an exact rational");
    }
    value = Rational(num, den);
  } else {
    value = Rational(parse_integer(text, whole));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
  return r.str();
}

BigInt floor(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) {
    q -= 1;
  }
  return q;
}

QuadField::QuadField(std::int64_t d, Omega omega) : d_(d), omega_(omega) {
  if (d <= 1 || !squarefree(d)) {
    throw InputError("field parameter d = " + std::to_string(d) + " must be a squarefree integer > 1");
  }
  if (omega == Omega::golden && d % 4 != 1) {
    throw InputError("omega = (1+sqrt(d))/2 needs d = 1 mod 4, got d = " + std::to_string(d));
  }
}

FieldElement::FieldElement(std::int64_t d, Rational p, Rational q) : d_(d), p_(std::move(p)), q_(std::move(q)) {}

namespace {

void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.d() != b.d()) {
    throw InputError("field elements from Q(sqrt " + std::to_string(a.d()) + ") and Q(sqrt " +
                     std::to_string(b.d()) + ") cannot be combined");
  }
}

int sign_of(const Rational& r) {
  return r > 0 ? 1 : (r < 0 ? -1 : 0);
}

}  // namespace

int FieldElement::sign() const {
  const int sp = sign_of(p_);
  const int sq = sign_of(q_);
  if (sq == 0) {
    return sp;
  }
  if (sp == 0 || sp == sq) {
    return sq;
  }
  // Opposite signs: compare p² with d·q². Equality would make √d rational.
  return p_ * p_ > q_ * q_ * d_ ? sp : sq;
}

double FieldElement::to_double() const {
  return p_.convert_to<double>() + q_.convert_to<double>() * std::sqrt(static_cast<double>(d_));
}

BigInt FieldElement::floor() const {
  if (q_ == 0) {
    return aperiodica::floor(p_);
  }
  const double approx = to_double();
  if (!std::isfinite(approx) || std::abs(approx) > 0x1p52) {
    throw LimitError("floor of " + aperiodica::to_string(*this) + " is outside the supported magnitude 2^52");
  }
  BigInt guess(static_cast<long long>(std::floor(approx)));
  // Settle guess <= value < guess + 1 exactly.
  while ((*this - FieldElement(d_, Rational(guess))).sign() < 0) {
    guess -= 1;
  }
  while ((*this - FieldElement(d_, Rational(guess + 1))).sign() >= 0) {
    guess += 1;
  }
  return guess;
}

BigInt FieldElement::ceil() const {
  return -(-*this).floor();
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return FieldElement(a.d_, a.p_ + b.p_, a.q_ + b.q_);
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return FieldElement(a.d_, a.p_ - b.p_, a.q_ - b.q_);
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return FieldElement(a.d_, a.p_ * b.p_ + a.q_ * b.q_ * a.d_, a.p_ * b.q_ + a.q_ * b.p_);
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  const Rational norm = b.p_ * b.p_ - b.q_ * b.q_ * b.d_;
  if (norm == 0) {
    throw InputError("division by zero in Q(sqrt " + std::to_string(a.d_) + ")");
  }
  const auto num = a * b.conjugate();
  return FieldElement(a.d_, num.p_ / norm, num.q_ / norm);
}

std::string to_string(const FieldElement& z) {
  std::string out = to_string(z.rational_part());
  const auto& q = z.sqrt_part();
  if (q != 0) {
    out += q < 0 ? " - " : " + ";
    out += to_string(Rational(q < 0 ? Rational(-q) : q));
    out += "*sqrt(" + std::to_string(z.d()) + ")";
  }
  return out;
}

std::string decimal(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

}  // namespace aperiodica
