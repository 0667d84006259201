#include "aperiodica/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "aperiodica/errors.hpp"

namespace aperiodica::spectral {

TridiagonalOperator build_finite(std::span<const Letter> x, std::span<const double> values, double lambda,
                                 IndexRange range, Boundary boundary) {
  if (range.end < range.begin || range.end > x.size()) {
    throw InputError("index range [" + std::to_string(range.begin) + ", " + std::to_string(range.end) +
                     ") is outside the available sequence of length " + std::to_string(x.size()));
  }
  if (range.size() == 0) {
    throw InputError("operator section must have size >= 1");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (values[i] == values[j]) {
        throw InputError("potential values must be pairwise different; letters " + std::to_string(i) + " and " +
                         std::to_string(j) + " share " + std::to_string(values[i]));
      }
    }
  }
  TridiagonalOperator op;
  op.boundary = boundary;
  op.diagonal.reserve(range.size());
  for (std::size_t n = range.begin; n < range.end; ++n) {
    if (x[n] >= values.size()) {
      throw InputError("no potential value for letter index " + std::to_string(x[n]));
    }
    op.diagonal.push_back(lambda * values[x[n]]);
  }
  return op;
}

TridiagonalOperator free_laplacian(std::size_t size) {
  return TridiagonalOperator{std::vector<double>(size, 0.0), Boundary::dirichlet};
}

std::size_t sturm_count(const TridiagonalOperator& op, double e) {
  if (op.boundary != Boundary::dirichlet) {
    throw InputError("Sturm counting needs a tridiagonal (Dirichlet) section");
  }
  std::size_t negatives = 0;
  double pivot = 1.0;
  constexpr double tiny = std::numeric_limits<double>::min() * 16;
  for (std::size_t i = 0; i < op.size(); ++i) {
    pivot = (op.diagonal[i] - e) - (i == 0 ? 0.0 : 1.0 / pivot);
    if (pivot == 0.0) {
      pivot = -tiny;
    }
    if (pivot < 0.0) {
      ++negatives;
    }
  }
  return negatives;
}

std::pair<double, double> spectral_bounds(const TridiagonalOperator& op) {
  if (op.size() == 0) {
    throw InputError("empty operator");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const auto n = op.size();
  for (std::size_t i = 0; i < n; ++i) {
    double radius = (i > 0 ? 1.0 : 0.0) + (i + 1 < n ? 1.0 : 0.0);
    if (op.boundary == Boundary::periodic) {
      radius = n == 1 ? 0.0 : 2.0;
    }
    const double centre = op.diagonal[i] + (op.boundary == Boundary::periodic && n == 1 ? 2.0 : 0.0);
    lo = std::min(lo, centre - radius);
    hi = std::max(hi, centre + radius);
  }
  return {lo, hi};
}

namespace {

std::vector<double> dense_eigenvalues(const TridiagonalOperator& op) {
  const auto n = static_cast<Eigen::Index>(op.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    h(i, i) += op.diagonal[static_cast<std::size_t>(i)];
    if (op.boundary == Boundary::periodic || i + 1 < n) {
      const auto j = (i + 1) % n;
      h(i, j) += 1.0;
      h(j, i) += 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<double> eigenvalues(const TridiagonalOperator& op, double tolerance) {
  if (!(tolerance > 0)) {
    throw InputError("eigenvalue tolerance must be positive");
  }
  if (op.size() == 0) {
    throw InputError("operator section must have size >= 1");
  }
  if (op.boundary == Boundary::periodic) {
    return dense_eigenvalues(op);
  }
  const auto [lower, upper] = spectral_bounds(op);
  const double lo0 = lower - tolerance;
  const double hi0 = upper + tolerance;
  std::vector<double> out(op.size());
  // Eigenvalue k (0-based) is the point where sturm_count first exceeds k.
  for (std::size_t k = 0; k < op.size(); ++k) {
    double lo = k > 0 ? std::max(lo0, out[k - 1] - tolerance) : lo0;
    double hi = hi0;
    while (hi - lo > tolerance) {
      const double mid = lo + (hi - lo) / 2.0;
      if (mid <= lo || mid >= hi) {
        break;
      }
      if (sturm_count(op, mid) > k) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out[k] = lo + (hi - lo) / 2.0;
  }
  return out;
}

double ids(std::span<const double> sorted_eigenvalues, double e) {
  if (sorted_eigenvalues.empty()) {
    return 0.0;
  }
  const auto below = std::upper_bound(sorted_eigenvalues.begin(), sorted_eigenvalues.end(), e);
  return static_cast<double>(below - sorted_eigenvalues.begin()) / static_cast<double>(sorted_eigenvalues.size());
}

std::vector<std::pair<double, double>> ids_grid(std::span<const double> sorted_eigenvalues, double lo, double hi,
                                                std::size_t points) {
  if (points < 2 || !(hi > lo)) {
    throw InputError("IDS grid needs at least two points and hi > lo");
  }
  std::vector<std::pair<double, double>> grid;
  grid.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double e = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    grid.emplace_back(e, ids(sorted_eigenvalues, e));
  }
  return grid;
}

namespace {

// ad − bc with one rounding error (Kahan).
double det2(double a, double b, double c, double d) {
  const double w = b * c;
  const double e = std::fma(-b, c, w);
  const double f = std::fma(a, d, -w);
  return f + e;
}

}  // namespace

void TransferMatrixProduct::multiply_left(double a, double b, double c, double d) {
  // M = T·Q, then M = Q'·R' by a Givens rotation; the product becomes
  // Q'·(R'·R).
  const double m00 = a * q_[0] + b * q_[2];
  const double m01 = a * q_[1] + b * q_[3];
  const double m10 = c * q_[0] + d * q_[2];
  const double m11 = c * q_[1] + d * q_[3];
  const double r1 = std::hypot(m00, m10);
  if (!(r1 > 0) || !std::isfinite(r1)) {
    throw InputError("transfer factor is singular or not finite");
  }
  const double cs = m00 / r1;
  const double sn = m10 / r1;
  const double r12 = cs * m01 + sn * m11;
  // det(M) = det(T)·det(Q_old), both available to one rounding (det2 on the
  // entries of M would amplify their errors). The new rotation is orthogonal
  // only up to rounding, so R' takes det(M)/det(Q_new) to keep Q_new·R' = M.
  const double det_q_new = std::fma(cs, cs, sn * sn);
  const double det = det2(a, b, c, d) * det2(q_[0], q_[1], q_[2], q_[3]) / det_q_new;
  q_[0] = cs;
  q_[1] = -sn;
  q_[2] = sn;
  q_[3] = cs;
  // R(0,1)/R(0,0) after the update: upper + (r12/r1)·(r2_old/r1_old).
  const double ratio_old = sign_ * std::exp(static_cast<double>(log_det_ - 2 * log_r1_));
  upper_ = upper_ + (r12 / r1) * ratio_old;
  log_r1_ += std::log(static_cast<long double>(r1));
  log_det_ += std::log(std::abs(static_cast<long double>(det)));
  if (det < 0) {
    sign_ = -sign_;
  }
  ++factors_;
}

double TransferMatrixProduct::determinant() const {
  // det(Q) is 1 up to the rounding of the last rotation.
  const double det_q = q_[0] * q_[3] - q_[1] * q_[2];
  return det_q * sign_ * std::exp(static_cast<double>(log_det_));
}

double TransferMatrixProduct::growth_rate() const {
  return factors_ == 0 ? 0.0 : static_cast<double>(log_r1_) / static_cast<double>(factors_);
}

std::array<double, 4> TransferMatrixProduct::matrix() const {
  const double r1 = std::exp(static_cast<double>(log_r1_));
  const double r2 = sign_ * std::exp(static_cast<double>(log_det_ - log_r1_));
  const double r12 = upper_ * r1;
  return {q_[0] * r1, q_[0] * r12 + q_[1] * r2, q_[2] * r1, q_[2] * r12 + q_[3] * r2};
}

TransferMatrixProduct transfer_product(double energy, std::span<const Letter> x, std::span<const double> values,
                                       double lambda, IndexRange range) {
  if (range.end < range.begin || range.end > x.size()) {
    throw InputError("transfer range is outside the available sequence");
  }
  TransferMatrixProduct product;
  product.energy_ = energy;
  product.range_ = range;
  for (std::size_t n = range.begin; n < range.end; ++n) {
    if (x[n] >= values.size()) {
      throw InputError("no potential value for letter index " + std::to_string(x[n]));
    }
    product.multiply_left(energy - lambda * values[x[n]], -1.0, 1.0, 0.0);
  }
  return product;
}

}  // namespace aperiodica::spectral
