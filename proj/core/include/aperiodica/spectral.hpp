#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "aperiodica/words.hpp"

// Finite-section observables of (L_x u)_n = u_{n+1} + u_{n-1} + λ·v(x_n)·u_n.
//
// Only finite-size quantities live here: eigenvalues, the integrated density
// of states and transfer-matrix growth. Whether the infinite-volume spectrum
// is singular continuous is a theorem about the operator, taken as given and
// not something these numbers test.
namespace aperiodica::spectral {

enum class Boundary { dirichlet, periodic };

struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive

  std::size_t size() const { return end - begin; }
};

struct TridiagonalOperator {
  std::vector<double> diagonal;  // off-diagonal entries are all 1
  Boundary boundary = Boundary::dirichlet;

  std::size_t size() const { return diagonal.size(); }
};

// values[letter] is the potential attached to that letter; they must be
// pairwise different.
TridiagonalOperator build_finite(std::span<const Letter> x, std::span<const double> values, double lambda,
                                 IndexRange range, Boundary boundary = Boundary::dirichlet);

TridiagonalOperator free_laplacian(std::size_t size);

// Number of eigenvalues strictly below e (Dirichlet sections only), from the
// signs of the LDLᵀ pivots.
std::size_t sturm_count(const TridiagonalOperator& op, double e);

// Gershgorin interval containing the whole spectrum.
std::pair<double, double> spectral_bounds(const TridiagonalOperator& op);

// All eigenvalues, ascending. Dirichlet sections use Sturm-count bisection
// down to width `tolerance`; periodic sections go through a dense symmetric
// eigensolver.
std::vector<double> eigenvalues(const TridiagonalOperator& op, double tolerance = 1e-13);

// Fraction of eigenvalues <= e.
double ids(std::span<const double> sorted_eigenvalues, double e);

// (E, N(E)) on `points` equally spaced energies spanning [lo, hi].
std::vector<std::pair<double, double>> ids_grid(std::span<const double> sorted_eigenvalues, double lo, double hi,
                                                std::size_t points);

// Ordered product T_{end-1} ··· T_{begin} with T_n = [[E − λ v(x_n), −1], [1, 0]].
//
// Kept as Q·R with Q a rotation and R upper triangular whose diagonal is
// stored as logarithms, so long products neither overflow nor lose the
// unit determinant.
class TransferMatrixProduct {
 public:
  TransferMatrixProduct() = default;

  void multiply_left(double a, double b, double c, double d);

  std::size_t factors() const { return factors_; }
  double energy() const { return energy_; }
  IndexRange range() const { return range_; }

  // log|det| and the determinant itself; the latter is exp(log_det) with the
  // tracked sign.
  double log_abs_det() const { return static_cast<double>(log_det_); }
  double determinant() const;
  // log of the largest diagonal entry of R, i.e. the growth of the product.
  double log_norm() const { return static_cast<double>(log_r1_); }
  double growth_rate() const;

  // Entries of the product; may overflow to ±inf for very long products.
  std::array<double, 4> matrix() const;

 private:
  friend TransferMatrixProduct transfer_product(double, std::span<const Letter>, std::span<const double>, double,
                                                IndexRange);
  double q_[4] = {1, 0, 0, 1};
  long double log_r1_ = 0;
  long double log_det_ = 0;
  double sign_ = 1;
  double upper_ = 0;  // R(0,1) / R(0,0)
  std::size_t factors_ = 0;
  double energy_ = 0;
  IndexRange range_;
};

TransferMatrixProduct transfer_product(double energy, std::span<const Letter> x, std::span<const double> values,
                                       double lambda, IndexRange range);

}  // namespace aperiodica::spectral
