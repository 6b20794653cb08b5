#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace kansa::linalg {

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double value = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  Matrix transposed() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

std::vector<double> multiply(const Matrix& a, std::span<const double> x);
Matrix multiply(const Matrix& a, const Matrix& b);
double norm_inf(std::span<const double> v);
/// Maximum absolute row sum.
double norm_inf(const Matrix& a);

/// Threshold below which a smallest singular value counts as singular:
/// N * machine epsilon * sigma_max.
double singularity_threshold(std::size_t n, double sigma_max);

/// Row-pivoted LU factors packed in one matrix (unit lower part below the
/// diagonal).
struct LuFactorization {
  Matrix lu;
  std::vector<std::size_t> perm;  // row i of lu came from row perm[i] of the input
  int permutation_sign = 1;
  double pivot_growth = 1.0;  // max |U_ij| / max |A_ij|
  bool exact_zero_pivot = false;
  /// First pivot with |pivot| <= N u max|input row|, or npos.
  std::size_t weak_pivot = static_cast<std::size_t>(-1);
  double weak_pivot_value = 0.0;
  double weak_pivot_threshold = 0.0;
};

/// Gaussian elimination with partial pivoting. Never throws on singular
/// input; inspect weak_pivot / exact_zero_pivot.
LuFactorization lu_factor(const Matrix& a);

struct LuSolveResult {
  std::vector<double> solution;
  double residual_inf;
  double pivot_growth;
};

/// Solves a x = rhs. Throws SingularMatrixError when a pivot falls below the
/// threshold, std::invalid_argument on shape mismatch.
LuSolveResult lu_solve(const Matrix& a, std::span<const double> rhs);

struct DetSignLog {
  int sign;  // -1, 0, +1
  double log_abs;
};

/// Sign and natural log of |det a| from the pivoted LU factors. Sign 0 (and
/// log_abs = -inf) iff an exactly zero pivot was hit.
DetSignLog det_sign_logabs(const Matrix& a);

/// All singular values, descending, by one-sided Jacobi. Throws
/// std::runtime_error if the sweep budget is exhausted.
std::vector<double> singular_values(const Matrix& a);

/// (sigma_min, sigma_max)
std::pair<double, double> svd_extremes(const Matrix& a);

/// Smallest eigenvalue of a symmetric matrix by cyclic Jacobi. Throws
/// std::invalid_argument if a is not symmetric to 1e-12 relative.
double symmetric_min_eig(const Matrix& a);

/// All eigenvalues of a symmetric matrix, ascending.
std::vector<double> symmetric_eigenvalues(const Matrix& a);

}  // namespace kansa::linalg
