#include "kansa/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "kansa/errors.hpp"
#include "kansa/simd.hpp"

namespace kansa::linalg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweeps = 80;

void require_square(const Matrix& a, const char* who) {
  if (!a.square()) throw std::invalid_argument(std::string(who) + ": matrix must be square");
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

std::vector<double> multiply(const Matrix& a, std::span<const double> x) {
  if (x.size() != a.cols()) throw std::invalid_argument("multiply: dimension mismatch");
  std::vector<double> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = simd::dot(a.row(i), x);
  return y;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) simd::axpy(a(i, k), b.row(k), c.row(i));
  }
  return c;
}

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double norm_inf(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (double x : a.row(i)) s += std::abs(x);
    m = std::max(m, s);
  }
  return m;
}

double singularity_threshold(std::size_t n, double sigma_max) { return static_cast<double>(n) * kEps * sigma_max; }

LuFactorization lu_factor(const Matrix& a) {
  require_square(a, "lu_factor");
  const std::size_t n = a.rows();
  LuFactorization f{a, {}, 1, 1.0, false};
  f.perm.resize(n);
  std::vector<double> row_scale(n);
  double max_a = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    f.perm[i] = i;
    row_scale[i] = norm_inf(a.row(i));
    max_a = std::max(max_a, row_scale[i]);
  }
  Matrix& lu = f.lu;
  double max_u = max_a;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (piv != k) {
      std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(piv).begin());
      std::swap(f.perm[k], f.perm[piv]);
      f.permutation_sign = -f.permutation_sign;
    }
    const double pivot = lu(k, k);
    const double threshold = static_cast<double>(n) * kEps * row_scale[f.perm[k]];
    if (std::abs(pivot) <= threshold && f.weak_pivot == static_cast<std::size_t>(-1)) {
      f.weak_pivot = k;
      f.weak_pivot_value = pivot;
      f.weak_pivot_threshold = threshold;
    }
    if (pivot == 0.0) {
      f.exact_zero_pivot = true;
      continue;
    }
    const auto pivot_tail = lu.row(k).subspan(k + 1);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = lu(i, k) / pivot;
      lu(i, k) = l;
      if (l != 0.0) simd::axpy(-l, pivot_tail, lu.row(i).subspan(k + 1));
    }
    for (std::size_t j = k; j < n; ++j) max_u = std::max(max_u, std::abs(lu(k, j)));
  }
  f.pivot_growth = max_a > 0.0 ? max_u / max_a : 1.0;
  return f;
}

LuSolveResult lu_solve(const Matrix& a, std::span<const double> rhs) {
  require_square(a, "lu_solve");
  if (rhs.size() != a.rows()) throw std::invalid_argument("lu_solve: rhs length mismatch");
  const LuFactorization f = lu_factor(a);
  if (f.weak_pivot != static_cast<std::size_t>(-1)) {
    throw SingularMatrixError(f.weak_pivot, f.weak_pivot_value, f.weak_pivot_threshold);
  }
  const std::size_t n = a.rows();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = f.lu.row(i);
    x[i] = rhs[f.perm[i]] - simd::dot(row.first(i), std::span<const double>(x).first(i));
  }
  for (std::size_t i = n; i-- > 0;) {
    const auto row = f.lu.row(i);
    const double s = simd::dot(row.subspan(i + 1), std::span<const double>(x).subspan(i + 1));
    x[i] = (x[i] - s) / row[i];
  }
  const std::vector<double> ax = multiply(a, x);
  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(ax[i] - rhs[i]));
  return {std::move(x), residual, f.pivot_growth};
}

DetSignLog det_sign_logabs(const Matrix& a) {
  require_square(a, "det_sign_logabs");
  const LuFactorization f = lu_factor(a);
  if (f.exact_zero_pivot) return {0, -std::numeric_limits<double>::infinity()};
  int sign = f.permutation_sign;
  double log_abs = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double u = f.lu(i, i);
    if (u < 0.0) sign = -sign;
    log_abs += std::log(std::abs(u));
  }
  return {sign, log_abs};
}

std::vector<double> singular_values(const Matrix& a) {
  // One-sided Jacobi on the columns of a, stored as rows of the transpose.
  Matrix cols = a.transposed();
  const std::size_t n = cols.rows();
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = simd::dot(cols.row(p), cols.row(p));
        const double beta = simd::dot(cols.row(q), cols.row(q));
        const double gamma = simd::dot(cols.row(p), cols.row(q));
        if (gamma == 0.0 || std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        simd::rotate(c, c * t, cols.row(p), cols.row(q));
      }
    }
    if (!rotated) break;
  }
  if (sweep == kMaxSweeps) throw std::runtime_error("singular_values: Jacobi sweeps did not converge");
  std::vector<double> sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = std::sqrt(simd::dot(cols.row(i), cols.row(i)));
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

std::pair<double, double> svd_extremes(const Matrix& a) {
  require_square(a, "svd_extremes");
  if (a.rows() == 0) return {0.0, 0.0};
  const std::vector<double> sigma = singular_values(a);
  return {sigma.back(), sigma.front()};
}

std::vector<double> symmetric_eigenvalues(const Matrix& a) {
  require_square(a, "symmetric_eigenvalues");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double x = a(i, j);
      const double y = a(j, i);
      if (std::abs(x - y) > 1e-12 * std::max(std::abs(x), std::abs(y))) {
        throw std::invalid_argument("symmetric_min_eig: matrix is not symmetric");
      }
    }
  }
  Matrix w = a;
  double frob = 0.0;
  for (double x : a.data()) frob += x * x;
  frob = std::sqrt(frob);
  const double floor = kEps * frob / static_cast<double>(std::max<std::size_t>(n, 1));
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = w(p, q);
        const double app = w(p, p);
        const double aqq = w(q, q);
        if (std::abs(apq) <= floor || std::abs(apq) <= kEps * std::sqrt(std::abs(app * aqq))) continue;
        rotated = true;
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, tau) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        simd::rotate(c, s, w.row(p), w.row(q));
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          w(k, p) = w(p, k);
          w(k, q) = w(q, k);
        }
        w(p, p) = app - t * apq;
        w(q, q) = aqq + t * apq;
        w(p, q) = 0.0;
        w(q, p) = 0.0;
      }
    }
    if (!rotated) break;
  }
  if (sweep == kMaxSweeps) throw std::runtime_error("symmetric_eigenvalues: Jacobi sweeps did not converge");
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = w(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

double symmetric_min_eig(const Matrix& a) {
  if (a.rows() == 0) throw std::invalid_argument("symmetric_min_eig: empty matrix");
  return symmetric_eigenvalues(a).front();
}

}  // namespace kansa::linalg
