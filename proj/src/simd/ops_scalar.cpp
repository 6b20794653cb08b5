#include "kansa/simd.hpp"

namespace kansa::simd::detail {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    for (std::size_t k = 0; k < 8; ++k) {
      const double prod = a[i + k] * b[i + k];
      s[k] = s[k] + prod;
    }
  }
  double total = ((s[0] + s[4]) + (s[2] + s[6])) + ((s[1] + s[5]) + (s[3] + s[7]));
  for (; i < n; ++i) total += a[i] * b[i];
  return total;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void rotate_scalar(double c, double s, double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

void sq_distances_scalar(const double* coords, std::size_t dim, std::size_t n, const double* p, double* out) {
  for (std::size_t j = 0; j < n; ++j) out[j] = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double* row = coords + k * n;
    const double pk = p[k];
    for (std::size_t j = 0; j < n; ++j) {
      const double diff = row[j] - pk;
      out[j] = out[j] + diff * diff;
    }
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops table{Isa::Scalar, dot_scalar, axpy_scalar, rotate_scalar, sq_distances_scalar};
  return table;
}

}  // namespace kansa::simd::detail
