#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel primitives behind the dense linear algebra and the matrix
// assembly. Every variant reproduces the scalar reference bit for bit:
// elementwise kernels use the same operation order, and reductions use a
// fixed 8-way interleaved summation (lane k accumulates indices i = k mod 8,
// lanes are combined pairwise ((s0+s4)+(s2+s6)) + ((s1+s5)+(s3+s7)), and the
// tail is added sequentially). No FMA contraction is used.

namespace kansa::simd {

enum class Isa { Scalar, Avx2 };

struct Ops {
  Isa isa;
  /// sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// (x, y) <- (c x - s y, s x + c y)
  void (*rotate)(double c, double s, double* x, double* y, std::size_t n);
  /// out[j] = sum_k (coords[k*n + j] - p[k])^2 for a coordinate-major cloud
  /// of n points in `dim` dimensions.
  void (*sq_distances)(const double* coords, std::size_t dim, std::size_t n, const double* p, double* out);
};

/// Variant currently used by the library. Chosen on first use: the best ISA
/// the CPU supports, unless KANSA_SIMD=scalar|avx2 is set in the environment.
const Ops& ops();

/// Table for a specific ISA; throws std::runtime_error when unavailable.
const Ops& ops_for(Isa isa);

bool available(Isa isa);

/// Overrides the runtime selection (process-wide).
void select(Isa isa);

Isa active_isa();
std::string_view isa_name(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return ops().dot(a.data(), b.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  ops().axpy(alpha, x.data(), y.data(), x.size());
}
inline void rotate(double c, double s, std::span<double> x, std::span<double> y) {
  ops().rotate(c, s, x.data(), y.data(), x.size());
}

namespace detail {
const Ops& scalar_ops();
#if defined(KANSA_HAVE_AVX2)
const Ops& avx2_ops();
#endif
}  // namespace detail

}  // namespace kansa::simd
