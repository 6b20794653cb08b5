#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kansa/geometry.hpp"
#include "kansa/kernels.hpp"
#include "kansa/linalg.hpp"

namespace kansa {

using ScalarField = std::function<double(const Point&)>;

/// Laplace(u) = f in the domain, u = g on its boundary. When `exact` is set it
/// must satisfy f = Laplace(exact) and g = exact on the boundary.
struct PoissonProblem {
  DomainPtr domain;
  ScalarField f;
  ScalarField g;
  std::optional<ScalarField> exact;
  std::string name;
};

/// Finite-difference spot check of f = Laplace(exact) at 20 random interior
/// points (|error| < 1e-4). Throws ConfigError on failure; no-op without an
/// exact solution.
void check_manufactured(const PoissonProblem& problem, std::uint64_t seed = 7);

/// Block system [[L Phi, L Psi], [Phi, Psi]] [c; d] = [f; g]. Rows 0..n-1 are
/// the PDE rows at the interior points, rows n..N-1 the boundary rows; columns
/// 0..n-1 belong to interior-centered basis functions, n..N-1 to
/// boundary-centered ones.
struct KansaSystem {
  linalg::Matrix matrix;
  std::vector<double> rhs;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d = 0;

  std::size_t size() const { return n + m; }
};

struct Coefficients {
  std::vector<double> c;  // interior-centered weights
  std::vector<double> d;  // boundary-centered weights
};

linalg::Matrix assemble_matrix(const Kernel& kernel, const CollocationSet& colloc);

/// (f(P_1), ..., f(P_n), g(Q_1), ..., g(Q_m)). Throws ConfigError on
/// non-finite values.
std::vector<double> assemble_rhs(const PoissonProblem& problem, const CollocationSet& colloc);

KansaSystem assemble_system(const Kernel& kernel, const PoissonProblem& problem, const CollocationSet& colloc);

/// u_N(p) = sum_j c_j phi_j(p) + sum_k d_k psi_k(p).
double evaluate_solution(const Kernel& kernel, const CollocationSet& colloc, const Coefficients& coeffs, const Point& p);

/// Batched u_N over many evaluation points.
std::vector<double> evaluate_solution(const Kernel& kernel, const CollocationSet& colloc, const Coefficients& coeffs,
                                      std::span<const Point> points);

/// The (N+1)x(N+1) matrix obtained by adding a candidate interior point p:
/// the new PDE row is appended last and the new basis column last, with the
/// corner eps^2 l_d(0). Throws ConfigError if p coincides with a collocation
/// point.
linalg::Matrix bordered_matrix(const Kernel& kernel, const CollocationSet& colloc, const Point& p);

struct SolveReport {
  bool solved = false;  // false when the LU pivot test rejected the system
  std::string failure;
  Coefficients coefficients;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double cond2 = 0.0;
  double residual_inf = 0.0;
  double pivot_growth = 0.0;
  bool singular_flag = false;  // sigma_min <= N u sigma_max
};

/// LU solve plus singular-value diagnostics. A failed pivot test is reported,
/// not thrown.
SolveReport solve(const KansaSystem& system);

}  // namespace kansa
