#include "kansa/assembly.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "kansa/errors.hpp"
#include "kansa/simd.hpp"

namespace kansa {

namespace {

// Coordinate-major copy of a point list: coords[k * n + j] is coordinate k of
// point j.
std::vector<double> coordinate_major(const std::vector<Point>& points, std::size_t d) {
  const std::size_t n = points.size();
  std::vector<double> out(d * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < d; ++k) out[k * n + j] = points[j][k];
  }
  return out;
}

void distances_to(const std::vector<double>& cloud, std::size_t d, std::size_t n, const Point& p, std::vector<double>& out) {
  out.resize(n);
  if (n == 0) return;
  simd::ops().sq_distances(cloud.data(), d, n, p.coords().data(), out.data());
  for (auto& v : out) v = std::sqrt(v);
}

}  // namespace

void check_manufactured(const PoissonProblem& problem, std::uint64_t seed) {
  if (!problem.exact) return;
  const auto points = sample_interior(*problem.domain, Density::uniform(), 20, seed);
  const double h = 1e-3 * problem.domain->scale();
  for (const auto& p : points) {
    const std::size_t d = p.dim();
    double lap = -2.0 * static_cast<double>(d) * (*problem.exact)(p);
    for (std::size_t k = 0; k < d; ++k) {
      Point a = p;
      Point b = p;
      a[k] += h;
      b[k] -= h;
      lap += (*problem.exact)(a) + (*problem.exact)(b);
    }
    lap /= h * h;
    if (std::abs(lap - problem.f(p)) >= 1e-4 * std::max(1.0, std::abs(lap))) {
      throw ConfigError("problem '" + problem.name + "': source term does not match the Laplacian of the exact solution");
    }
  }
}

linalg::Matrix assemble_matrix(const Kernel& kernel, const CollocationSet& colloc) {
  const std::size_t n = colloc.n();
  const std::size_t total = colloc.size();
  const std::size_t d = colloc.dimension();
  const int dim = static_cast<int>(d);
  const std::vector<Point> points = colloc.all_points();
  for (const auto& p : points) {
    if (p.dim() != d) throw ConfigError("assemble_matrix: mixed point dimensions");
  }
  const std::vector<double> cloud = coordinate_major(points, d);
  linalg::Matrix k(total, total);
  std::vector<double> r;
  for (std::size_t i = 0; i < total; ++i) {
    distances_to(cloud, d, total, points[i], r);
    auto row = k.row(i);
    if (i < n) {
      for (std::size_t j = 0; j < total; ++j) row[j] = kernel.laplacian(dim, r[j]);
    } else {
      for (std::size_t j = 0; j < total; ++j) row[j] = kernel.phi(r[j]);
    }
  }
  return k;
}

std::vector<double> assemble_rhs(const PoissonProblem& problem, const CollocationSet& colloc) {
  std::vector<double> rhs;
  rhs.reserve(colloc.size());
  for (const auto& p : colloc.interior) rhs.push_back(problem.f(p));
  for (const auto& q : colloc.boundary) rhs.push_back(problem.g(q));
  for (double v : rhs) {
    if (!std::isfinite(v)) throw ConfigError("assemble_rhs: non-finite right-hand side value");
  }
  return rhs;
}

KansaSystem assemble_system(const Kernel& kernel, const PoissonProblem& problem, const CollocationSet& colloc) {
  return {assemble_matrix(kernel, colloc), assemble_rhs(problem, colloc), colloc.n(), colloc.m(), colloc.dimension()};
}

std::vector<double> evaluate_solution(const Kernel& kernel, const CollocationSet& colloc, const Coefficients& coeffs,
                                      std::span<const Point> points) {
  if (coeffs.c.size() != colloc.n() || coeffs.d.size() != colloc.m()) {
    throw std::invalid_argument("evaluate_solution: coefficient lengths do not match the collocation set");
  }
  const std::size_t d = colloc.dimension();
  const std::vector<Point> centers = colloc.all_points();
  const std::vector<double> cloud = coordinate_major(centers, d);
  std::vector<double> weights = coeffs.c;
  weights.insert(weights.end(), coeffs.d.begin(), coeffs.d.end());
  std::vector<double> r;
  std::vector<double> values(centers.size());
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    if (p.dim() != d) throw std::invalid_argument("evaluate_solution: point dimension mismatch");
    distances_to(cloud, d, centers.size(), p, r);
    for (std::size_t j = 0; j < centers.size(); ++j) values[j] = kernel.phi(r[j]);
    out.push_back(simd::dot(weights, values));
  }
  return out;
}

double evaluate_solution(const Kernel& kernel, const CollocationSet& colloc, const Coefficients& coeffs, const Point& p) {
  return evaluate_solution(kernel, colloc, coeffs, std::span<const Point>(&p, 1)).front();
}

linalg::Matrix bordered_matrix(const Kernel& kernel, const CollocationSet& colloc, const Point& p) {
  const std::size_t n = colloc.n();
  const std::size_t total = colloc.size();
  const std::size_t d = colloc.dimension();
  const int dim = static_cast<int>(d);
  if (p.dim() != d) throw ConfigError("bordered_matrix: candidate point has the wrong dimension");
  const std::vector<Point> points = colloc.all_points();
  for (const auto& q : points) {
    if (q == p) throw ConfigError("bordered_matrix: candidate point coincides with a collocation point");
  }
  const linalg::Matrix base = assemble_matrix(kernel, colloc);
  linalg::Matrix k(total + 1, total + 1);
  for (std::size_t i = 0; i < total; ++i) {
    const auto src = base.row(i);
    std::copy(src.begin(), src.end(), k.row(i).begin());
  }
  std::vector<double> r;
  distances_to(coordinate_major(points, d), d, total, p, r);
  for (std::size_t j = 0; j < total; ++j) {
    const double lap = kernel.laplacian(dim, r[j]);
    k(total, j) = lap;                               // Laplacian of basis j at p
    k(j, total) = j < n ? lap : kernel.phi(r[j]);    // new basis at P_j / Q_j
  }
  k(total, total) = kernel.epsilon() * kernel.epsilon() * kernel.ell0(dim);
  return k;
}

SolveReport solve(const KansaSystem& system) {
  SolveReport report;
  const auto [smin, smax] = linalg::svd_extremes(system.matrix);
  report.sigma_min = smin;
  report.sigma_max = smax;
  report.cond2 = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  report.singular_flag = smin <= linalg::singularity_threshold(system.size(), smax);
  try {
    auto result = linalg::lu_solve(system.matrix, system.rhs);
    report.solved = true;
    report.residual_inf = result.residual_inf;
    report.pivot_growth = result.pivot_growth;
    report.coefficients.c.assign(result.solution.begin(), result.solution.begin() + static_cast<std::ptrdiff_t>(system.n));
    report.coefficients.d.assign(result.solution.begin() + static_cast<std::ptrdiff_t>(system.n), result.solution.end());
  } catch (const SingularMatrixError& e) {
    report.solved = false;
    report.failure = e.what();
  }
  return report;
}

}  // namespace kansa
