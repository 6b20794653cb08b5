#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "kansa/assembly.hpp"
#include "kansa/errors.hpp"
#include "kansa/problems.hpp"

using kansa::BoundaryRequest;
using kansa::BoundaryStrategy;
using kansa::CollocationSet;
using kansa::Density;
using kansa::Kernel;
using kansa::KernelSpec;
using kansa::Point;
namespace la = kansa::linalg;

namespace {

CollocationSet random_set(std::size_t n, std::size_t m, std::uint64_t seed, const kansa::DomainPtr& domain) {
  auto interior = kansa::sample_interior(*domain, Density::uniform(), n, seed);
  auto boundary = kansa::sample_boundary(*domain, {BoundaryStrategy::Random, m, seed + 1000, {}});
  return kansa::make_collocation_set(std::move(interior), std::move(boundary), domain.get());
}

double rel_log_gap(const la::DetSignLog& a, const la::DetSignLog& b) {
  return std::abs(a.log_abs - b.log_abs) / std::max(1.0, std::abs(b.log_abs));
}

}  // namespace

TEST_CASE("n = 0 gives the boundary interpolation matrix") {
  const auto square = kansa::make_unit_box(2);
  const Kernel k(KernelSpec::gimq(-0.5, 2.0));
  const auto set = random_set(0, 7, 3, square);
  const auto mat = kansa::assemble_matrix(k, set);
  for (std::size_t h = 0; h < 7; ++h) {
    for (std::size_t j = 0; j < 7; ++j) {
      CHECK(mat(h, j) == kansa::eval_kernel(k, set.boundary[j].coords(), set.boundary[h].coords()));
    }
  }
}

TEST_CASE("two-point example") {
  const Kernel k(KernelSpec::gaussian(1.0));
  const auto set = kansa::make_collocation_set({{0.5, 0.5}}, {{0.0, 0.0}});
  const auto mat = kansa::assemble_matrix(k, set);
  CHECK(mat(0, 0) == -4.0);
  CHECK(mat(1, 1) == 1.0);
  CHECK(std::abs(mat(0, 1) + 2.0 * std::exp(-0.5)) < 1e-15);
  CHECK(std::abs(mat(1, 0) - std::exp(-0.5)) < 1e-15);
}

TEST_CASE("diagonal blocks are symmetric") {
  const auto square = kansa::make_unit_box(2);
  const KernelSpec specs[] = {KernelSpec::gaussian(3.0), KernelSpec::gimq(-1.0, 1.5), KernelSpec::matern(2.5, 2.0)};
  for (int cfg = 0; cfg < 50; ++cfg) {
    const Kernel k(specs[cfg % 3]);
    const std::size_t n = 3 + cfg % 7, m = 4 + cfg % 5;
    const auto set = random_set(n, m, 100 + cfg, square);
    const auto mat = kansa::assemble_matrix(k, set);
    bool symmetric = true;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(mat(i, i) == k.laplacian(2, 0.0));
      for (std::size_t j = 0; j < n; ++j) symmetric = symmetric && mat(i, j) == mat(j, i);
    }
    for (std::size_t h = n; h < n + m; ++h) {
      CHECK(mat(h, h) == k.phi(0.0));
      for (std::size_t j = n; j < n + m; ++j) symmetric = symmetric && mat(h, j) == mat(j, h);
    }
    CHECK(symmetric);
  }
}

TEST_CASE("assembly commutes with point permutations") {
  const auto square = kansa::make_unit_box(2);
  const Kernel k(KernelSpec::matern(2.5, 2.0));
  const auto set = random_set(6, 5, 44, square);
  std::vector<std::size_t> perm_i{3, 0, 5, 1, 4, 2}, perm_b{4, 2, 0, 1, 3};
  CollocationSet shuffled;
  for (auto i : perm_i) shuffled.interior.push_back(set.interior[i]);
  for (auto h : perm_b) shuffled.boundary.push_back(set.boundary[h]);
  const auto a = kansa::assemble_matrix(k, set);
  const auto b = kansa::assemble_matrix(k, shuffled);
  std::vector<std::size_t> full(perm_i);
  for (auto h : perm_b) full.push_back(h + 6);
  for (std::size_t i = 0; i < 11; ++i) {
    for (std::size_t j = 0; j < 11; ++j) CHECK(b(i, j) == a(full[i], full[j]));
  }
  CHECK(std::abs(la::det_sign_logabs(a).log_abs - la::det_sign_logabs(b).log_abs) < 1e-10);
}

TEST_CASE("right-hand side") {
  const auto square = kansa::make_unit_box(2);
  const auto set = random_set(2, 3, 5, square);
  const auto one = kansa::constant_problem(square, 1.0);
  CHECK(kansa::assemble_rhs(one, set) == std::vector<double>{0, 0, 1, 1, 1});

  const auto sine = kansa::manufactured_sine_problem(square);
  const auto rhs = kansa::assemble_rhs(sine, set);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(std::abs(rhs[i] + 2.0 * std::numbers::pi * std::numbers::pi * (*sine.exact)(set.interior[i])) < 1e-12);
  }
  for (std::size_t h = 2; h < 5; ++h) CHECK(std::abs(rhs[h]) < 1e-15);

  const auto boundary_only = random_set(0, 4, 6, square);
  CHECK(kansa::assemble_rhs(one, boundary_only) == std::vector<double>(4, 1.0));

  auto bad = one;
  bad.g = [](const Point&) { return NAN; };
  CHECK_THROWS_AS(kansa::assemble_rhs(bad, set), kansa::ConfigError);
}

TEST_CASE("manufactured solution spot check") {
  const auto square = kansa::make_unit_box(2);
  CHECK_NOTHROW(kansa::check_manufactured(kansa::manufactured_sine_problem(square)));
  CHECK_NOTHROW(kansa::check_manufactured(kansa::manufactured_sine_problem(kansa::make_unit_box(3))));
  auto wrong = kansa::manufactured_sine_problem(square);
  wrong.f = [](const Point&) { return 0.0; };
  CHECK_THROWS_AS(kansa::check_manufactured(wrong), kansa::ConfigError);
}

TEST_CASE("solution evaluation") {
  const auto square = kansa::make_unit_box(2);
  const Kernel k(KernelSpec::gaussian(3.0));
  const auto set = random_set(12, 10, 8, square);
  kansa::Coefficients zero{std::vector<double>(12, 0.0), std::vector<double>(10, 0.0)};
  CHECK(kansa::evaluate_solution(k, set, zero, Point{0.3, 0.3}) == 0.0);

  const auto single = kansa::make_collocation_set({}, {{0.0, 0.5}});
  CHECK(kansa::evaluate_solution(k, single, {{}, {1.0}}, Point{0.0, 0.5}) == 1.0);
  CHECK_THROWS_AS(kansa::evaluate_solution(k, set, {{1.0}, {}}, Point{0.0, 0.5}), std::invalid_argument);

  const auto problem = kansa::constant_problem(square, 2.0);
  const auto report = kansa::solve(kansa::assemble_system(k, problem, set));
  REQUIRE(report.solved);
  CHECK_FALSE(report.singular_flag);
  CHECK(report.sigma_min > 0.0);
  CHECK(report.cond2 >= 1.0);
  for (const auto& q : set.boundary) {
    CHECK(std::abs(kansa::evaluate_solution(k, set, report.coefficients, q) - 2.0) < 1e-6);
  }
  const auto batch = kansa::evaluate_solution(k, set, report.coefficients, std::span<const Point>(set.boundary));
  for (std::size_t h = 0; h < set.m(); ++h) {
    CHECK(batch[h] == kansa::evaluate_solution(k, set, report.coefficients, set.boundary[h]));
  }
}

TEST_CASE("zero data gives zero coefficients") {
  const auto square = kansa::make_unit_box(2);
  const Kernel k(KernelSpec::gaussian(3.0));
  const auto set = random_set(20, 12, 9, square);
  const auto report = kansa::solve(kansa::assemble_system(k, kansa::zero_problem(square), set));
  REQUIRE(report.solved);
  for (double c : report.coefficients.c) CHECK(c == 0.0);
  for (double d : report.coefficients.d) CHECK(d == 0.0);
}

TEST_CASE("bordered matrix") {
  const auto square = kansa::make_unit_box(2);
  const KernelSpec specs[] = {KernelSpec::gaussian(2.0), KernelSpec::gimq(-0.5, 1.0), KernelSpec::matern(2.5, 3.0)};
  for (int cfg = 0; cfg < 20; ++cfg) {
    const Kernel k(specs[cfg % 3]);
    const std::size_t n = cfg % 9, m = 3 + cfg % 8;
    const auto set = random_set(n + 1, m, 300 + cfg, square);
    CollocationSet base{{set.interior.begin(), set.interior.end() - 1}, set.boundary};
    const Point& p = set.interior.back();
    const auto bordered = kansa::bordered_matrix(k, base, p);
    CHECK(bordered(n + m, n + m) == k.epsilon() * k.epsilon() * k.ell0(2));
    const auto grown = kansa::assemble_matrix(k, set);
    INFO("config " << cfg);
    CHECK(rel_log_gap(la::det_sign_logabs(bordered), la::det_sign_logabs(grown)) < 1e-8);
  }

  const Kernel g(KernelSpec::gaussian(2.0));
  const auto set = random_set(4, 5, 12, square);
  const Point far{0.5 + 100.0 / 2.0, 0.5};
  const auto b = kansa::bordered_matrix(g, set, far);
  const std::size_t last = set.size();
  for (std::size_t j = 0; j < last; ++j) {
    CHECK(std::abs(b(last, j)) <= std::abs(g.laplacian(2, 49.0)));
    CHECK(std::abs(b(j, last)) <= std::max(std::abs(g.laplacian(2, 49.0)), g.phi(49.0)));
  }
  CHECK_THROWS_AS(kansa::bordered_matrix(g, set, set.boundary[2]), kansa::ConfigError);
  CHECK_THROWS_AS(kansa::bordered_matrix(g, set, set.interior[0]), kansa::ConfigError);
}

TEST_CASE("tabulated problems look up exact coordinates") {
  const auto square = kansa::make_unit_box(2);
  kansa::TabulatedData data{{{0.5, 0.5}}, {3.0}, {{0.0, 0.5}, {1.0, 0.5}}, {1.0, -1.0}};
  const auto problem = kansa::tabulated_problem(square, data);
  const auto set = kansa::make_collocation_set(data.interior, data.boundary, square.get());
  CHECK(kansa::assemble_rhs(problem, set) == std::vector<double>{3.0, 1.0, -1.0});
  CHECK_THROWS_AS(problem.f(Point{0.25, 0.5}), kansa::ConfigError);
}
