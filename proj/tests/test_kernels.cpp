#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "kansa/kernels.hpp"
#include "support/oracles.hpp"

using kansa::Kernel;
using kansa::KernelSpec;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Random pair (center, p) in d dimensions at a log-uniform distance.
std::pair<std::vector<double>, std::vector<double>> random_pair(std::mt19937_64& rng, int d, double rmin, double rmax) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  std::vector<double> c(d), dir(d), p(d);
  double norm = 0.0;
  for (int k = 0; k < d; ++k) {
    c[k] = unit(rng);
    dir[k] = gauss(rng);
    norm += dir[k] * dir[k];
  }
  norm = std::sqrt(norm);
  const double r = rmin * std::pow(rmax / rmin, unit(rng));
  for (int k = 0; k < d; ++k) p[k] = c[k] + r * dir[k] / norm;
  return {c, p};
}

double max_fd_error(const Kernel& kernel, int d, int pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const auto [c, p] = random_pair(rng, d, 1e-3, 10.0);
    double r2 = 0.0;
    for (int k = 0; k < d; ++k) r2 += (c[k] - p[k]) * (c[k] - p[k]);
    const double exact = kansa::eval_laplacian(kernel, d, c, p);
    const double approx = oracle::fd_laplacian(kernel, c, p, std::sqrt(r2));
    worst = std::max(worst, oracle::laplacian_error(kernel, d, kansa::eval_kernel(kernel, c, p), exact, approx));
  }
  return worst;
}

}  // namespace

TEST_CASE("d=2 closed forms") {
  for (double r = 0.0; r <= 10.0; r += 0.01) {
    const Kernel g(KernelSpec::gaussian(1.0));
    const double closed = 4.0 * std::exp(-r * r) * (r * r - 1.0);
    if (closed != 0.0) CHECK(rel(g.ell(2, r), closed) < 1e-12);
    for (double beta : {-0.5, -1.0, -3.0, -0.3}) {
      const Kernel k(KernelSpec::gimq(beta, 1.0));
      const double gimq = 4.0 * beta * std::pow(1.0 + r * r, beta - 2.0) * (1.0 + beta * r * r);
      INFO("beta = " << beta << ", r = " << r);
      if (std::abs(gimq) > 1e-300) CHECK(rel(k.ell(2, r), gimq) < 1e-12);
    }
  }
  CHECK(Kernel(KernelSpec::gaussian(1.0)).ell0(2) == -4.0);
  for (double beta : {-0.5, -1.0, -3.0}) CHECK(rel(Kernel(KernelSpec::gimq(beta, 1.0)).ell0(2), 4.0 * beta) < 1e-8);
  for (double nu : {1.5, 2.0, 2.5, 3.3}) CHECK(rel(Kernel(KernelSpec::matern(nu, 1.0)).ell0(2), 1.0 / (1.0 - nu)) < 1e-8);
}

TEST_CASE("ell0 in general dimension") {
  for (int d = 1; d <= 4; ++d) {
    CHECK(Kernel(KernelSpec::gaussian(2.0)).ell0(d) == -2.0 * d);
    CHECK(rel(Kernel(KernelSpec::gimq(-1.5, 2.0)).ell0(d), 2.0 * -1.5 * d) < 1e-15);
    CHECK(rel(Kernel(KernelSpec::matern(2.5, 2.0)).ell0(d), -d / (2.0 * 1.5)) < 1e-15);
  }
}

TEST_CASE("value at the center is one") {
  CHECK(Kernel(KernelSpec::gaussian(3.0)).phi(0.0) == 1.0);
  CHECK(Kernel(KernelSpec::gimq(-0.5, 3.0)).phi(0.0) == 1.0);
  CHECK(rel(Kernel(KernelSpec::matern(2.3, 3.0)).phi(0.0), 1.0) < 1e-15);
}

TEST_CASE("laplacian is eps^2 times the profile at the center") {
  for (const auto& spec : {KernelSpec::gaussian(2.5), KernelSpec::gimq(-1.0, 2.5), KernelSpec::matern(2.5, 2.5)}) {
    const Kernel k(spec);
    CHECK(rel(k.laplacian(2, 0.0), 6.25 * k.ell0(2)) < 1e-14);
    CHECK(rel(k.laplacian(3, 0.4), 6.25 * k.ell(3, 0.4)) < 1e-14);
  }
}

TEST_CASE("Matern half-integer profiles") {
  // nu = 3/2: phi = (1 + rho) e^{-rho}, l_d = (rho - d) e^{-rho}.
  const Kernel m32(KernelSpec::matern(1.5, 1.0));
  // nu = 5/2: phi = (1 + rho + rho^2/3) e^{-rho}.
  const Kernel m52(KernelSpec::matern(2.5, 1.0));
  for (double rho = 1e-6; rho < 60.0; rho *= 1.5) {
    INFO("rho = " << rho);
    CHECK(rel(m32.phi(rho), (1.0 + rho) * std::exp(-rho)) < 1e-12);
    CHECK(rel(m52.phi(rho), (1.0 + rho + rho * rho / 3.0) * std::exp(-rho)) < 1e-12);
    for (int d = 2; d <= 3; ++d) {
      const double exact = (rho - d) * std::exp(-rho);
      if (std::abs(rho - d) > 1e-3) CHECK(rel(m32.ell(d, rho), exact) < 1e-11);
    }
  }
}

TEST_CASE("Matern is continuous across the origin cutoff") {
  for (double nu : {1.5, 2.0, 2.7, 4.0}) {
    const Kernel k(KernelSpec::matern(nu, 1.0));
    for (int d = 2; d <= 3; ++d) {
      const double below = k.ell(d, 0.999e-8);
      const double above = k.ell(d, 1.001e-8);
      INFO("nu = " << nu << ", d = " << d);
      CHECK(std::abs(above - below) < 1e-6 * std::abs(k.ell0(d)));
      CHECK(std::abs(k.phi(1.001e-8) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("Laplacian agrees with finite differences") {
  const KernelSpec specs[] = {KernelSpec::gaussian(0.5), KernelSpec::gaussian(5.0), KernelSpec::gimq(-0.5, 1.0),
                              KernelSpec::gimq(-3.0, 2.0), KernelSpec::matern(1.5, 1.0), KernelSpec::matern(3.3, 2.0)};
  std::uint64_t seed = 11;
  for (const auto& spec : specs) {
    const Kernel k(spec);
    for (int d = 2; d <= 3; ++d) {
      INFO(spec.label() << " d = " << d);
      CHECK(max_fd_error(k, d, 40, seed++) < 1e-6);
    }
  }
}

TEST_CASE("log-domain evaluations") {
  const KernelSpec specs[] = {KernelSpec::gaussian(1.0), KernelSpec::gimq(-0.5, 1.0), KernelSpec::matern(2.5, 1.0)};
  for (const auto& spec : specs) {
    const Kernel k(spec);
    for (double r : {0.0, 0.3, 1.7, 2.0, 5.0, 12.0}) {
      INFO(spec.label() << " r = " << r);
      const auto lp = k.log_phi(r);
      CHECK(lp.sign == 1);
      CHECK(std::abs(std::exp(lp.log_abs) - k.phi(r)) <= 1e-13 * k.phi(r));
      const double lap = k.laplacian(2, r);
      const auto ll = k.log_laplacian(2, r);
      if (lap != 0.0) {
        CHECK(ll.sign == (lap > 0 ? 1 : -1));
        CHECK(std::abs(std::exp(ll.log_abs) - std::abs(lap)) <= 1e-11 * std::abs(lap));
      }
    }
    // Far tails stay finite in the log domain after the direct values underflow.
    const auto far = k.log_laplacian(2, 800.0);
    CHECK(std::isfinite(far.log_abs));
    CHECK(far.sign != 0);
  }
  CHECK(Kernel(KernelSpec::gaussian(1.0)).phi(40.0) == 0.0);
  CHECK(Kernel(KernelSpec::gaussian(1.0)).log_phi(40.0).log_abs == doctest::Approx(-1600.0));
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(Kernel(KernelSpec::gaussian(0.0)), std::invalid_argument);
  CHECK_THROWS_AS(Kernel(KernelSpec::gaussian(-1.0)), std::invalid_argument);
  CHECK_THROWS_AS(Kernel(KernelSpec::gimq(0.0, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(Kernel(KernelSpec::gimq(0.5, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(Kernel(KernelSpec::matern(0.8, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(Kernel(KernelSpec::matern(1.0, 1.0)), std::invalid_argument);
  KernelSpec missing{kansa::KernelFamily::Gimq, 1.0, std::nullopt, std::nullopt};
  CHECK(kansa::validate(missing).has_value());
  KernelSpec extra = KernelSpec::gaussian(1.0);
  extra.nu = 2.0;
  CHECK(kansa::validate(extra).has_value());
  CHECK_FALSE(kansa::validate(KernelSpec::matern(1.01, 1.0)).has_value());
  CHECK(kansa::parse_family("matern") == kansa::KernelFamily::Matern);
  CHECK_THROWS_AS(kansa::parse_family("multiquadric"), std::invalid_argument);
}

TEST_CASE("point evaluation helpers") {
  const Kernel k(KernelSpec::gaussian(1.0));
  const std::vector<double> a{0.5, 0.5}, b{0.0, 0.0}, c{1.0, 2.0, 3.0};
  CHECK(rel(kansa::eval_kernel(k, a, b), std::exp(-0.5)) < 1e-15);
  CHECK(rel(kansa::eval_laplacian(k, 2, b, a), -2.0 * std::exp(-0.5)) < 1e-15);
  CHECK(kansa::eval_laplacian(k, 2, a, a) == -4.0);
  CHECK_THROWS_AS(kansa::eval_kernel(k, a, c), std::invalid_argument);
  CHECK_THROWS_AS(kansa::eval_laplacian(k, 3, a, b), std::invalid_argument);
}

TEST_CASE("admissibility of the standard kernels") {
  const KernelSpec specs[] = {KernelSpec::gaussian(1.0), KernelSpec::gimq(-0.5, 1.0), KernelSpec::gimq(-1.0, 2.0),
                              KernelSpec::matern(1.5, 1.0), KernelSpec::matern(1.05, 1.0), KernelSpec::matern(4.0, 3.0)};
  for (const auto& spec : specs) {
    for (int d = 2; d <= 3; ++d) {
      const auto report = kansa::admissibility_report(Kernel(spec), d);
      INFO(spec.label() << " d = " << d);
      for (const auto& c : report.checks) INFO(c.name << ": " << c.detail);
      CHECK(report.passed());
      CHECK(report.checks.size() == 4);
    }
  }
}
