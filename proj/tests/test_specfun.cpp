#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "kansa/specfun.hpp"

namespace sf = kansa::specfun;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// e^x K_nu(x) = int_0^inf exp(-x (cosh t - 1)) cosh(nu t) dt, trapezoid in
// long double. The integrand is entire and decays doubly exponentially, so the
// rule converges geometrically in the step.
long double k_scaled_integral(long double nu, long double x) {
  const long double h = 0.01L;
  long double sum = 0.5L;
  for (long double t = h;; t += h) {
    const long double expo = -x * (std::cosh(t) - 1.0L);
    const long double v = std::exp(expo) * std::cosh(nu * t);
    sum += v;
    if (expo + nu * t < -90.0L && t > 1.0L) break;
  }
  return sum * h;
}

struct Ref {
  double nu, x, value;
};

// 30-digit mpmath besselk values, rounded to double.
constexpr Ref kRefs[] = {
    {0, 1e-6, 13.9314420736264195},          {0, 1e-4, 9.32627191345027487},
    {0, 0.5, 0.924419071227665862},          {0, 2, 0.113893872749533436},
    {0, 2.0000001, 0.113893858762946196},    {0.2, 1.999, 0.114983404662909454},
    {0.2, 2.001, 0.114700533081767996},      {0.3, 0.001, 14.4065475290410272},
    {0.75, 3.5, 0.0210455994458594549},      {1, 1, 0.601907230197234575},
    {1, 2, 0.139865881816522427},            {2, 2, 0.253759754566055863},
    {3, 2, 0.647385390948634153},            {2.3, 0.7, 5.97596176121058115},
    {3.3, 0.7, 40.6938672016982509},         {4.1, 10, 3.93223439073370797e-5},
    {5.5, 0.05, 16947139552.2461009},        {7.9, 25, 1.16778014343863451e-11},
    {10, 0.01, 1.8579404390480636e+28},      {10, 100, 7.65542797738810061e-45},
    {1.3, 5, 0.0043070788241686095},         {0.999, 40, 8.49692224081172562e-19},
    {2.5, 1e-6, 3759942411945874.52},        {9.75, 60, 3.09690918439892203e-27},
};

}  // namespace

TEST_CASE("gamma identities and references") {
  CHECK(sf::gamma(1.0) == 1.0);
  CHECK(sf::gamma(5.0) == 24.0);
  CHECK(rel(sf::gamma(0.5), std::sqrt(std::numbers::pi)) < 1e-14);
  const Ref refs[] = {{0, 1.3, 0.897470696306277182},   {0, 2.5, 1.32934038817913702},
                      {0, 3.3, 2.6834373819557683},     {0, 7.7, 2769.83036232731463},
                      {0, 12.25, 73711509.0467699491},  {0, 33.3, 7.48757759652263233e+35},
                      {0, 50, 6.08281864034267561e+62}};
  for (const auto& r : refs) {
    INFO("x = " << r.x);
    CHECK(rel(sf::gamma(r.x), r.value) < 1e-12);
  }
  for (double x = 0.5; x < 49.0; x += 0.37) {
    INFO("x = " << x);
    CHECK(rel(sf::gamma(x + 1.0), x * sf::gamma(x)) < 1e-12);
  }
  CHECK_THROWS_AS(sf::gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(sf::gamma(-1.5), std::domain_error);
}

TEST_CASE("bessel_k matches frozen high-precision values") {
  for (const auto& r : kRefs) {
    INFO("nu = " << r.nu << ", x = " << r.x);
    CHECK(rel(sf::bessel_k(r.nu, r.x), r.value) < 1e-13);
    CHECK(rel(sf::bessel_k_scaled(r.nu, r.x), r.value * std::exp(r.x)) < 1e-13);
  }
}

TEST_CASE("bessel_k matches the integral representation") {
  const double orders[] = {0.0, 0.3, 0.5, 1.0, 1.7, 2.5, 4.2, 7.5, 10.0};
  const double args[] = {1e-3, 0.1, 0.9, 1.99, 2.01, 5.0, 20.0, 80.0};
  for (double nu : orders) {
    for (double x : args) {
      INFO("nu = " << nu << ", x = " << x);
      const auto oracle = static_cast<double>(k_scaled_integral(nu, x));
      CHECK(rel(sf::bessel_k_scaled(nu, x), oracle) < 1e-12);
    }
  }
}

TEST_CASE("half-integer closed forms") {
  CHECK(rel(sf::bessel_k(0.5, 1.0), 0.46106850444789455) < 1e-15);
  CHECK(rel(sf::bessel_k_half_integer(0.5, 1.0), 0.46106850444789455) < 1e-15);
  const double k32 = std::sqrt(std::numbers::pi / 4.0) * std::exp(-2.0) * 1.5;
  CHECK(rel(sf::bessel_k(1.5, 2.0), k32) < 1e-14);
  for (double nu : {0.5, 1.5, 2.5, 3.5, 6.5}) {
    for (double x = 1e-4; x <= 50.0; x *= 1.7) {
      INFO("nu = " << nu << ", x = " << x);
      CHECK(rel(sf::bessel_k(nu, x), sf::bessel_k_half_integer(nu, x)) < 1e-10);
    }
  }
  CHECK(sf::bessel_k_half_integer(-1.5, 0.7) == sf::bessel_k_half_integer(1.5, 0.7));
  CHECK_THROWS_AS(sf::bessel_k_half_integer(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("recurrence, symmetry, positivity and monotonicity") {
  for (double nu = 1.0; nu <= 8.0; nu += 0.35) {
    for (double x = 0.01; x <= 50.0; x *= 1.9) {
      const double km = sf::bessel_k(nu - 1.0, x);
      const double k = sf::bessel_k(nu, x);
      const double kp = sf::bessel_k(nu + 1.0, x);
      INFO("nu = " << nu << ", x = " << x);
      CHECK(std::abs(kp - km - 2.0 * nu / x * k) / kp < 1e-9);
    }
  }
  for (double nu : {0.0, 0.4, 1.0, 2.6, 9.9}) {
    CHECK(sf::bessel_k(-nu, 1.3) == sf::bessel_k(nu, 1.3));
    double prev = sf::bessel_k(nu, 1e-3);
    for (double x = 2e-3; x < 100.0; x *= 1.3) {
      const double v = sf::bessel_k(nu, x);
      CHECK(v > 0.0);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("asymptotic limits") {
  for (double nu : {0.5, 1.0, 1.5, 2.5, 4.0}) {
    const double x = 1e-8;
    INFO("nu = " << nu);
    CHECK(rel(std::pow(x, nu) * sf::bessel_k(nu, x), std::pow(2.0, nu - 1.0) * sf::gamma(nu)) < 1e-6);
  }
  const double x = 80.0;
  const double lead = std::sqrt(2.0 * x / std::numbers::pi) * std::exp(x);
  for (double nu : {0.0, 0.5, 1.0}) CHECK(std::abs(sf::bessel_k(nu, x) * lead - 1.0) < 1e-2);
  // Larger orders: the first correction (4 nu^2 - 1) / (8x) exceeds 1e-2.
  for (double nu : {2.5, 4.0}) {
    const double mu = 4.0 * nu * nu;
    CHECK(std::abs(sf::bessel_k(nu, x) * lead - (1.0 + (mu - 1.0) / (8.0 * x))) < 1e-2);
  }
}

TEST_CASE("dv_pair returns the two lower orders") {
  const auto [a, b] = sf::bessel_k_dv_pair(2.5, 1.0);
  CHECK(rel(a, sf::bessel_k_half_integer(1.5, 1.0)) < 1e-10);
  CHECK(rel(b, sf::bessel_k_half_integer(0.5, 1.0)) < 1e-10);
  const auto [c, d] = sf::bessel_k_dv_pair(2.0, 0.8);
  CHECK(rel(c, sf::bessel_k(1.0, 0.8)) < 1e-15);
  CHECK(rel(d, sf::bessel_k(0.0, 0.8)) < 1e-15);
  // K_2(2), K_1(2) against the frozen table.
  const auto [e, f] = sf::bessel_k_dv_pair(3.0, 2.0);
  CHECK(rel(e, 0.253759754566055863) < 1e-13);
  CHECK(rel(f, 0.139865881816522427) < 1e-13);
  const auto [g, h] = sf::bessel_k_dv_pair_scaled(3.3, 30.0);
  CHECK(rel(g, static_cast<double>(k_scaled_integral(2.3L, 30.0L))) < 1e-12);
  CHECK(rel(h, static_cast<double>(k_scaled_integral(1.3L, 30.0L))) < 1e-12);
}

TEST_CASE("bessel_k errors") {
  CHECK_THROWS_AS(sf::bessel_k(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(sf::bessel_k(1.0, -2.0), std::domain_error);
  CHECK_THROWS_AS(sf::bessel_k(30.0, 1e-20), std::overflow_error);
}
