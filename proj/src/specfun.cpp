#include "kansa/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kansa::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Below this argument the Temme series is used for the base orders; above it
// Steed's continued fraction. Both are accurate near the switch.
constexpr double kSeriesSwitch = 2.0;
constexpr int kMaxIterations = 10000;

// Taylor coefficients of 1/Gamma(1+z) about z = 0.
constexpr std::array<double, 27> kRecipGamma = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
};

struct TemmeGammas {
  double gam1;   // (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
  double gam2;   // (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
  double gampl;  // 1/Gamma(1+mu)
  double gammi;  // 1/Gamma(1-mu)
};

// Even and odd parts of the 1/Gamma(1+z) series, so gam1 has no cancellation
// as mu -> 0.
TemmeGammas temme_gammas(double mu) {
  const double mu2 = mu * mu;
  double even = 0.0;
  double odd = 0.0;
  for (int k = static_cast<int>(kRecipGamma.size()) - 1; k >= 0; --k) {
    if (k % 2 == 0) {
      even = even * mu2 + kRecipGamma[static_cast<std::size_t>(k)];
    } else {
      odd = odd * mu2 + kRecipGamma[static_cast<std::size_t>(k)];
    }
  }
  // 1/Gamma(1+mu) = even + mu*odd, 1/Gamma(1-mu) = even - mu*odd.
  return {-odd, even, even + mu * odd, even - mu * odd};
}

// Temme's series for (K_mu, K_{mu+1}), |mu| <= 1/2, 0 < x <= 2.
std::pair<double, double> temme_series(double mu, double x) {
  const double half_x = 0.5 * x;
  const double pimu = std::numbers::pi * mu;
  const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
  const double d = -std::log(half_x);
  const double e = mu * d;
  const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
  const TemmeGammas g = temme_gammas(mu);

  double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
  double sum = ff;
  const double ee = std::exp(e);
  double p = 0.5 * ee / g.gampl;
  double q = 0.5 / (ee * g.gammi);
  double c = 1.0;
  const double dd = half_x * half_x;
  double sum1 = p;
  int i = 1;
  for (; i <= kMaxIterations; ++i) {
    const double fi = i;
    ff = (fi * ff + p + q) / (fi * fi - mu * mu);
    c *= dd / fi;
    p /= (fi - mu);
    q /= (fi + mu);
    const double del = c * ff;
    sum += del;
    sum1 += c * (p - fi * ff);
    if (std::abs(del) < std::abs(sum) * kEps) break;
  }
  if (i > kMaxIterations) throw std::runtime_error("bessel_k: Temme series did not converge");
  return {sum, sum1 * 2.0 / x};
}

// Steed's continued fraction for e^x (K_mu, K_{mu+1}), |mu| <= 1/2, x > 2.
std::pair<double, double> steed_cf2_scaled(double mu, double x) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25 - mu * mu;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  int i = 2;
  for (; i <= kMaxIterations; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  if (i > kMaxIterations) throw std::runtime_error("bessel_k: continued fraction did not converge");
  h *= a1;
  const double kmu = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
  const double kmu1 = kmu * (mu + x + 0.5 - h) / x;
  return {kmu, kmu1};
}

std::pair<double, double> base_pair(double mu, double x, bool scaled) {
  if (x <= kSeriesSwitch) {
    auto [k0, k1] = temme_series(mu, x);
    if (scaled) {
      const double ex = std::exp(x);
      k0 *= ex;
      k1 *= ex;
    }
    return {k0, k1};
  }
  auto [k0, k1] = steed_cf2_scaled(mu, x);
  if (!scaled) {
    const double emx = std::exp(-x);
    k0 *= emx;
    k1 *= emx;
  }
  return {k0, k1};
}

void check_argument(double x, const char* who) {
  if (!(x > 0.0)) {
    throw std::domain_error(std::string(who) + ": argument must be positive, got " + std::to_string(x));
  }
}

double checked(double v, const char* who) {
  if (!std::isfinite(v)) throw std::overflow_error(std::string(who) + ": result overflows double");
  return v;
}

bool is_half_integer(double nu) {
  const double twice = 2.0 * nu;
  return twice == std::round(twice) && std::fmod(std::abs(twice), 2.0) == 1.0;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma: argument must be positive");
  // Lanczos approximation, g = 671/128, 14 terms.
  static constexpr std::array<double, 14> cof = {
      57.1562356658629235,     -59.5979603554754912,     14.1360979747417471,
      -0.491913816097620199,   .339946499848118887e-4,   .465236289270485756e-4,
      -.983744753048795646e-4, .158088703224912494e-3,   -.210264441724104883e-3,
      .217439618115212643e-3,  -.164318106536763890e-3,  .844182239838527433e-4,
      -.261908384015814087e-4, .368991826595316234e-5};
  double y = x;
  const double tmp = x + 5.24218750000000000;
  const double lead = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (double cj : cof) ser += cj / ++y;
  return lead + std::log(2.5066282746310005 * ser / x);
}

double gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma: argument must be positive");
  if (x == std::floor(x) && x <= 21.0) {
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
    return f;
  }
  return checked(std::exp(log_gamma(x)), "gamma");
}

std::pair<double, double> bessel_k_ladder(double a, double x, bool scaled) {
  check_argument(x, "bessel_k");
  if (a < -0.5) {
    // (K_a, K_{a+1}) = (K_{-a}, K_{-a-1}) = swap of the ladder at -a-1.
    auto [lo, hi] = bessel_k_ladder(-a - 1.0, x, scaled);
    return {hi, lo};
  }
  const double steps = std::floor(a + 0.5);
  const double mu = a - steps;
  auto [k0, k1] = base_pair(mu, x, scaled);
  double order = mu + 1.0;
  for (int i = 0; i < static_cast<int>(steps); ++i) {
    const double next = k0 + (2.0 * order / x) * k1;
    k0 = k1;
    k1 = next;
    order += 1.0;
  }
  return {k0, k1};
}

double bessel_k(double nu, double x) {
  check_argument(x, "bessel_k");
  return checked(bessel_k_ladder(std::abs(nu), x, false).first, "bessel_k");
}

double bessel_k_scaled(double nu, double x) {
  check_argument(x, "bessel_k_scaled");
  return checked(bessel_k_ladder(std::abs(nu), x, true).first, "bessel_k_scaled");
}

std::pair<double, double> bessel_k_dv_pair(double nu, double x) {
  check_argument(x, "bessel_k_dv_pair");
  auto [k_nm2, k_nm1] = bessel_k_ladder(nu - 2.0, x, false);
  return {checked(k_nm1, "bessel_k_dv_pair"), checked(k_nm2, "bessel_k_dv_pair")};
}

std::pair<double, double> bessel_k_dv_pair_scaled(double nu, double x) {
  check_argument(x, "bessel_k_dv_pair_scaled");
  auto [k_nm2, k_nm1] = bessel_k_ladder(nu - 2.0, x, true);
  return {checked(k_nm1, "bessel_k_dv_pair_scaled"), checked(k_nm2, "bessel_k_dv_pair_scaled")};
}

double bessel_k_half_integer(double nu, double x) {
  check_argument(x, "bessel_k_half_integer");
  if (!is_half_integer(nu)) throw std::invalid_argument("bessel_k_half_integer: order is not a half-integer");
  // K_{k+1/2}(x) = sqrt(pi/(2x)) e^{-x} sum_{j=0}^{k} (k+j)! / (j! (k-j)! (2x)^j)
  const int k = static_cast<int>(std::abs(nu) - 0.5);
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j <= k; ++j) {
    term *= static_cast<double>((k + j) * (k - j + 1)) / (j * 2.0 * x);
    sum += term;
  }
  return checked(std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) * sum, "bessel_k_half_integer");
}

}  // namespace kansa::specfun
