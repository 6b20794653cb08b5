#include "kansa/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "kansa/point.hpp"
#include "kansa/specfun.hpp"

namespace kansa {

namespace {

SignedLog signed_log(double v) {
  if (v == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
  return {std::log(std::abs(v)), v > 0.0 ? 1 : -1};
}

SignedLog add_log(SignedLog a, double log_factor) { return {a.log_abs + log_factor, a.sign}; }

}  // namespace

double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a.coords(), b.coords())); }

std::string_view family_name(KernelFamily family) {
  switch (family) {
    case KernelFamily::Gaussian:
      return "gaussian";
    case KernelFamily::Gimq:
      return "gimq";
    case KernelFamily::Matern:
      return "matern";
  }
  return "unknown";
}

KernelFamily parse_family(std::string_view name) {
  if (name == "gaussian") return KernelFamily::Gaussian;
  if (name == "gimq") return KernelFamily::Gimq;
  if (name == "matern") return KernelFamily::Matern;
  throw std::invalid_argument("unknown kernel family '" + std::string(name) + "'");
}

std::string KernelSpec::label() const { return std::string(family_name(family)); }

namespace profile {

// Gaussian: phi = exp(-rho^2), l_d = exp(-rho^2) (4 rho^2 - 2d).

double Gaussian::phi(double rho) const { return std::exp(-rho * rho); }
double Gaussian::dphi(double rho) const { return -2.0 * rho * std::exp(-rho * rho); }
double Gaussian::ddphi(double rho) const { return (4.0 * rho * rho - 2.0) * std::exp(-rho * rho); }
double Gaussian::ell(int d, double rho) const { return std::exp(-rho * rho) * (4.0 * rho * rho - 2.0 * d); }
double Gaussian::ell0(int d) const { return -2.0 * d; }
SignedLog Gaussian::log_phi(double rho) const { return {-rho * rho, 1}; }
SignedLog Gaussian::log_ell(int d, double rho) const { return add_log(signed_log(4.0 * rho * rho - 2.0 * d), -rho * rho); }

// GIMQ: phi = (1 + rho^2)^beta,
// l_d = 2 beta (1 + rho^2)^(beta-2) (d + (d + 2 beta - 2) rho^2).

double Gimq::phi(double rho) const { return std::pow(1.0 + rho * rho, beta); }
double Gimq::dphi(double rho) const { return 2.0 * beta * rho * std::pow(1.0 + rho * rho, beta - 1.0); }
double Gimq::ddphi(double rho) const {
  const double s = 1.0 + rho * rho;
  return 2.0 * beta * std::pow(s, beta - 2.0) * (1.0 + (2.0 * beta - 1.0) * rho * rho);
}
double Gimq::ell(int d, double rho) const {
  const double r2 = rho * rho;
  return 2.0 * beta * std::pow(1.0 + r2, beta - 2.0) * (d + (d + 2.0 * beta - 2.0) * r2);
}
double Gimq::ell0(int d) const { return 2.0 * beta * d; }
SignedLog Gimq::log_phi(double rho) const { return {beta * std::log1p(rho * rho), 1}; }
SignedLog Gimq::log_ell(int d, double rho) const {
  const double r2 = rho * rho;
  SignedLog bracket = signed_log(d + (d + 2.0 * beta - 2.0) * r2);
  bracket.sign = -bracket.sign;  // beta < 0
  return add_log(bracket, std::log(-2.0 * beta) + (beta - 2.0) * std::log1p(r2));
}

// Matern: phi = c rho^nu K_nu(rho), c = 2^{1-nu}/Gamma(nu);
// phi' = -c rho^nu K_{nu-1}, l_d = -c (d rho^{nu-1} K_{nu-1} - rho^nu K_{nu-2}).

Matern::Matern(double order)
    : nu(order), log_coef((1.0 - order) * std::log(2.0) - specfun::log_gamma(order)) {
  coef = std::exp(log_coef);
}

double Matern::phi(double rho) const {
  if (rho < kOriginCutoff) return 1.0;
  return coef * std::pow(rho, nu) * specfun::bessel_k(nu, rho);
}

double Matern::dphi(double rho) const {
  if (rho < kOriginCutoff) return 0.0;
  const auto [k_nm1, k_nm2] = specfun::bessel_k_dv_pair(nu, rho);
  (void)k_nm2;
  return -coef * std::pow(rho, nu) * k_nm1;
}

double Matern::ddphi(double rho) const {
  if (rho < kOriginCutoff) return -0.5 / (nu - 1.0);
  const auto [k_nm1, k_nm2] = specfun::bessel_k_dv_pair(nu, rho);
  const double rn1 = std::pow(rho, nu - 1.0);
  return -coef * (rn1 * k_nm1 - rn1 * rho * k_nm2);
}

double Matern::ell(int d, double rho) const {
  if (rho < kOriginCutoff) return ell0(d);
  const auto [k_nm1, k_nm2] = specfun::bessel_k_dv_pair(nu, rho);
  const double rn1 = std::pow(rho, nu - 1.0);
  return -coef * (d * rn1 * k_nm1 - rn1 * rho * k_nm2);
}

double Matern::ell0(int d) const { return -static_cast<double>(d) / (2.0 * (nu - 1.0)); }

SignedLog Matern::log_phi(double rho) const {
  if (rho < kOriginCutoff) return {0.0, 1};
  return {log_coef + nu * std::log(rho) + std::log(specfun::bessel_k_scaled(nu, rho)) - rho, 1};
}

SignedLog Matern::log_ell(int d, double rho) const {
  if (rho < kOriginCutoff) return signed_log(ell0(d));
  const auto [k_nm1, k_nm2] = specfun::bessel_k_dv_pair_scaled(nu, rho);
  SignedLog bracket = signed_log(d * k_nm1 - rho * k_nm2);
  bracket.sign = -bracket.sign;
  return add_log(bracket, log_coef + (nu - 1.0) * std::log(rho) - rho);
}

}  // namespace profile

std::optional<std::string> validate(const KernelSpec& spec) {
  if (!(spec.epsilon > 0.0) || !std::isfinite(spec.epsilon)) return "epsilon must be a positive finite number";
  switch (spec.family) {
    case KernelFamily::Gaussian:
      if (spec.beta || spec.nu) return "gaussian kernel takes no beta/nu parameter";
      break;
    case KernelFamily::Gimq:
      if (spec.nu) return "gimq kernel takes no nu parameter";
      if (!spec.beta) return "gimq kernel requires beta";
      if (!(*spec.beta < 0.0) || !std::isfinite(*spec.beta)) return "gimq kernel requires beta < 0";
      break;
    case KernelFamily::Matern:
      if (spec.beta) return "matern kernel takes no beta parameter";
      if (!spec.nu) return "matern kernel requires nu";
      if (!(*spec.nu > 1.0) || !std::isfinite(*spec.nu)) return "matern kernel requires nu > 1";
      break;
  }
  return std::nullopt;
}

namespace {

RadialProfile make_profile(const KernelSpec& spec) {
  if (auto err = validate(spec)) throw std::invalid_argument(*err);
  switch (spec.family) {
    case KernelFamily::Gaussian:
      return profile::Gaussian{};
    case KernelFamily::Gimq:
      return profile::Gimq{*spec.beta};
    case KernelFamily::Matern:
      return profile::Matern{*spec.nu};
  }
  throw std::invalid_argument("unknown kernel family");
}

}  // namespace

Kernel::Kernel(const KernelSpec& spec) : spec_(spec), profile_(make_profile(spec)) {
  for (int d : {2, 3}) {
    const double l0 = ell0(d);
    if (!std::isfinite(l0) || l0 == 0.0) throw std::invalid_argument("kernel has a vanishing Laplacian at the origin");
  }
}

double Kernel::phi(double r) const {
  const double rho = spec_.epsilon * r;
  return std::visit([rho](const auto& p) { return p.phi(rho); }, profile_);
}

double Kernel::ell(int d, double r) const {
  const double rho = spec_.epsilon * r;
  return std::visit([d, rho](const auto& p) { return p.ell(d, rho); }, profile_);
}

double Kernel::ell0(int d) const {
  return std::visit([d](const auto& p) { return p.ell0(d); }, profile_);
}

double Kernel::laplacian(int d, double r) const { return spec_.epsilon * spec_.epsilon * ell(d, r); }

SignedLog Kernel::log_phi(double r) const {
  const double rho = spec_.epsilon * r;
  return std::visit([rho](const auto& p) { return p.log_phi(rho); }, profile_);
}

SignedLog Kernel::log_laplacian(int d, double r) const {
  const double rho = spec_.epsilon * r;
  const SignedLog l = std::visit([d, rho](const auto& p) { return p.log_ell(d, rho); }, profile_);
  return add_log(l, 2.0 * std::log(spec_.epsilon));
}

namespace {

void check_dims(std::span<const double> center, std::span<const double> p) {
  if (center.size() != p.size()) {
    throw std::invalid_argument("point dimension mismatch: " + std::to_string(center.size()) + " vs " +
                                std::to_string(p.size()));
  }
}

}  // namespace

double eval_kernel(const Kernel& kernel, std::span<const double> center, std::span<const double> p) {
  check_dims(center, p);
  return kernel.phi(std::sqrt(squared_distance(center, p)));
}

double eval_laplacian(const Kernel& kernel, int d, std::span<const double> center, std::span<const double> p) {
  check_dims(center, p);
  if (static_cast<std::size_t>(d) != p.size()) throw std::invalid_argument("dimension does not match point size");
  return kernel.laplacian(d, std::sqrt(squared_distance(center, p)));
}

bool AdmissibilityReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

namespace {

// |v_0| > |v_1| > ... with exact zeros allowed once the sequence has reached
// zero.
bool shrinking(const std::vector<double>& values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double prev = std::abs(values[i - 1]);
    const double cur = std::abs(values[i]);
    if (!(cur < prev) && !(cur == 0.0 && prev == 0.0)) return false;
  }
  return true;
}

std::string join(const std::vector<double>& values) {
  std::ostringstream os;
  os.precision(6);
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? ", " : "") << values[i];
  return os.str();
}

}  // namespace

AdmissibilityReport admissibility_report(const Kernel& kernel, int d) {
  AdmissibilityReport report;
  const double eps = kernel.epsilon();
  std::vector<double> phis;
  std::vector<double> ells;
  for (double probe : {10.0, 20.0, 40.0, 80.0}) {
    phis.push_back(kernel.phi(probe / eps));
    ells.push_back(kernel.ell(d, probe / eps));
  }
  report.checks.push_back({"phi_decay", shrinking(phis), "|phi| at {10,20,40,80}/eps: " + join(phis)});
  report.checks.push_back({"ell_decay", shrinking(ells), "|ell| at {10,20,40,80}/eps: " + join(ells)});

  const double l0 = kernel.ell0(d);
  report.checks.push_back({"ell0_nonzero", std::isfinite(l0) && l0 != 0.0, "ell0 = " + join({l0})});

  // Continuity at the origin. Matern profiles approach ell0 like rho^(2nu-2),
  // which is slow for nu near 1, so a sequence that is still converging
  // monotonically also counts.
  std::vector<double> gaps;
  for (double rho : {1e-2, 1e-4, 1e-6}) gaps.push_back(std::abs(kernel.ell(d, rho / eps) - l0) / std::abs(l0));
  const bool continuous = gaps.back() < 1e-3 || (gaps[0] > gaps[1] && gaps[1] > gaps[2]);
  report.checks.push_back({"ell_continuity", continuous, "relative gaps at rho {1e-2,1e-4,1e-6}: " + join(gaps)});
  return report;
}

LaplacianFdCheck laplacian_fd_check(const Kernel& kernel, int d, std::size_t pairs, std::uint64_t seed,
                                    double tolerance) {
  const double eps = kernel.epsilon();
  const double eps2 = eps * eps;
  const bool smooth_center = kernel.spec().family != KernelFamily::Matern;
  auto second_differences = [&](const std::vector<double>& c, std::vector<double> p, double h) {
    const double f0 = eval_kernel(kernel, c, p);
    double sum = 0.0;
    for (int k = 0; k < d; ++k) {
      const double x = p[k];
      p[k] = x + h;
      const double fp = eval_kernel(kernel, c, p);
      p[k] = x - h;
      const double fm = eval_kernel(kernel, c, p);
      p[k] = x;
      sum += (fp - 2.0 * f0) + fm;
    }
    return sum / (h * h);
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit;
  std::normal_distribution<double> gauss;
  LaplacianFdCheck out;
  out.pairs = pairs;
  for (std::size_t i = 0; i < pairs; ++i) {
    std::vector<double> c(d), dir(d), p(d);
    double norm = 0.0;
    for (int k = 0; k < d; ++k) {
      c[k] = unit(rng);
      dir[k] = gauss(rng);
      norm += dir[k] * dir[k];
    }
    const double r = 1e-3 * std::pow(1e4, unit(rng));
    for (int k = 0; k < d; ++k) p[k] = c[k] + r * dir[k] / std::sqrt(norm);

    // Matern kernels are finitely smooth at the center: the stencil stays
    // within distance r of p. Steps below 2e-4/eps drown in evaluation noise.
    const double h = smooth_center ? 0.15 / eps : std::min(0.15 / eps, 0.3 * r);
    int levels = 4;
    while (levels > 2 && std::ldexp(h, 1 - levels) < 2e-4 / eps) --levels;
    double table[4];
    for (int l = 0; l < levels; ++l) table[l] = second_differences(c, p, std::ldexp(h, -l));
    for (int j = 1; j < levels; ++j) {
      const double f = std::ldexp(1.0, 2 * j);
      for (int l = levels - 1; l >= j; --l) table[l] = (f * table[l] - table[l - 1]) / (f - 1.0);
    }
    const double fd = table[levels - 1];

    const double exact = eval_laplacian(kernel, d, c, p);
    const double floor =
        std::max(1e-4 * eps2 * std::abs(eval_kernel(kernel, c, p)), 1e-6 * eps2 * std::abs(kernel.ell0(d)));
    out.max_rel_error = std::max(out.max_rel_error, std::abs(fd - exact) / std::max(std::abs(exact), floor));
  }
  out.passed = out.max_rel_error < tolerance;
  return out;
}

}  // namespace kansa
