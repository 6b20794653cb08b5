#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kansa {

enum class KernelFamily { Gaussian, Gimq, Matern };

std::string_view family_name(KernelFamily family);
KernelFamily parse_family(std::string_view name);

/// User-facing kernel description. `beta` is present iff family is Gimq and
/// `nu` iff family is Matern.
struct KernelSpec {
  KernelFamily family = KernelFamily::Gaussian;
  double epsilon = 1.0;
  std::optional<double> beta;
  std::optional<double> nu;

  static KernelSpec gaussian(double epsilon) { return {KernelFamily::Gaussian, epsilon, std::nullopt, std::nullopt}; }
  static KernelSpec gimq(double beta, double epsilon) { return {KernelFamily::Gimq, epsilon, beta, std::nullopt}; }
  static KernelSpec matern(double nu, double epsilon) { return {KernelFamily::Matern, epsilon, std::nullopt, nu}; }

  /// Short label for file names, e.g. "gaussian" or "matern".
  std::string label() const;
};

/// sign * exp(log_abs); sign 0 encodes an exact zero.
struct SignedLog {
  double log_abs;
  int sign;
};

namespace profile {

// Unscaled radial profiles phi(rho) and their derivatives. ell(d, rho) is the
// radial form of the d-dimensional Laplacian, phi'' + (d-1) phi' / rho.

struct Gaussian {
  double phi(double rho) const;
  double dphi(double rho) const;
  double ddphi(double rho) const;
  double ell(int d, double rho) const;
  double ell0(int d) const;
  SignedLog log_phi(double rho) const;
  SignedLog log_ell(int d, double rho) const;
};

struct Gimq {
  double beta;
  double phi(double rho) const;
  double dphi(double rho) const;
  double ddphi(double rho) const;
  double ell(int d, double rho) const;
  double ell0(int d) const;
  SignedLog log_phi(double rho) const;
  SignedLog log_ell(int d, double rho) const;
};

struct Matern {
  /// Below this argument the analytic limits at the origin are returned.
  static constexpr double kOriginCutoff = 1e-8;

  explicit Matern(double nu);
  double nu;
  double coef;      // 2^{1-nu} / Gamma(nu)
  double log_coef;  // log(coef)

  double phi(double rho) const;
  double dphi(double rho) const;
  double ddphi(double rho) const;
  double ell(int d, double rho) const;
  double ell0(int d) const;
  SignedLog log_phi(double rho) const;
  SignedLog log_ell(int d, double rho) const;
};

}  // namespace profile

using RadialProfile = std::variant<profile::Gaussian, profile::Gimq, profile::Matern>;

/// A validated kernel phi_eps(r) = phi(eps r). Immutable; all evaluations are
/// pure.
class Kernel {
 public:
  /// Throws std::invalid_argument when `spec` violates the admissible
  /// parameter ranges (eps > 0, beta < 0, nu > 1).
  explicit Kernel(const KernelSpec& spec);

  const KernelSpec& spec() const { return spec_; }
  double epsilon() const { return spec_.epsilon; }
  const RadialProfile& profile() const { return profile_; }

  /// phi(eps r)
  double phi(double r) const;
  /// Unscaled profile l_d at rho = eps r.
  double ell(int d, double r) const;
  /// Limit of l_d at the origin (without the eps^2 factor).
  double ell0(int d) const;
  /// Laplacian of the kernel at distance r: eps^2 l_d(eps r).
  double laplacian(int d, double r) const;

  SignedLog log_phi(double r) const;
  SignedLog log_laplacian(int d, double r) const;

 private:
  KernelSpec spec_;
  RadialProfile profile_;
};

/// Validates a spec without building the kernel; returns an error message or
/// nothing.
std::optional<std::string> validate(const KernelSpec& spec);

double eval_kernel(const Kernel& kernel, std::span<const double> center, std::span<const double> p);
double eval_laplacian(const Kernel& kernel, int d, std::span<const double> center, std::span<const double> p);

struct AdmissibilityCheck {
  std::string name;
  bool passed;
  std::string detail;
};

struct AdmissibilityReport {
  std::vector<AdmissibilityCheck> checks;
  bool passed() const;
};

/// Numerical checks of the decay / origin conditions: phi and l_d decay on
/// the probe radii {10,20,40,80}/eps, l_d(0) != 0, and l_d continuous at the
/// origin. Positive definiteness of the boundary matrix is checked by the
/// harness.
AdmissibilityReport admissibility_report(const Kernel& kernel, int d);

struct LaplacianFdCheck {
  std::size_t pairs = 0;
  double max_rel_error = 0.0;
  bool passed = false;
};

/// Compares eval_laplacian with a Richardson-extrapolated central-difference
/// Laplacian of eval_kernel at random pairs whose distances are log-uniform in
/// [1e-3, 10]. The relative error's denominator is floored at
/// 1e-4 eps^2 |phi| and 1e-6 eps^2 |l_d(0)|.
LaplacianFdCheck laplacian_fd_check(const Kernel& kernel, int d, std::size_t pairs, std::uint64_t seed,
                                    double tolerance = 1e-6);

}  // namespace kansa
