#pragma once

#include <utility>

namespace kansa::specfun {

/// Gamma function for x > 0. Throws std::domain_error otherwise.
double gamma(double x);

/// log(Gamma(x)) for x > 0.
double log_gamma(double x);

/// Modified Bessel function of the second kind K_nu(x), x > 0.
///
/// Any real order is accepted; negative orders are folded with K_{-nu} = K_nu.
/// Base orders |mu| <= 1/2 come from Temme's series (x <= 2) or Steed's
/// continued fraction (x > 2), higher orders from the upward recurrence.
/// Throws std::domain_error for x <= 0 and std::overflow_error when the
/// result is not representable.
double bessel_k(double nu, double x);

/// Exponentially scaled e^x K_nu(x). Same contract as bessel_k, but does not
/// underflow for large x.
double bessel_k_scaled(double nu, double x);

/// (K_{nu-1}(x), K_{nu-2}(x)), the lower-order pair used by Matern
/// derivatives, from a single base evaluation.
std::pair<double, double> bessel_k_dv_pair(double nu, double x);

/// Scaled variant of bessel_k_dv_pair: both values multiplied by e^x.
std::pair<double, double> bessel_k_dv_pair_scaled(double nu, double x);

/// Closed form of K_nu for half-integer nu = k + 1/2 (k >= 0 integer, or the
/// mirrored negative orders). Throws std::invalid_argument if nu is not a
/// half-integer.
double bessel_k_half_integer(double nu, double x);

/// Consecutive-order values (K_a(x), K_{a+1}(x)) for any real a, scaled by
/// e^x when `scaled` is set.
std::pair<double, double> bessel_k_ladder(double a, double x, bool scaled);

}  // namespace kansa::specfun
