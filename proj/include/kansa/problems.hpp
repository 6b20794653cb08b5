#pragma once

#include <string>
#include <vector>

#include "kansa/assembly.hpp"

namespace kansa {

/// f = 0, g = 0, exact u = 0.
PoissonProblem zero_problem(DomainPtr domain);

/// f = 0, g = value, exact u = value.
PoissonProblem constant_problem(DomainPtr domain, double value);

/// u* = prod_k sin(pi x_k), f = -d pi^2 u*, g = u* on the boundary (zero on
/// the unit box).
PoissonProblem manufactured_sine_problem(DomainPtr domain);

/// Tabulated data: f at listed interior points, g at listed boundary points.
/// Lookups are by exact coordinates; querying any other point throws
/// ConfigError.
struct TabulatedData {
  std::vector<Point> interior;
  std::vector<double> f_values;
  std::vector<Point> boundary;
  std::vector<double> g_values;
};

PoissonProblem tabulated_problem(DomainPtr domain, const TabulatedData& data);

}  // namespace kansa
