#include "kansa/problems.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <numbers>

#include "kansa/errors.hpp"

namespace kansa {

PoissonProblem zero_problem(DomainPtr domain) {
  const ScalarField zero = [](const Point&) { return 0.0; };
  return {std::move(domain), zero, zero, zero, "zero"};
}

PoissonProblem constant_problem(DomainPtr domain, double value) {
  if (!std::isfinite(value)) throw ConfigError("constant problem: value must be finite");
  const ScalarField u = [value](const Point&) { return value; };
  return {std::move(domain), [](const Point&) { return 0.0; }, u, u, "constant"};
}

PoissonProblem manufactured_sine_problem(DomainPtr domain) {
  const ScalarField u = [](const Point& p) {
    double v = 1.0;
    for (std::size_t k = 0; k < p.dim(); ++k) v *= std::sin(std::numbers::pi * p[k]);
    return v;
  };
  const ScalarField f = [u](const Point& p) {
    return -static_cast<double>(p.dim()) * std::numbers::pi * std::numbers::pi * u(p);
  };
  return {std::move(domain), f, u, u, "manufactured_sine"};
}

PoissonProblem tabulated_problem(DomainPtr domain, const TabulatedData& data) {
  if (data.interior.size() != data.f_values.size() || data.boundary.size() != data.g_values.size()) {
    throw ConfigError("tabulated problem: point and value counts differ");
  }
  auto f_table = std::make_shared<std::map<Point, double>>();
  auto g_table = std::make_shared<std::map<Point, double>>();
  for (std::size_t i = 0; i < data.interior.size(); ++i) (*f_table)[data.interior[i]] = data.f_values[i];
  for (std::size_t i = 0; i < data.boundary.size(); ++i) (*g_table)[data.boundary[i]] = data.g_values[i];
  auto lookup = [](std::shared_ptr<std::map<Point, double>> table, const char* what) -> ScalarField {
    return [table, what](const Point& p) {
      const auto it = table->find(p);
      if (it == table->end()) throw ConfigError(std::string("tabulated problem: no ") + what + " value at a queried point");
      return it->second;
    };
  };
  return {std::move(domain), lookup(f_table, "f"), lookup(g_table, "g"), std::nullopt, "tabulated"};
}

}  // namespace kansa
