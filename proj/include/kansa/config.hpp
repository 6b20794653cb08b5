#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kansa/assembly.hpp"
#include "kansa/geometry.hpp"
#include "kansa/harness.hpp"
#include "kansa/kernels.hpp"

namespace kansa::config {

using Json = nlohmann::json;

/// The published run-configuration schema (docs/config.schema.json).
const Json& schema();

/// Validates against the JSON Schema subset used by the published schema:
/// type, enum, properties, required, additionalProperties (false),
/// items, minItems, maxItems, minimum, exclusiveMinimum, exclusiveMaximum.
/// Throws ConfigError naming the offending field, e.g. "kernel.nu".
void validate_schema(const Json& instance, const Json& schema);

struct ProblemConfig {
  std::string name = "manufactured_sine";
  double value = 0.0;
  std::string file;
};

struct ExperimentConfig {
  std::string name;
  Json params = Json::object();
};

struct RunConfig {
  /// The input with every default filled in; embedded in all outputs.
  Json resolved;
  KernelSpec kernel;
  DomainPtr domain;
  Density density;
  BoundaryRequest boundary;
  std::size_t n = 32;
  /// User-supplied interior points; empty means sample n of them.
  std::vector<Point> interior_points;
  ProblemConfig problem;
  std::size_t grid = 0;
  std::optional<ExperimentConfig> experiment;
  std::uint64_t seed = 0;
  std::string output_dir = ".";

  std::size_t dimension() const { return domain->dimension(); }
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir;
};

/// Parses and validates a configuration. Syntax errors report line and
/// column, schema and semantic errors the field path; both as ConfigError.
RunConfig parse_config(std::string_view text, const Overrides& overrides = {});
RunConfig load_config(const std::string& path, const Overrides& overrides = {});

/// The Poisson problem named in the configuration.
PoissonProblem make_problem(const RunConfig& config);

/// Interior and boundary centers for a single solve: tabulated points when
/// the problem is tabulated, otherwise the configured or sampled points.
CollocationSet make_collocation(const RunConfig& config);

/// Sampling description shared by the experiments.
harness::SamplingSetup sampling(const RunConfig& config);

}  // namespace kansa::config
