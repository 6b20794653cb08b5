#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kansa/assembly.hpp"
#include "kansa/config.hpp"
#include "kansa/harness.hpp"
#include "kansa/problems.hpp"

namespace kansa::io {

using config::Json;

std::string_view version();

/// Round-trip decimal form (17 significant digits); "nan", "inf", "-inf" for
/// non-finite values.
std::string format_double(double v);

/// JSON number, or null when not finite.
Json number(double v);

/// "# artifact <version> config=<resolved config, compact>"
std::string metadata_line(const Json& resolved);

/// "<experiment>-<kernel>-<seed>"
std::string file_stem(std::string_view experiment, const KernelSpec& kernel, std::uint64_t seed);

/// Writes the file, creating parent directories. Throws std::runtime_error.
void write_text(const std::filesystem::path& path, const std::string& text);

// Tabular outputs. Every CSV starts with the metadata line, then a header.
std::string trials_csv(const std::vector<harness::TrialRecord>& records, const Json& resolved);
std::string growth_csv(const std::vector<harness::GrowthStep>& steps, const Json& resolved);
std::string farfield_csv(const std::vector<harness::FarfieldRow>& rows, const Json& resolved);
std::string convergence_csv(const std::vector<harness::ConvergenceRow>& rows, const Json& resolved);
std::string search_trace_csv(const std::vector<double>& trace, const Json& resolved);
/// Header "x1,...,xd,role", role in {interior, boundary}.
std::string points_csv(const CollocationSet& colloc, const Json& resolved);
/// Header "role,index,x1,...,xd,coefficient".
std::string coefficients_csv(const CollocationSet& colloc, const Coefficients& coeffs, const Json& resolved);
/// Header "x1,...,xd,u".
std::string grid_csv(std::span<const Point> points, std::span<const double> values, const Json& resolved);

/// Row-major, no header, 17 significant digits.
std::string matrix_csv(const linalg::Matrix& matrix);
/// Sidecar for a matrix dump: {n, m, d, kernel, seed, version, config}.
Json matrix_sidecar(const CollocationSet& colloc, const KernelSpec& kernel, std::uint64_t seed, const Json& resolved);

Json kernel_json(const KernelSpec& kernel);
Json to_json(const harness::TrialRecord& record);
Json to_json(const harness::McSummary& summary);
Json to_json(const SolveReport& report);

/// Tabulated problem data: a CSV with header "x1,...,xd,role,value" where
/// role is interior (value of f) or boundary (value of g). Lines starting
/// with '#' are ignored. Throws ConfigError with the offending line number.
TabulatedData read_tabulated(const std::filesystem::path& path, std::size_t dimension);

}  // namespace kansa::io
