#include "kansa/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "kansa/errors.hpp"

#ifndef KANSA_VERSION
#define KANSA_VERSION "0.0.0"
#endif

namespace kansa::io {

namespace {

std::string coord_header(std::size_t d) {
  std::string h;
  for (std::size_t k = 1; k <= d; ++k) h += "x" + std::to_string(k) + ",";
  return h;
}

void append_coords(std::string& out, const Point& p) {
  for (std::size_t k = 0; k < p.dim(); ++k) out += format_double(p[k]) + ",";
}

std::string begin(const Json& resolved, const std::string& header) { return metadata_line(resolved) + "\n" + header + "\n"; }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

double parse_number(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": '" + text + "' is not a finite number");
  }
}

}  // namespace

std::string_view version() { return KANSA_VERSION; }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string metadata_line(const Json& resolved) {
  return "# artifact " + std::string(version()) + " config=" + resolved.dump();
}

std::string file_stem(std::string_view experiment, const KernelSpec& kernel, std::uint64_t seed) {
  return std::string(experiment) + "-" + kernel.label() + "-" + std::to_string(seed);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string trials_csv(const std::vector<harness::TrialRecord>& records, const Json& resolved) {
  std::string out = begin(resolved,
                          "trial_index,seed,n,m,sigma_min,sigma_max,cond2,det_sign,log_abs_det,min_separation,"
                          "singular_flag,near_singular,error");
  for (const auto& r : records) {
    out += std::to_string(r.trial_index) + "," + std::to_string(r.seed) + "," + std::to_string(r.n) + "," +
           std::to_string(r.m) + ",";
    if (r.error.empty()) {
      out += format_double(r.sigma_min) + "," + format_double(r.sigma_max) + "," + format_double(r.cond2) + "," +
             std::to_string(r.det_sign) + "," + format_double(r.log_abs_det) + "," + format_double(r.min_separation) +
             "," + (r.singular_flag ? "1" : "0") + "," + (r.near_singular ? "1" : "0") + ",\n";
    } else {
      std::string msg = r.error;
      for (auto& c : msg) {
        if (c == ',' || c == '\n') c = ';';
      }
      out += ",,,,,,,," + msg + "\n";
    }
  }
  return out;
}

std::string growth_csv(const std::vector<harness::GrowthStep>& steps, const Json& resolved) {
  std::string out = begin(resolved,
                          "n,m,sigma_min,sigma_max,cond2,det_sign,log_abs_det,bordered_log_abs_det,identity_gap,"
                          "min_separation,singular_flag");
  for (const auto& s : steps) {
    const auto& r = s.record;
    out += std::to_string(r.n) + "," + std::to_string(r.m) + "," + format_double(r.sigma_min) + "," +
           format_double(r.sigma_max) + "," + format_double(r.cond2) + "," + std::to_string(r.det_sign) + "," +
           format_double(r.log_abs_det) + "," + format_double(s.bordered_log_abs_det) + "," +
           format_double(s.identity_gap) + "," + format_double(r.min_separation) + "," + (r.singular_flag ? "1" : "0") +
           "\n";
  }
  return out;
}

std::string farfield_csv(const std::vector<harness::FarfieldRow>& rows, const Json& resolved) {
  std::string out = begin(resolved, "radius,log_abs_det,log_abs_limit,log10_gap");
  for (const auto& r : rows) {
    out += format_double(r.radius) + "," + format_double(r.log_abs_det) + "," + format_double(r.log_abs_limit) + "," +
           format_double(r.log10_gap) + "\n";
  }
  return out;
}

std::string convergence_csv(const std::vector<harness::ConvergenceRow>& rows, const Json& resolved) {
  std::string out = begin(resolved, "N,n,m,epsilon,rms_error,max_error,cond2,singular_flag,solved,reason");
  for (const auto& r : rows) {
    std::string reason = r.reason;
    for (auto& c : reason) {
      if (c == ',' || c == '\n') c = ';';
    }
    out += std::to_string(r.N) + "," + std::to_string(r.n) + "," + std::to_string(r.m) + "," +
           format_double(r.epsilon) + "," + format_double(r.rms_error) + "," + format_double(r.max_error) + "," +
           format_double(r.cond2) + "," + (r.singular_flag ? "1" : "0") + "," + (r.solved ? "1" : "0") + "," + reason +
           "\n";
  }
  return out;
}

std::string search_trace_csv(const std::vector<double>& trace, const Json& resolved) {
  std::string out = begin(resolved, "step,ratio");
  for (std::size_t i = 0; i < trace.size(); ++i) out += std::to_string(i) + "," + format_double(trace[i]) + "\n";
  return out;
}

std::string points_csv(const CollocationSet& colloc, const Json& resolved) {
  std::string out = begin(resolved, coord_header(colloc.dimension()) + "role");
  for (const auto& p : colloc.interior) {
    append_coords(out, p);
    out += "interior\n";
  }
  for (const auto& q : colloc.boundary) {
    append_coords(out, q);
    out += "boundary\n";
  }
  return out;
}

std::string coefficients_csv(const CollocationSet& colloc, const Coefficients& coeffs, const Json& resolved) {
  std::string out = begin(resolved, "role,index," + coord_header(colloc.dimension()) + "coefficient");
  for (std::size_t j = 0; j < colloc.n(); ++j) {
    out += "interior," + std::to_string(j) + ",";
    append_coords(out, colloc.interior[j]);
    out += format_double(coeffs.c[j]) + "\n";
  }
  for (std::size_t k = 0; k < colloc.m(); ++k) {
    out += "boundary," + std::to_string(k) + ",";
    append_coords(out, colloc.boundary[k]);
    out += format_double(coeffs.d[k]) + "\n";
  }
  return out;
}

std::string grid_csv(std::span<const Point> points, std::span<const double> values, const Json& resolved) {
  std::string out = begin(resolved, coord_header(points.empty() ? 0 : points.front().dim()) + "u");
  for (std::size_t i = 0; i < points.size(); ++i) {
    append_coords(out, points[i]);
    out += format_double(values[i]) + "\n";
  }
  return out;
}

std::string matrix_csv(const linalg::Matrix& matrix) {
  std::string out;
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      if (j > 0) out += ",";
      out += format_double(matrix(i, j));
    }
    out += "\n";
  }
  return out;
}

Json kernel_json(const KernelSpec& kernel) {
  Json j{{"family", std::string(family_name(kernel.family))}, {"epsilon", kernel.epsilon}};
  if (kernel.beta) j["beta"] = *kernel.beta;
  if (kernel.nu) j["nu"] = *kernel.nu;
  return j;
}

Json matrix_sidecar(const CollocationSet& colloc, const KernelSpec& kernel, std::uint64_t seed, const Json& resolved) {
  return {{"n", colloc.n()},           {"m", colloc.m()},   {"d", colloc.dimension()},
          {"kernel", kernel_json(kernel)}, {"seed", seed},      {"version", std::string(version())},
          {"config", resolved}};
}

Json to_json(const harness::TrialRecord& r) {
  Json j{{"trial_index", r.trial_index},
         {"seed", r.seed},
         {"n", r.n},
         {"m", r.m},
         {"sigma_min", number(r.sigma_min)},
         {"sigma_max", number(r.sigma_max)},
         {"cond2", number(r.cond2)},
         {"det_sign", r.det_sign},
         {"log_abs_det", number(r.log_abs_det)},
         {"min_separation", number(r.min_separation)},
         {"singular_flag", r.singular_flag},
         {"near_singular", r.near_singular}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

Json to_json(const harness::McSummary& s) {
  return {{"trials", s.trials},
          {"failures", s.failures},
          {"config_errors", s.config_errors},
          {"min_sigma_min", number(s.min_sigma_min)},
          {"median_cond2", number(s.median_cond2)},
          {"worst_trial", to_json(s.worst_trial)}};
}

Json to_json(const SolveReport& r) {
  Json j{{"solved", r.solved},
         {"sigma_min", number(r.sigma_min)},
         {"sigma_max", number(r.sigma_max)},
         {"cond2", number(r.cond2)},
         {"residual_inf", number(r.residual_inf)},
         {"pivot_growth", number(r.pivot_growth)},
         {"singular_flag", r.singular_flag}};
  if (!r.solved) j["failure"] = r.failure;
  return j;
}

TabulatedData read_tabulated(const std::filesystem::path& path, std::size_t dimension) {
  std::ifstream in(path);
  if (!in) throw ConfigError("tabulated problem: cannot open " + path.string());
  const std::string expected = coord_header(dimension) + "role,value";
  TabulatedData data;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (!header_seen) {
      if (line != expected) throw ConfigError(where + ": expected header '" + expected + "'");
      header_seen = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != dimension + 2) {
      throw ConfigError(where + ": expected " + std::to_string(dimension + 2) + " fields");
    }
    std::vector<double> coords;
    for (std::size_t k = 0; k < dimension; ++k) coords.push_back(parse_number(fields[k], where));
    const double value = parse_number(fields[dimension + 1], where);
    if (fields[dimension] == "interior") {
      data.interior.emplace_back(std::move(coords));
      data.f_values.push_back(value);
    } else if (fields[dimension] == "boundary") {
      data.boundary.emplace_back(std::move(coords));
      data.g_values.push_back(value);
    } else {
      throw ConfigError(where + ": role must be interior or boundary");
    }
  }
  if (!header_seen) throw ConfigError("tabulated problem: " + path.string() + " has no header");
  if (data.boundary.empty()) throw ConfigError("tabulated problem: " + path.string() + " lists no boundary points");
  return data;
}

}  // namespace kansa::io
