#include "kansa/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "kansa/errors.hpp"
#include "kansa/harness.hpp"
#include "kansa/io.hpp"
#include "kansa/linalg.hpp"

namespace kansa::cli {

namespace fs = std::filesystem;
using config::Json;
using config::RunConfig;

namespace {

const std::map<std::string, std::set<std::string>, std::less<>> kExperimentParams = {
    {"mc_unisolvence", {"trials"}},
    {"incremental_growth", {"n_max"}},
    {"farfield", {"radii"}},
    {"convergence", {"schedule", "test_points"}},
    {"epsilon_sweep", {"epsilons", "test_points"}},
    {"near_singular", {"restarts", "steps", "initial_step"}},
};

std::string experiment_names() {
  std::string names;
  for (const auto& [name, _] : kExperimentParams) names += (names.empty() ? "" : ", ") + name;
  return names;
}

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_json(const fs::path& path, const Json& j) { io::write_text(path, j.dump(2) + "\n"); }

Json envelope(const RunConfig& config) {
  return {{"version", std::string(io::version())}, {"config", config.resolved}};
}

void dump_system(const fs::path& stem, const Kernel& kernel, const CollocationSet& colloc, const RunConfig& config) {
  const auto matrix = assemble_matrix(kernel, colloc);
  io::write_text(stem.string() + "-matrix.csv", io::matrix_csv(matrix));
  write_json(stem.string() + "-matrix.json", io::matrix_sidecar(colloc, kernel.spec(), config.seed, config.resolved));
  io::write_text(stem.string() + "-points.csv", io::points_csv(colloc, config.resolved));
}

/// Grid^d nodes over the bounding box that lie in the closed domain; the last
/// coordinate varies slowest.
std::vector<Point> grid_points(const Domain& domain, std::size_t per_axis) {
  const auto [lo, hi] = domain.bounding_box();
  const std::size_t d = domain.dimension();
  const double tol = 1e-12 * domain.scale();
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= per_axis;
  std::vector<Point> out;
  std::vector<double> x(d);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t k = 0; k < d; ++k) {
      const std::size_t i = rest % per_axis;
      rest /= per_axis;
      const double t = static_cast<double>(i) / static_cast<double>(per_axis - 1);
      x[k] = i + 1 == per_axis ? hi[k] : lo[k] + t * (hi[k] - lo[k]);
    }
    Point p(x);
    if (domain.contains(p) || domain.boundary_distance(p) <= tol) out.push_back(std::move(p));
  }
  return out;
}

template <class T>
T param(const Json& params, const char* key, T fallback) {
  return params.contains(key) ? params[key].get<T>() : fallback;
}

harness::StudyConfig study_config(const RunConfig& config, std::size_t test_points) {
  if (config.boundary.strategy == BoundaryStrategy::UserList) {
    throw ConfigError("config: boundary.strategy: studies sample their own boundary sets");
  }
  harness::StudyConfig study;
  study.kernel = config.kernel;
  study.problem = config::make_problem(config);
  study.density = config.density;
  study.boundary_strategy = config.boundary.strategy;
  study.test_points = test_points;
  study.seed = config.seed;
  return study;
}

}  // namespace

int cmd_solve(const RunConfig& config, std::ostream& out) {
  const Kernel kernel(config.kernel);
  const auto problem = config::make_problem(config);
  const auto colloc = config::make_collocation(config);
  const auto system = assemble_system(kernel, problem, colloc);
  const auto report = solve(system);

  const fs::path dir = config.output_dir;
  const std::string stem = io::file_stem("solve", config.kernel, config.seed);
  Json summary = envelope(config);
  summary["n"] = colloc.n();
  summary["m"] = colloc.m();
  summary["report"] = io::to_json(report);

  if (report.solved) {
    io::write_text(dir / (stem + "-coefficients.csv"), io::coefficients_csv(colloc, report.coefficients, config.resolved));
    if (config.grid >= 2) {
      const auto points = grid_points(*config.domain, config.grid);
      const auto values = evaluate_solution(kernel, colloc, report.coefficients, points);
      io::write_text(dir / (stem + "-grid.csv"), io::grid_csv(points, values, config.resolved));
      if (problem.exact) {
        double max_error = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
          max_error = std::max(max_error, std::abs(values[i] - (*problem.exact)(points[i])));
        }
        summary["grid_max_error"] = io::number(max_error);
      }
    }
  }
  write_json(dir / (stem + ".json"), summary);

  out << "solve kernel=" << config.kernel.label() << " n=" << colloc.n() << " m=" << colloc.m()
      << " solved=" << (report.solved ? 1 : 0) << " singular_flag=" << (report.singular_flag ? 1 : 0)
      << " sigma_min=" << g(report.sigma_min) << " cond2=" << g(report.cond2) << "\n";
  if (!report.solved || report.singular_flag) {
    dump_system(dir / stem, kernel, colloc, config);
    return kExitSingular;
  }
  return kExitOk;
}

int cmd_experiment(const RunConfig& config, unsigned threads, std::ostream& out) {
  if (!config.experiment) throw ConfigError("config: experiment: required by the experiment command");
  const std::string& name = config.experiment->name;
  const auto allowed = kExperimentParams.find(name);
  if (allowed == kExperimentParams.end()) {
    throw ConfigError("config: experiment.name: unknown experiment '" + name + "' (expected one of " +
                      experiment_names() + ")");
  }
  const Json& params = config.experiment->params;
  for (const auto& [key, _] : params.items()) {
    if (!allowed->second.contains(key)) {
      throw ConfigError("config: experiment.params." + key + ": not a parameter of " + name);
    }
  }

  const fs::path dir = config.output_dir;
  const std::string stem = io::file_stem(name, config.kernel, config.seed);
  Json summary = envelope(config);
  summary["experiment"] = name;
  const std::string head = name + " kernel=" + config.kernel.label();

  if (name == "mc_unisolvence") {
    harness::McConfig mc;
    mc.kernel = config.kernel;
    mc.setup = config::sampling(config);
    mc.n = config.n;
    mc.trials = param<std::size_t>(params, "trials", 100);
    mc.seed0 = config.seed;
    mc.threads = threads;
    mc.user_interior = config.interior_points;
    const auto result = harness::mc_unisolvence(mc);
    io::write_text(dir / (stem + ".csv"), io::trials_csv(result.records, config.resolved));
    const Kernel kernel(config.kernel);
    Json counterexamples = Json::array();
    for (const auto& [index, colloc] : result.counterexamples) {
      dump_system(dir / (stem + "-trial" + std::to_string(index)), kernel, colloc, config);
      counterexamples.push_back(index);
    }
    summary["summary"] = io::to_json(result.summary);
    summary["counterexamples"] = counterexamples;
    write_json(dir / (stem + ".json"), summary);
    const auto& s = result.summary;
    out << head << " trials=" << s.trials << " failures=" << s.failures << " config_errors=" << s.config_errors
        << " min_sigma_min=" << g(s.min_sigma_min) << " median_cond2=" << g(s.median_cond2) << "\n";
    return kExitOk;
  }

  if (name == "incremental_growth") {
    const auto n_max = param<std::size_t>(params, "n_max", config.n);
    const auto steps = harness::incremental_growth(config.kernel, config::sampling(config), n_max, config.seed);
    io::write_text(dir / (stem + ".csv"), io::growth_csv(steps, config.resolved));
    std::size_t failures = 0;
    double min_sigma = std::numeric_limits<double>::infinity();
    double max_gap = 0.0;
    for (const auto& s : steps) {
      failures += s.record.singular_flag ? 1 : 0;
      min_sigma = std::min(min_sigma, s.record.sigma_min);
      max_gap = std::max(max_gap, s.identity_gap);
    }
    summary["steps"] = steps.size();
    summary["failures"] = failures;
    summary["min_sigma_min"] = io::number(min_sigma);
    summary["max_identity_gap"] = io::number(max_gap);
    write_json(dir / (stem + ".json"), summary);
    out << head << " trials=" << steps.size() << " failures=" << failures << " min_sigma_min=" << g(min_sigma)
        << " max_identity_gap=" << g(max_gap) << "\n";
    return kExitOk;
  }

  if (name == "farfield") {
    const auto radii = param<std::vector<double>>(params, "radii", {10.0, 20.0, 40.0});
    const auto colloc = config::make_collocation(config);
    const auto base = harness::diagnose(Kernel(config.kernel), colloc, 0, config.seed);
    const auto rows = harness::farfield_limit_check(config.kernel, colloc, radii);
    io::write_text(dir / (stem + ".csv"), io::farfield_csv(rows, config.resolved));
    bool decreasing = true;
    for (std::size_t i = 1; i < rows.size(); ++i) decreasing = decreasing && rows[i].log10_gap < rows[i - 1].log10_gap;
    summary["base"] = io::to_json(base);
    summary["strictly_decreasing"] = decreasing;
    summary["log10_gap_at_max_radius"] = io::number(rows.back().log10_gap);
    write_json(dir / (stem + ".json"), summary);
    out << head << " trials=1 failures=" << (base.singular_flag ? 1 : 0) << " min_sigma_min=" << g(base.sigma_min)
        << " strictly_decreasing=" << (decreasing ? 1 : 0) << " log10_gap=" << g(rows.back().log10_gap) << "\n";
    return kExitOk;
  }

  if (name == "convergence" || name == "epsilon_sweep") {
    const auto study = study_config(config, param<std::size_t>(params, "test_points", 1000));
    std::vector<harness::ConvergenceRow> rows;
    if (name == "convergence") {
      const auto schedule = param<std::vector<std::pair<std::size_t, std::size_t>>>(
          params, "schedule", {{14, 6}, {40, 10}, {80, 20}, {170, 30}});
      rows = harness::convergence_study(study, schedule);
    } else {
      const auto epsilons = param<std::vector<double>>(params, "epsilons", {1.0, 2.0, 4.0, 8.0});
      rows = harness::epsilon_sweep(study, config.n, config.boundary.m, epsilons);
    }
    io::write_text(dir / (stem + ".csv"), io::convergence_csv(rows, config.resolved));
    std::size_t failures = 0;
    std::size_t flagged = 0;
    for (const auto& r : rows) {
      failures += r.solved ? 0 : 1;
      flagged += r.singular_flag ? 1 : 0;
    }
    summary["rows"] = rows.size();
    summary["failures"] = failures;
    summary["singular_flags"] = flagged;
    write_json(dir / (stem + ".json"), summary);
    out << head << " trials=" << rows.size() << " failures=" << failures << " singular_flags=" << flagged
        << " rms_first=" << g(rows.front().rms_error) << " rms_last=" << g(rows.back().rms_error) << "\n";
    return kExitOk;
  }

  harness::SearchConfig search;
  search.kernel = config.kernel;
  search.setup = config::sampling(config);
  search.n = config.n;
  search.restarts = param<std::size_t>(params, "restarts", 5);
  search.steps = param<std::size_t>(params, "steps", 100);
  search.seed = config.seed;
  search.initial_step = param<double>(params, "initial_step", 0.1);
  search.initial_interior = config.interior_points;
  const auto result = harness::near_singular_search(search);
  io::write_text(dir / (stem + ".csv"), io::search_trace_csv(result.trace, config.resolved));
  io::write_text(dir / (stem + "-points.csv"), io::points_csv(result.points, config.resolved));
  summary["initial_ratio"] = io::number(result.initial_ratio);
  summary["best"] = io::to_json(result.best);
  write_json(dir / (stem + ".json"), summary);
  out << head << " trials=" << search.restarts << " failures=" << (result.best.singular_flag ? 1 : 0)
      << " min_sigma_min=" << g(result.best.sigma_min) << " initial_ratio=" << g(result.initial_ratio)
      << " best_ratio=" << g(result.best.ratio()) << "\n";
  return kExitOk;
}

int cmd_kernel_check(const RunConfig& config, std::ostream& out) {
  const Kernel kernel(config.kernel);
  const int d = static_cast<int>(config.dimension());
  auto report = admissibility_report(kernel, d);

  const auto fd = laplacian_fd_check(kernel, d, 200, config.seed);
  report.checks.push_back({"laplacian_fd", fd.passed,
                           "max relative error " + g(fd.max_rel_error) + " over " + std::to_string(fd.pairs) +
                               " pairs (tolerance 1e-6)"});

  CollocationSet boundary_only;
  boundary_only.boundary = sample_boundary(*config.domain, config.boundary);
  const double min_eig = linalg::symmetric_min_eig(assemble_matrix(kernel, boundary_only));
  report.checks.push_back({"boundary_matrix_positive_definite", min_eig > 0.0,
                           "min eigenvalue of V_m " + g(min_eig) + " (m = " + std::to_string(boundary_only.m()) + ")"});

  Json checks = Json::array();
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  Json summary = envelope(config);
  summary["kernel"] = io::kernel_json(config.kernel);
  summary["dimension"] = d;
  summary["checks"] = checks;
  summary["passed"] = report.passed();
  write_json(fs::path(config.output_dir) / (io::file_stem("kernel-check", config.kernel, config.seed) + ".json"),
             summary);
  return report.passed() ? kExitOk : kExitAdmissibility;
}

int run_command(std::string_view command, const CommandOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const auto config = config::load_config(options.config_path, {options.seed, options.output_dir});
    if (command == "solve") return cmd_solve(config, out);
    if (command == "experiment") return cmd_experiment(config, options.threads, out);
    if (command == "kernel-check") return cmd_kernel_check(config, out);
    err << "error: unknown command '" << command << "'\n";
    return kExitConfigError;
  } catch (const SingularMatrixError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSingular;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: config: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace kansa::cli
