#include "kansa/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "kansa/errors.hpp"
#include "kansa/linalg.hpp"

namespace kansa::harness {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Offset between the interior-point stream and the test-point stream of a
// study seed.
constexpr std::uint64_t kTestPointStream = 0x9E3779B97F4A7C15ULL;

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned w = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(jobs, 1)));
}

std::vector<Point> fixed_boundary(const SamplingSetup& setup) {
  if (!setup.domain) throw ConfigError("experiment: no domain configured");
  return sample_boundary(*setup.domain, setup.boundary);
}

Point centroid(const std::vector<Point>& points) {
  std::vector<double> c(points.front().dim(), 0.0);
  for (const auto& p : points) {
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += p[k];
  }
  for (auto& v : c) v /= static_cast<double>(points.size());
  return Point(std::move(c));
}

// Entries sign * exp(log_abs - shift) with shift = max log_abs, so the
// largest entry has magnitude 1.
std::vector<double> rescale(const std::vector<SignedLog>& entries, double& shift) {
  shift = -std::numeric_limits<double>::infinity();
  for (const auto& e : entries) {
    if (e.sign != 0) shift = std::max(shift, e.log_abs);
  }
  std::vector<double> out(entries.size(), 0.0);
  if (!std::isfinite(shift)) return out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].sign != 0) out[i] = entries[i].sign * std::exp(entries[i].log_abs - shift);
  }
  return out;
}

ConvergenceRow solve_and_measure(const Kernel& kernel, const PoissonProblem& problem, const CollocationSet& colloc,
                                 const std::vector<Point>& test_points) {
  ConvergenceRow row;
  row.n = colloc.n();
  row.m = colloc.m();
  row.N = colloc.size();
  row.epsilon = kernel.epsilon();
  const SolveReport report = solve(assemble_system(kernel, problem, colloc));
  row.cond2 = report.cond2;
  row.singular_flag = report.singular_flag;
  row.solved = report.solved;
  if (!report.solved) {
    row.reason = report.failure;
    row.rms_error = kNaN;
    row.max_error = kNaN;
    return row;
  }
  const auto values = evaluate_solution(kernel, colloc, report.coefficients, test_points);
  double sum_sq = 0.0;
  double max_err = 0.0;
  for (std::size_t i = 0; i < test_points.size(); ++i) {
    const double err = std::abs(values[i] - (*problem.exact)(test_points[i]));
    sum_sq += err * err;
    max_err = std::max(max_err, err);
  }
  row.rms_error = test_points.empty() ? 0.0 : std::sqrt(sum_sq / static_cast<double>(test_points.size()));
  row.max_error = max_err;
  return row;
}

void require_exact(const StudyConfig& config) {
  if (!config.problem.exact) throw ConfigError("study needs a problem with an exact solution");
  if (!config.problem.domain) throw ConfigError("study: problem has no domain");
}

}  // namespace

TrialRecord diagnose(const Kernel& kernel, const CollocationSet& colloc, std::size_t trial_index, std::uint64_t seed) {
  TrialRecord rec;
  rec.trial_index = trial_index;
  rec.seed = seed;
  rec.n = colloc.n();
  rec.m = colloc.m();
  const linalg::Matrix k = assemble_matrix(kernel, colloc);
  const auto [smin, smax] = linalg::svd_extremes(k);
  rec.sigma_min = smin;
  rec.sigma_max = smax;
  rec.cond2 = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  rec.singular_flag = smin <= linalg::singularity_threshold(colloc.size(), smax);
  rec.near_singular = rec.ratio() < kNearSingularRatio;
  const auto det = linalg::det_sign_logabs(k);
  rec.det_sign = det.sign;
  rec.log_abs_det = det.log_abs;
  const auto points = colloc.all_points();
  rec.min_separation = points.size() >= 2 ? min_separation(points) : std::numeric_limits<double>::infinity();
  return rec;
}

McSummary summarize(const std::vector<TrialRecord>& records) {
  McSummary s;
  s.trials = records.size();
  std::vector<double> conds;
  bool have_worst = false;
  for (const auto& r : records) {
    if (!r.error.empty()) {
      ++s.config_errors;
      continue;
    }
    if (r.singular_flag) ++s.failures;
    conds.push_back(r.cond2);
    s.min_sigma_min = have_worst ? std::min(s.min_sigma_min, r.sigma_min) : r.sigma_min;
    if (!have_worst || r.ratio() < s.worst_trial.ratio()) s.worst_trial = r;
    have_worst = true;
  }
  if (!conds.empty()) {
    std::sort(conds.begin(), conds.end());
    const std::size_t mid = conds.size() / 2;
    s.median_cond2 = conds.size() % 2 == 1 ? conds[mid] : 0.5 * (conds[mid - 1] + conds[mid]);
  } else {
    s.min_sigma_min = kNaN;
    s.median_cond2 = kNaN;
  }
  return s;
}

McResult mc_unisolvence(const McConfig& config) {
  if (config.trials == 0) throw ConfigError("mc_unisolvence: trials must be at least 1");
  const Kernel kernel(config.kernel);
  const std::vector<Point> boundary = fixed_boundary(config.setup);
  const Domain& domain = *config.setup.domain;

  std::vector<TrialRecord> records(config.trials);
  std::vector<std::optional<CollocationSet>> flagged(config.trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < config.trials; t = next++) {
      const std::uint64_t seed = config.seed0 + t;
      try {
        std::vector<Point> interior = config.user_interior.empty()
                                          ? sample_interior(domain, config.setup.density, config.n, seed)
                                          : config.user_interior;
        CollocationSet colloc = make_collocation_set(std::move(interior), boundary, &domain);
        records[t] = diagnose(kernel, colloc, t, seed);
        if (records[t].singular_flag) flagged[t] = std::move(colloc);
      } catch (const ConfigError& e) {
        records[t] = TrialRecord{};
        records[t].trial_index = t;
        records[t].seed = seed;
        records[t].n = config.user_interior.empty() ? config.n : config.user_interior.size();
        records[t].m = boundary.size();
        records[t].error = e.what();
      }
    }
  };
  const unsigned workers = worker_count(config.threads, config.trials);
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  McResult result;
  result.records = std::move(records);
  result.summary = summarize(result.records);
  for (std::size_t t = 0; t < flagged.size(); ++t) {
    if (flagged[t]) result.counterexamples.emplace_back(t, std::move(*flagged[t]));
  }
  return result;
}

std::vector<GrowthStep> incremental_growth(const KernelSpec& spec, const SamplingSetup& setup, std::size_t n_max,
                                           std::uint64_t seed) {
  const Kernel kernel(spec);
  const std::vector<Point> boundary = fixed_boundary(setup);
  const Domain& domain = *setup.domain;
  const std::vector<Point> stream = sample_interior(domain, setup.density, n_max, seed);

  std::vector<GrowthStep> steps;
  CollocationSet previous;
  for (std::size_t n = 0; n <= n_max; ++n) {
    CollocationSet colloc = make_collocation_set({stream.begin(), stream.begin() + static_cast<std::ptrdiff_t>(n)},
                                                 boundary, &domain);
    GrowthStep step;
    step.record = diagnose(kernel, colloc, n, seed);
    if (n == 0) {
      step.bordered_log_abs_det = kNaN;
      step.identity_gap = 0.0;
    } else {
      const auto bordered = linalg::det_sign_logabs(bordered_matrix(kernel, previous, stream[n - 1]));
      step.bordered_log_abs_det = bordered.log_abs;
      step.identity_gap = std::abs(step.record.log_abs_det - bordered.log_abs);
    }
    steps.push_back(step);
    previous = std::move(colloc);
  }
  return steps;
}

std::vector<FarfieldRow> farfield_limit_check(const KernelSpec& spec, const CollocationSet& colloc,
                                              const std::vector<double>& radii) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw ConfigError("farfield: radii must be positive and increasing");
    }
  }
  const Kernel kernel(spec);
  const double eps = kernel.epsilon();
  const std::size_t n = colloc.n();
  const std::size_t total = colloc.size();
  const int d = static_cast<int>(colloc.dimension());
  const linalg::Matrix k = assemble_matrix(kernel, colloc);
  const auto det_n = linalg::det_sign_logabs(k);
  const double corner = eps * eps * kernel.ell0(d);
  const double log_corner = std::log(std::abs(corner));
  const std::vector<Point> points = colloc.all_points();
  const Point center = centroid(points);

  std::vector<FarfieldRow> rows;
  for (double radius : radii) {
    Point p = center;
    p[0] += radius / eps;
    std::vector<SignedLog> column(total), row(total);
    for (std::size_t j = 0; j < total; ++j) {
      const double r = distance(points[j], p);
      row[j] = kernel.log_laplacian(d, r);
      column[j] = j < n ? row[j] : kernel.log_phi(r);
    }
    double shift_a = 0.0;
    double shift_b = 0.0;
    const std::vector<double> a = rescale(column, shift_a);
    const std::vector<double> b = rescale(row, shift_b);
    const auto y = linalg::lu_solve(k, a).solution;
    double s = 0.0;
    for (std::size_t j = 0; j < total; ++j) s += b[j] * y[j];

    FarfieldRow out;
    out.radius = radius;
    out.log_abs_det = linalg::det_sign_logabs(bordered_matrix(kernel, colloc, p)).log_abs;
    out.log_abs_limit = det_n.log_abs + log_corner;
    out.log10_gap = s == 0.0 ? -std::numeric_limits<double>::infinity()
                             : (shift_a + shift_b + std::log(std::abs(s)) - log_corner) / std::numbers::ln10;
    rows.push_back(out);
  }
  return rows;
}

std::vector<ConvergenceRow> convergence_study(const StudyConfig& config,
                                              const std::vector<std::pair<std::size_t, std::size_t>>& schedule) {
  require_exact(config);
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i].first + schedule[i].second < schedule[i - 1].first + schedule[i - 1].second) {
      throw ConfigError("convergence: schedule must be nondecreasing in N");
    }
  }
  const Kernel kernel(config.kernel);
  const Domain& domain = *config.problem.domain;
  const auto test_points =
      sample_interior(domain, Density::uniform(), config.test_points, config.seed + kTestPointStream);
  std::vector<ConvergenceRow> rows;
  for (const auto& [n, m] : schedule) {
    auto boundary = sample_boundary(domain, {config.boundary_strategy, m, config.seed, {}});
    auto interior = sample_interior(domain, config.density, n, config.seed);
    const auto colloc = make_collocation_set(std::move(interior), std::move(boundary), &domain);
    rows.push_back(solve_and_measure(kernel, config.problem, colloc, test_points));
  }
  return rows;
}

std::vector<ConvergenceRow> epsilon_sweep(const StudyConfig& config, std::size_t n, std::size_t m,
                                          const std::vector<double>& epsilons) {
  require_exact(config);
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0) || (i > 0 && !(epsilons[i] > epsilons[i - 1]))) {
      throw ConfigError("epsilon_sweep: epsilons must be positive and increasing");
    }
  }
  const Domain& domain = *config.problem.domain;
  const auto test_points =
      sample_interior(domain, Density::uniform(), config.test_points, config.seed + kTestPointStream);
  auto boundary = sample_boundary(domain, {config.boundary_strategy, m, config.seed, {}});
  auto interior = sample_interior(domain, config.density, n, config.seed);
  const auto colloc = make_collocation_set(std::move(interior), std::move(boundary), &domain);
  std::vector<ConvergenceRow> rows;
  for (double eps : epsilons) {
    KernelSpec spec = config.kernel;
    spec.epsilon = eps;
    rows.push_back(solve_and_measure(Kernel(spec), config.problem, colloc, test_points));
  }
  return rows;
}

SearchResult near_singular_search(const SearchConfig& config) {
  if (config.restarts == 0) throw ConfigError("near_singular: restarts must be at least 1");
  if (config.steps > 0 && config.n == 0 && config.initial_interior.empty()) {
    throw ConfigError("near_singular: a search needs at least one interior point");
  }
  const Kernel kernel(config.kernel);
  const std::vector<Point> boundary = fixed_boundary(config.setup);
  const Domain& domain = *config.setup.domain;

  SearchResult result;
  bool have_best = false;
  for (std::size_t restart = 0; restart < config.restarts; ++restart) {
    const std::uint64_t seed = config.seed + restart;
    std::mt19937_64 rng(seed);
    std::vector<Point> interior = restart == 0 && !config.initial_interior.empty()
                                      ? config.initial_interior
                                      : sample_interior(domain, config.setup.density, config.n, seed);
    CollocationSet current = make_collocation_set(interior, boundary, &domain);
    TrialRecord current_rec = diagnose(kernel, current, restart, seed);
    if (restart == 0) result.initial_ratio = current_rec.ratio();

    double step = config.initial_step * domain.scale();
    std::normal_distribution<double> gauss;
    std::uniform_int_distribution<std::size_t> pick(0, interior.size() - 1);
    for (std::size_t t = 0; t < config.steps; ++t) {
      const std::size_t i = pick(rng);
      std::vector<Point> candidate = current.interior;
      for (std::size_t k = 0; k < candidate[i].dim(); ++k) candidate[i][k] += step * gauss(rng);
      bool improved = false;
      if (domain.contains(candidate[i])) {
        try {
          CollocationSet next = make_collocation_set(std::move(candidate), boundary, nullptr);
          TrialRecord rec = diagnose(kernel, next, restart, seed);
          if (rec.ratio() < current_rec.ratio()) {
            current = std::move(next);
            current_rec = rec;
            improved = true;
          }
        } catch (const ConfigError&) {
          // Coincident points: treated as a rejected move.
        }
      }
      if (!improved) step *= 0.5;
      result.trace.push_back(current_rec.ratio());
    }
    if (!have_best || current_rec.ratio() < result.best.ratio()) {
      result.best = current_rec;
      result.points = current;
      have_best = true;
    }
  }
  return result;
}

}  // namespace kansa::harness
