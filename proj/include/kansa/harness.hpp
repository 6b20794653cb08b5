#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kansa/assembly.hpp"
#include "kansa/geometry.hpp"
#include "kansa/kernels.hpp"

namespace kansa::harness {

/// sigma_min / sigma_max below this counts as near-singular (reported next to
/// the N u sigma_max singularity flag).
inline constexpr double kNearSingularRatio = 1e-8;

struct TrialRecord {
  std::size_t trial_index = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double cond2 = 0.0;
  int det_sign = 0;
  double log_abs_det = 0.0;
  double min_separation = 0.0;
  bool singular_flag = false;
  bool near_singular = false;
  /// Non-empty when the trial's configuration was rejected before assembly;
  /// the numeric fields are then meaningless.
  std::string error;

  double ratio() const { return sigma_max > 0.0 ? sigma_min / sigma_max : 0.0; }
};

/// Assembles K_N for the set and records its singularity diagnostics.
TrialRecord diagnose(const Kernel& kernel, const CollocationSet& colloc, std::size_t trial_index = 0,
                     std::uint64_t seed = 0);

struct McSummary {
  std::size_t trials = 0;
  std::size_t failures = 0;  // records with singular_flag
  std::size_t config_errors = 0;
  double min_sigma_min = 0.0;
  double median_cond2 = 0.0;
  TrialRecord worst_trial;  // smallest sigma_min / sigma_max
};

/// Summary over the valid records; records must be sorted by trial_index.
McSummary summarize(const std::vector<TrialRecord>& records);

/// Where collocation points come from.
struct SamplingSetup {
  DomainPtr domain;
  Density density = Density::uniform();
  BoundaryRequest boundary;
};

struct McConfig {
  KernelSpec kernel;
  SamplingSetup setup;
  std::size_t n = 0;
  std::size_t trials = 1;
  std::uint64_t seed0 = 0;
  /// Worker threads; 0 means hardware concurrency.
  unsigned threads = 0;
  /// When non-empty every trial uses these interior points instead of
  /// sampling.
  std::vector<Point> user_interior;
};

struct McResult {
  McSummary summary;
  std::vector<TrialRecord> records;
  /// Point sets of the trials flagged singular, by trial index.
  std::vector<std::pair<std::size_t, CollocationSet>> counterexamples;
};

/// Trial t samples its interior points with seed0 + t against one fixed
/// boundary set. Per-trial configuration errors are recorded, not thrown.
McResult mc_unisolvence(const McConfig& config);

struct GrowthStep {
  TrialRecord record;
  /// log|det K(P_n)| from the bordered matrix of the previous set (NaN at
  /// n = 0).
  double bordered_log_abs_det = 0.0;
  /// |log|det K_n| - log|det K(P_n)|| (0 at n = 0).
  double identity_gap = 0.0;
};

/// K_0 = V_m, then one sampled interior point at a time up to n_max.
std::vector<GrowthStep> incremental_growth(const KernelSpec& spec, const SamplingSetup& setup, std::size_t n_max,
                                           std::uint64_t seed);

struct FarfieldRow {
  double radius = 0.0;            // distance from the centroid, in units of 1/eps
  double log_abs_det = 0.0;       // log|det K(p_R)|, direct LU of the bordered matrix
  double log_abs_limit = 0.0;     // log|eps^2 l_d(0) det K_n|
  double log10_gap = 0.0;         // log10 |det K(p_R) - limit| / |limit|
};

/// Candidate points p_R = centroid + (R / eps) e_1. The relative gap equals
/// |b^T K_n^{-1} a| / |eps^2 l_d(0)| for the new column a and row b; it is
/// evaluated from log-scaled entries so tails below the double range still
/// compare. Throws SingularMatrixError if K_n itself fails the pivot test.
std::vector<FarfieldRow> farfield_limit_check(const KernelSpec& spec, const CollocationSet& colloc,
                                              const std::vector<double>& radii);

struct ConvergenceRow {
  std::size_t N = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  double rms_error = 0.0;
  double max_error = 0.0;
  double cond2 = 0.0;
  double epsilon = 0.0;
  bool singular_flag = false;
  bool solved = false;  // false marks a missing row; see reason
  std::string reason;
};

struct StudyConfig {
  KernelSpec kernel;
  PoissonProblem problem;
  Density density = Density::uniform();
  BoundaryStrategy boundary_strategy = BoundaryStrategy::Equispaced;
  std::size_t test_points = 1000;
  std::uint64_t seed = 0;
};

/// Solves at every (n, m) of the schedule and measures the error against the
/// exact solution at uniform random test points. Interior points for a row
/// are the first n draws of the seed's stream.
std::vector<ConvergenceRow> convergence_study(const StudyConfig& config,
                                              const std::vector<std::pair<std::size_t, std::size_t>>& schedule);

/// One point set, varying eps over `epsilons` (ascending).
std::vector<ConvergenceRow> epsilon_sweep(const StudyConfig& config, std::size_t n, std::size_t m,
                                          const std::vector<double>& epsilons);

struct SearchConfig {
  KernelSpec kernel;
  SamplingSetup setup;
  std::size_t n = 1;
  std::size_t restarts = 1;
  std::size_t steps = 0;
  std::uint64_t seed = 0;
  /// Initial jitter standard deviation, relative to the domain scale.
  double initial_step = 0.1;
  /// Optional starting interior set for the first restart.
  std::vector<Point> initial_interior;
};

struct SearchResult {
  TrialRecord best;
  CollocationSet points;
  double initial_ratio = 0.0;  // sigma_min / sigma_max of the first start
  /// Objective after every step of every restart.
  std::vector<double> trace;
};

/// Random-restart local search minimizing sigma_min / sigma_max: jitter one
/// interior point, keep the move if the objective decreases, otherwise halve
/// the step.
SearchResult near_singular_search(const SearchConfig& config);

}  // namespace kansa::harness
