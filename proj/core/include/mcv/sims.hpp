#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "mcv/dataset.hpp"
#include "mcv/metrics.hpp"
#include "mcv/moments.hpp"
#include "mcv/rng.hpp"

namespace mcv {

enum class Experiment { gaussian_constant_mean, gaussian_uniform_mean, galton };

std::string_view to_string(Experiment e) noexcept;
Experiment parse_experiment(std::string_view text);

struct ExperimentConfig {
  Experiment experiment = Experiment::gaussian_constant_mean;
  std::uint64_t seed = kDefaultSeed;
  /// Dimensions n (Gaussian) or horizons T (Galton), strictly increasing.
  std::vector<int> points;
  /// Observations per dimension (Gaussian) or number of particles (Galton).
  int sample_count = 500;
  std::vector<MetricId> metrics;
  Convention convention = Convention::population;
  /// Uniform-mean runs: take every mean vector as a prefix of one draw
  /// instead of redrawing per dimension.
  bool nested_means = false;
  /// Galton runs: column 1 is the start position instead of the position
  /// after the first step.
  bool include_start = false;
  /// Galton runs: ridge added to the covariance diagonal, as a fraction of
  /// trace / T, before any metric inverts it.
  double ridge = 1e-8;

  /// Dimensions 10, 15, ..., 50 with 500 samples, or horizons 10, 15, ..., 90
  /// with 100 particles; metrics gamma_vn, gamma_r, gamma_vv, gamma_az, g2.
  static ExperimentConfig defaults(Experiment experiment, std::uint64_t seed = kDefaultSeed);
};

void validate(const ExperimentConfig& config);

struct ExperimentCell {
  int x = 0;
  MetricId metric = MetricId::g2;
  double value = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  /// Ordered by point, then by the configured metric order.
  std::vector<ExperimentCell> cells;
  /// Wall time per point, seconds.
  std::vector<double> seconds;
  /// Absolute ridge added at each point (all zero for Gaussian runs).
  std::vector<double> ridge_added;

  /// Throws InvalidArgument if the cell was not computed.
  double value(int x, MetricId metric) const;
};

/// N iid draws from N(mean, variance * Id).
DataSet gaussian_sample(const Vector& mean, double variance, int N, RandomStream& rng);

ExperimentResult simulate_gaussian(const ExperimentConfig& config);

/// Start ~ U[1, 2]; each step moves +1 or -1 with probability 1/2.
/// Returns a particles x horizon matrix of positions (see include_start).
Matrix galton_trajectories(int particles, int horizon, std::uint64_t seed, bool include_start = false);

ExperimentResult simulate_galton(const ExperimentConfig& config);

ExperimentResult simulate(const ExperimentConfig& config);

/// Exact moments of the positions after steps 1..T: mean 1.5 everywhere,
/// Cov(X_s, X_t) = 1/12 + min(s, t).
MomentSummary galton_analytic_moments(int T);

}  // namespace mcv
