#include "mcv/sims.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "mcv/errors.hpp"

namespace mcv {
namespace {

// Stream tags; every (tag, index) pair names a disjoint Philox counter range.
constexpr std::uint32_t kTagGaussianMean = 0x11;
constexpr std::uint32_t kTagGaussianSample = 0x12;
constexpr std::uint32_t kTagGalton = 0x21;

std::vector<int> arithmetic(int from, int to, int step) {
  std::vector<int> out;
  for (int v = from; v <= to; v += step) out.push_back(v);
  return out;
}

std::vector<MetricId> figure_metrics() {
  return {MetricId::gamma_vn, MetricId::gamma_r, MetricId::gamma_vv, MetricId::gamma_az, MetricId::g2};
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::string_view to_string(Experiment e) noexcept {
  switch (e) {
    case Experiment::gaussian_constant_mean: return "gaussian_constant_mean";
    case Experiment::gaussian_uniform_mean: return "gaussian_uniform_mean";
    case Experiment::galton: return "galton";
  }
  return "unknown";
}

Experiment parse_experiment(std::string_view text) {
  for (auto e : {Experiment::gaussian_constant_mean, Experiment::gaussian_uniform_mean, Experiment::galton}) {
    if (to_string(e) == text) return e;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown experiment '" + std::string(text) + "'");
}

ExperimentConfig ExperimentConfig::defaults(Experiment experiment, std::uint64_t seed) {
  ExperimentConfig config;
  config.experiment = experiment;
  config.seed = seed;
  config.metrics = figure_metrics();
  if (experiment == Experiment::galton) {
    config.points = arithmetic(10, 90, 5);
    config.sample_count = 100;
  } else {
    config.points = arithmetic(10, 50, 5);
    config.sample_count = 500;
  }
  return config;
}

void validate(const ExperimentConfig& config) {
  if (config.points.empty()) throw Error(ErrorCode::InvalidArgument, "experiment needs at least one point");
  for (std::size_t i = 0; i < config.points.size(); ++i) {
    if (config.points[i] < 1) throw Error(ErrorCode::InvalidArgument, "dimensions/horizons must be >= 1");
    if (i > 0 && config.points[i] <= config.points[i - 1]) {
      throw Error(ErrorCode::InvalidArgument, "dimensions/horizons must be strictly increasing");
    }
  }
  if (config.sample_count < 2) throw Error(ErrorCode::InvalidArgument, "sample_count must be >= 2");
  if (config.metrics.empty()) throw Error(ErrorCode::InvalidArgument, "experiment needs at least one metric");
  if (config.experiment == Experiment::galton && config.points.back() < 2) {
    throw Error(ErrorCode::InvalidArgument, "Galton runs need a maximum horizon >= 2");
  }
  if (!(config.ridge >= 0.0)) throw Error(ErrorCode::InvalidArgument, "ridge must be non-negative");
}

double ExperimentResult::value(int x, MetricId metric) const {
  for (const auto& cell : cells) {
    if (cell.x == x && cell.metric == metric) return cell.value;
  }
  throw Error(ErrorCode::InvalidArgument,
              "no cell for x = " + std::to_string(x) + ", metric " + std::string(to_string(metric)));
}

DataSet gaussian_sample(const Vector& mean, double variance, int N, RandomStream& rng) {
  const Index n = mean.size();
  const double sd = std::sqrt(variance);
  Matrix x(N, n);
  for (Index i = 0; i < N; ++i) {
    for (Index j = 0; j < n; ++j) x(i, j) = mean(j) + sd * rng.normal();
  }
  return DataSet(std::move(x));
}

ExperimentResult simulate_gaussian(const ExperimentConfig& config) {
  validate(config);
  if (config.experiment == Experiment::galton) {
    throw Error(ErrorCode::InvalidArgument, "simulate_gaussian called with a Galton config");
  }
  const bool uniform_mean = config.experiment == Experiment::gaussian_uniform_mean;
  constexpr double kMeanValue = 2.0;
  constexpr double kVariance = 2.0;

  Vector nested;
  if (uniform_mean && config.nested_means) {
    RandomStream rng(config.seed, stream_id(kTagGaussianMean, 0));
    nested.resize(config.points.back());
    for (Index j = 0; j < nested.size(); ++j) nested(j) = rng.uniform(1.0, 2.0);
  }

  ExperimentResult result{config, {}, {}, {}};
  for (int n : config.points) {
    const auto start = Clock::now();
    Vector mean = Vector::Constant(n, kMeanValue);
    if (uniform_mean) {
      if (config.nested_means) {
        mean = nested.head(n);
      } else {
        RandomStream rng(config.seed, stream_id(kTagGaussianMean, static_cast<std::uint32_t>(n)));
        for (Index j = 0; j < n; ++j) mean(j) = rng.uniform(1.0, 2.0);
      }
    }
    RandomStream rng(config.seed, stream_id(kTagGaussianSample, static_cast<std::uint32_t>(n)));
    const DataSet data = gaussian_sample(mean, kVariance, config.sample_count, rng);
    const MomentSummary ms = estimate_moments(data, config.convention);
    const PairwiseOptions options{1, config.convention};
    for (MetricId id : config.metrics) {
      const MetricSpec spec{id, 2.0};
      const double value = requires_data(id) ? compute(spec, data, options).value : compute(spec, ms).value;
      result.cells.push_back({n, id, value});
    }
    result.seconds.push_back(seconds_since(start));
    result.ridge_added.push_back(0.0);
  }
  return result;
}

Matrix galton_trajectories(int particles, int horizon, std::uint64_t seed, bool include_start) {
  if (particles < 1 || horizon < 1) {
    throw Error(ErrorCode::InvalidArgument, "need at least one particle and one step");
  }
  Matrix positions(particles, horizon);
  for (int p = 0; p < particles; ++p) {
    RandomStream rng(seed, stream_id(kTagGalton, static_cast<std::uint32_t>(p)));
    double x = rng.uniform(1.0, 2.0);
    for (int t = 0; t < horizon; ++t) {
      if (include_start && t == 0) {
        positions(p, t) = x;
        continue;
      }
      x += rng.uniform() < 0.5 ? 1.0 : -1.0;
      positions(p, t) = x;
    }
  }
  return positions;
}

ExperimentResult simulate_galton(const ExperimentConfig& config) {
  validate(config);
  if (config.experiment != Experiment::galton) {
    throw Error(ErrorCode::InvalidArgument, "simulate_galton called with a Gaussian config");
  }
  // One simulation at the largest horizon; shorter horizons are prefixes.
  const Matrix paths =
      galton_trajectories(config.sample_count, config.points.back(), config.seed, config.include_start);

  ExperimentResult result{config, {}, {}, {}};
  for (int T : config.points) {
    const auto start = Clock::now();
    const DataSet data(paths.leftCols(T));
    MomentSummary ms = estimate_moments(data, config.convention);
    const double ridge = config.ridge * ms.cov.trace() / static_cast<double>(T);
    ms.cov.diagonal().array() += ridge;
    const PairwiseOptions options{1, config.convention};
    for (MetricId id : config.metrics) {
      const MetricSpec spec{id, 2.0};
      const double value = requires_data(id) ? compute(spec, data, options).value : compute(spec, ms).value;
      result.cells.push_back({T, id, value});
    }
    result.seconds.push_back(seconds_since(start));
    result.ridge_added.push_back(ridge);
  }
  return result;
}

ExperimentResult simulate(const ExperimentConfig& config) {
  return config.experiment == Experiment::galton ? simulate_galton(config) : simulate_gaussian(config);
}

MomentSummary galton_analytic_moments(int T) {
  if (T < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  Matrix cov(T, T);
  for (int s = 0; s < T; ++s) {
    for (int t = 0; t < T; ++t) cov(s, t) = 1.0 / 12.0 + static_cast<double>(std::min(s, t) + 1);
  }
  return MomentSummary{Vector::Constant(T, 1.5), std::move(cov), Convention::analytic};
}

}  // namespace mcv
