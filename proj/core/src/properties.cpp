#include "mcv/properties.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "mcv/errors.hpp"
#include "mcv/spdlinalg.hpp"

namespace mcv {
namespace {

constexpr std::array kAllProperties{PropertyId::coherence,   PropertyId::scale_invariance, PropertyId::suf,
                                    PropertyId::rising_tide, PropertyId::cloning,          PropertyId::dimension_stability};

constexpr std::array kMatrixMetrics{MetricId::gamma_vn, MetricId::gamma_r,       MetricId::gamma_vv,
                                    MetricId::gamma_az, MetricId::g2,            MetricId::sqrtn_gamma_r,
                                    MetricId::sqrtn_gamma_az, MetricId::t_coeff};

constexpr std::uint32_t kTagScale = 0x31;
constexpr std::uint32_t kTagRisingTide = 0x32;
constexpr std::uint32_t kTagSample = 0x33;

constexpr double kCoherenceTol = 1e-12;
constexpr double kScaleTol = 1e-8;
constexpr double kSufTol = 1e-10;
constexpr double kRisingTideTol = 1e-12;
constexpr double kCloningTol = 1e-12;
constexpr Index kSufSampleSize = 200;

std::string format_vector(const Vector& v) {
  std::ostringstream os;
  os.precision(6);
  os << '(';
  for (Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i);
  os << ')';
  return os.str();
}

std::string format_matrix(const Matrix& A) {
  std::ostringstream os;
  os.precision(6);
  os << '[';
  for (Index i = 0; i < A.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (Index j = 0; j < A.cols(); ++j) os << (j ? ", " : "") << A(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

double relative_gap(double value, double reference) {
  return std::abs(value - reference) / std::max(std::abs(reference), std::numeric_limits<double>::min());
}

PropertyVerdict start(PropertyId property, const MetricSpec& metric, double tolerance) {
  PropertyVerdict out;
  out.property = property;
  out.metric = metric;
  out.tolerance = tolerance;
  return out;
}

PropertyVerdict inconclusive(PropertyVerdict out, const Error& e) {
  out.verdict = Verdict::inconclusive;
  out.note = std::string("evaluation failed: ") + e.what();
  return out;
}

/// Three-point law {0, 0, 3} moved to mean m and standard deviation sigma.
DataSet three_point(double m, double sigma) {
  Matrix x(3, 1);
  const double unit = sigma / std::sqrt(2.0);
  x << m - unit, m - unit, m + 2.0 * unit;
  return DataSet(std::move(x));
}

Matrix random_well_conditioned(Index n, RandomStream& rng) {
  constexpr double kMaxEigenRatio = 1e8;  // condition number of A at most 1e4
  for (;;) {
    Matrix A(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) A(i, j) = rng.normal();
    }
    const linalg::SymEigen eig = linalg::sym_eigen(A.transpose() * A);
    if (eig.values(n - 1) > 0.0 && eig.condition() <= kMaxEigenRatio) return A;
  }
}

double direction_form(const MomentSummary& ms, const Vector& c) {
  return c.dot(linalg::spd_inverse(ms.cov) * ms.mean);
}

bool is_diagonal(const Matrix& S) {
  for (Index i = 0; i < S.rows(); ++i) {
    for (Index j = 0; j < S.cols(); ++j) {
      if (i != j && S(i, j) != 0.0) return false;
    }
  }
  return true;
}

/// Combines several verdicts for one (metric, property) cell: violated wins,
/// then inconclusive, then holds.
PropertyVerdict combine(std::vector<PropertyVerdict> parts) {
  for (auto& p : parts) {
    if (p.verdict == Verdict::violated) return std::move(p);
  }
  for (auto& p : parts) {
    if (p.verdict == Verdict::inconclusive) return std::move(p);
  }
  PropertyVerdict out = std::move(parts.back());
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!parts[i].note.empty()) out.note = parts[i].note + "; " + out.note;
  }
  return out;
}

}  // namespace

std::string_view to_string(PropertyId id) noexcept {
  switch (id) {
    case PropertyId::coherence: return "coherence";
    case PropertyId::scale_invariance: return "scale_invariance";
    case PropertyId::suf: return "suf";
    case PropertyId::rising_tide: return "rising_tide";
    case PropertyId::cloning: return "cloning";
    case PropertyId::dimension_stability: return "dimension_stability";
  }
  return "unknown";
}

PropertyId parse_property_id(std::string_view text) {
  for (PropertyId id : kAllProperties) {
    if (to_string(id) == text) return id;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown property '" + std::string(text) + "'");
}

std::span<const PropertyId> all_property_ids() noexcept { return kAllProperties; }

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

Index dim(const Distribution& dist) {
  return std::visit([](const auto& d) { return d.dim(); }, dist);
}

MomentSummary moments_of(const Distribution& dist) {
  if (const auto* ms = std::get_if<MomentSummary>(&dist)) return *ms;
  return estimate_moments(std::get<DataSet>(dist), Convention::population);
}

double evaluate(const MetricSpec& metric, const Distribution& dist) {
  if (const auto* ms = std::get_if<MomentSummary>(&dist)) return compute(metric, *ms).value;
  return compute(metric, std::get<DataSet>(dist)).value;
}

Distribution transform(const Distribution& dist, const Matrix& A) {
  if (const auto* ms = std::get_if<MomentSummary>(&dist)) return scale_moments(*ms, A);
  return transform_rows(std::get<DataSet>(dist), A);
}

Distribution shift(const Distribution& dist, const Vector& c) {
  if (const auto* ms = std::get_if<MomentSummary>(&dist)) return shift_moments(*ms, c);
  return shift_rows(std::get<DataSet>(dist), c);
}

Distribution couple(const Distribution& dist) {
  if (const auto* ms = std::get_if<MomentSummary>(&dist)) return coupling_moments(*ms);
  return independent_coupling(std::get<DataSet>(dist));
}

DataSet exact_moment_sample(const MomentSummary& ms, Index N, std::uint64_t seed) {
  validate_summary(ms);
  const Index n = ms.dim();
  if (N <= n) throw Error(ErrorCode::InvalidArgument, "exact-moment sample needs more rows than columns");
  RandomStream rng(seed, stream_id(kTagSample, static_cast<std::uint32_t>(n)));
  Matrix z(N, n);
  for (Index i = 0; i < N; ++i) {
    for (Index j = 0; j < n; ++j) z(i, j) = rng.normal();
  }
  z.rowwise() -= z.colwise().mean();
  const Matrix sample_cov = (z.transpose() * z) / static_cast<double>(N);
  const Matrix unwhiten = linalg::lower_triangular_inverse(linalg::cholesky(sample_cov).lower);
  const Matrix target = linalg::cholesky(ms.cov).lower;
  Matrix x = z * unwhiten.transpose() * target.transpose();
  x.rowwise() += ms.mean.transpose();
  return DataSet(std::move(x));
}

PropertyVerdict check_coherence(const MetricSpec& metric) {
  PropertyVerdict out = start(PropertyId::coherence, metric, kCoherenceTol);
  double worst = -1.0;
  try {
    for (double m : {-2.0, -0.5, 0.5, 2.0}) {
      for (double sigma : {0.1, 1.0, 3.0}) {
        MomentSummary ms{Vector::Constant(1, m), Matrix::Constant(1, 1, sigma * sigma), Convention::analytic};
        const Distribution dist = requires_data(metric.id) ? Distribution{three_point(m, sigma)} : Distribution{ms};
        const double value = evaluate(metric, dist);
        const double target = sigma / std::abs(m);
        const double gap = relative_gap(value, target);
        if (gap > worst) {
          worst = gap;
          std::ostringstream detail;
          detail << "m = " << m << ", sigma = " << sigma << "; after = sigma / |m|";
          out.witness = Witness{std::move(ms), value, target, detail.str()};
        }
      }
    }
  } catch (const Error& e) {
    return inconclusive(std::move(out), e);
  }
  out.verdict = worst <= kCoherenceTol ? Verdict::holds : Verdict::violated;
  std::ostringstream note;
  note << "largest relative deviation from sigma / |m| over 12 instances: " << worst;
  out.note = note.str();
  return out;
}

PropertyVerdict check_scale_invariance(const MetricSpec& metric, const Distribution& dist, int trials,
                                       std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  PropertyVerdict out = start(PropertyId::scale_invariance, metric, kScaleTol);
  const Index n = dim(dist);
  double worst = -1.0;
  try {
    const double base = evaluate(metric, dist);
    for (int t = 0; t < trials; ++t) {
      RandomStream rng(seed, stream_id(kTagScale, static_cast<std::uint32_t>(t)));
      const Matrix A = random_well_conditioned(n, rng);
      const double moved = evaluate(metric, transform(dist, A));
      const double gap = relative_gap(moved, base);
      if (gap > worst) {
        worst = gap;
        out.witness = Witness{moments_of(dist), base, moved, "A = " + format_matrix(A)};
      }
    }
  } catch (const Error& e) {
    return inconclusive(std::move(out), e);
  }
  out.verdict = worst <= kScaleTol ? Verdict::holds : Verdict::violated;
  std::ostringstream note;
  note << "largest relative change over " << trials << " random A: " << worst;
  if (out.verdict == Verdict::holds) note << " (no violation found in " << trials << " trials)";
  out.note = note.str();
  return out;
}

PropertyVerdict check_scale_invariance(const MetricSpec& metric, const Distribution& dist, const Matrix& A) {
  PropertyVerdict out = start(PropertyId::scale_invariance, metric, kScaleTol);
  try {
    const double base = evaluate(metric, dist);
    const double moved = evaluate(metric, transform(dist, A));
    out.witness = Witness{moments_of(dist), base, moved, "A = " + format_matrix(A)};
    out.verdict = relative_gap(moved, base) <= kScaleTol ? Verdict::holds : Verdict::violated;
  } catch (const Error& e) {
    return inconclusive(std::move(out), e);
  }
  return out;
}

double harmonic_aggregator(std::span<const double> cvs) {
  if (cvs.empty()) throw Error(ErrorCode::InvalidArgument, "no coefficients of variation given");
  double inverse_squares = 0.0;
  for (double y : cvs) {
    if (!(y > 0.0) || !std::isfinite(y)) {
      throw Error(ErrorCode::ZeroCV, "coefficient of variation " + std::to_string(y) + " is not positive and finite");
    }
    inverse_squares += 1.0 / (y * y);
  }
  return std::sqrt(static_cast<double>(cvs.size()) / inverse_squares);
}

std::vector<Vector> default_suf_partners(Index n) {
  std::vector<Vector> partners;
  Vector d = Vector::Ones(n);
  d(0) = 2.0;
  partners.push_back(d);
  if (n > 1) {
    d.setOnes();
    d(1) = 3.0;
    partners.push_back(d);
  }
  d.resize(n);
  for (Index i = 0; i < n; ++i) d(i) = i % 2 == 0 ? 0.5 : 2.0;
  partners.push_back(d);
  return partners;
}

PropertyVerdict check_suf(const MetricSpec& metric, const MomentSummary& diag_ms, std::span<const Vector> partners) {
  validate_summary(diag_ms);
  if (!is_diagonal(diag_ms.cov)) throw Error(ErrorCode::InvalidArgument, "SUF check needs a diagonal covariance");
  const Index n = diag_ms.dim();
  std::vector<Vector> owned;
  if (partners.empty()) {
    owned = default_suf_partners(n);
    partners = owned;
  }

  PropertyVerdict out = start(PropertyId::suf, metric, kSufTol);
  std::vector<double> cvs(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) cvs[static_cast<std::size_t>(i)] = std::sqrt(diag_ms.cov(i, i)) / std::abs(diag_ms.mean(i));
  const double harmonic = harmonic_aggregator(cvs);
  const Vector cv_vector = Eigen::Map<const Vector>(cvs.data(), n);

  try {
    const Distribution base_dist = requires_data(metric.id)
                                       ? Distribution{exact_moment_sample(diag_ms, kSufSampleSize, kDefaultSeed)}
                                       : Distribution{diag_ms};
    const double base = evaluate(metric, base_dist);
    for (const Vector& d : partners) {
      if (d.size() != n || !(d.minCoeff() > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "SUF partner scales must be positive with length n");
      }
      const double moved = evaluate(metric, transform(base_dist, d.asDiagonal().toDenseMatrix()));
      if (relative_gap(moved, base) > kSufTol) {
        out.verdict = Verdict::violated;
        out.witness = Witness{diag_ms, base, moved,
                              "component CVs " + format_vector(cv_vector) + " in both; partner scales " +
                                  format_vector(d)};
        out.note = "two laws with equal component CVs give different values, so no function of the CVs exists";
        return out;
      }
    }
    out.verdict = Verdict::holds;
    out.witness = Witness{diag_ms, base, harmonic, "after = harmonic aggregator of " + format_vector(cv_vector)};
    out.note = relative_gap(base, harmonic) <= kSufTol
                   ? "equals the harmonic aggregator of the component CVs"
                   : "unchanged across all partners with equal component CVs; not the harmonic aggregator";
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) throw;
    return inconclusive(std::move(out), e);
  }
  return out;
}

PropertyVerdict check_rising_tide(const MetricSpec& metric, const Distribution& dist, const Vector& c) {
  const MomentSummary ms = moments_of(dist);
  if (c.size() != ms.dim()) throw Error(ErrorCode::DimensionMismatch, "shift has the wrong length");
  const double form = direction_form(ms, c);
  if (form < -1e-12 * std::max(1.0, c.norm() * ms.mean.norm())) {
    throw Error(ErrorCode::InvalidDirection, "c^T S^-1 m = " + std::to_string(form) + " is negative");
  }
  PropertyVerdict out = start(PropertyId::rising_tide, metric, kRisingTideTol);
  try {
    const double before = evaluate(metric, dist);
    const double after = evaluate(metric, shift(dist, c));
    std::ostringstream detail;
    detail.precision(17);
    detail << "c = " << format_vector(c) << ", c^T S^-1 m = " << form;
    out.witness = Witness{ms, before, after, detail.str()};
    out.verdict = after <= before + kRisingTideTol ? Verdict::holds : Verdict::violated;
  } catch (const Error& e) {
    return inconclusive(std::move(out), e);
  }
  return out;
}

PropertyVerdict search_rising_tide(const MetricSpec& metric, const Distribution& dist, int trials,
                                   std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  const MomentSummary ms = moments_of(dist);
  const Index n = ms.dim();
  const Vector pull = linalg::spd_inverse(ms.cov) * ms.mean;
  PropertyVerdict worst = start(PropertyId::rising_tide, metric, kRisingTideTol);
  double worst_rise = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    RandomStream rng(seed, stream_id(kTagRisingTide, static_cast<std::uint32_t>(t)));
    Vector c(n);
    for (Index i = 0; i < n; ++i) c(i) = rng.normal();
    c *= ms.mean.norm() * rng.uniform(0.05, 2.0) / c.norm();
    if (c.dot(pull) < 0.0) c = -c;
    PropertyVerdict v = check_rising_tide(metric, dist, c);
    if (v.verdict == Verdict::inconclusive) return v;
    const double rise = v.witness->after - v.witness->before;
    if (rise > worst_rise) {
      worst_rise = rise;
      worst = std::move(v);
    }
  }
  if (worst.verdict == Verdict::holds) {
    worst.note = "no violation found in " + std::to_string(trials) + " random directions";
  }
  return worst;
}

PropertyVerdict check_cloning(const MetricSpec& metric, const Distribution& dist) {
  PropertyVerdict out = start(PropertyId::cloning, metric, kCloningTol);
  try {
    const double before = evaluate(metric, dist);
    const double after = evaluate(metric, couple(dist));
    out.witness = Witness{moments_of(dist), before, after, "after = value on the independent coupling"};
    out.ratio = after / before;
    out.verdict = relative_gap(after, before) <= kCloningTol ? Verdict::holds : Verdict::violated;
  } catch (const Error& e) {
    return inconclusive(std::move(out), e);
  }
  return out;
}

SequenceSpec SequenceSpec::iid(double mean, double variance, Index n_max) {
  SequenceSpec spec;
  spec.kind = Kind::iid;
  spec.mean = [mean](Index) { return mean; };
  spec.variance = [variance](Index) { return variance; };
  spec.n_max = n_max;
  return spec;
}

MomentSummary SequenceSpec::prefix(Index n) const {
  Vector m(n);
  Matrix cov = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    m(i) = mean(i + 1);
    cov(i, i) = variance(i + 1);
  }
  return MomentSummary{std::move(m), std::move(cov), Convention::analytic};
}

double SequenceSpec::limit_cv() const {
  auto cv = [this](Index i) { return std::sqrt(variance(i)) / std::abs(mean(i)); };
  const double last = cv(n_max);
  if (kind == Kind::iid) return last;
  const double half = cv(std::max<Index>(1, n_max / 2));
  if (relative_gap(half, last) > 1e-3) {
    throw Error(ErrorCode::NonConvergentSpec, "marginal CVs at n_max / 2 and n_max differ: " +
                                                  std::to_string(half) + " vs " + std::to_string(last));
  }
  return last;
}

void validate(const SequenceSpec& spec) {
  if (!spec.mean || !spec.variance) throw Error(ErrorCode::InvalidArgument, "sequence generators are not set");
  if (spec.n_max < 2) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 2");
  for (Index i = 1; i <= spec.n_max; ++i) {
    const double m = spec.mean(i);
    const double v = spec.variance(i);
    if (!std::isfinite(m) || m == 0.0) {
      throw Error(ErrorCode::InvalidArgument, "mean of coordinate " + std::to_string(i) + " is zero or not finite");
    }
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "variance of coordinate " + std::to_string(i) + " is not positive");
    }
  }
}

PropertyVerdict check_dimension_stability(const MetricSpec& metric, const SequenceSpec& spec) {
  validate(spec);
  PropertyVerdict out = start(PropertyId::dimension_stability, metric, 0.02);
  if (requires_data(metric.id)) {
    out.note = "no closed form on moment summaries; nested evaluation needs observations";
    return out;
  }
  const double limit = spec.limit_cv();
  try {
    out.trajectory.reserve(static_cast<std::size_t>(spec.n_max));
    for (Index n = 1; n <= spec.n_max; ++n) out.trajectory.push_back(evaluate(metric, spec.prefix(n)));
  } catch (const Error& e) {
    return inconclusive(std::move(out), e);
  }
  const double last = out.trajectory.back();
  const double half = out.trajectory[static_cast<std::size_t>(spec.n_max / 2 - 1)];
  out.tolerance = std::max(0.02, 5.0 * std::abs(last - half));
  out.verdict = std::abs(last - limit) <= out.tolerance ? Verdict::holds : Verdict::violated;
  std::ostringstream detail;
  detail.precision(17);
  detail << "before = value at n = " << spec.n_max << ", after = limiting marginal CV";
  out.witness = Witness{spec.prefix(1), last, limit, detail.str()};
  std::ostringstream note;
  note << "value(" << spec.n_max / 2 << ") = " << half << ", value(" << spec.n_max << ") = " << last
       << ", limit = " << limit;
  out.note = note.str();
  return out;
}

std::span<const MetricId> matrix_metrics() noexcept { return kMatrixMetrics; }

std::optional<Verdict> expected_verdict(MetricId metric, PropertyId property) noexcept {
  using P = PropertyId;
  constexpr auto H = Verdict::holds;
  constexpr auto V = Verdict::violated;
  switch (metric) {
    case MetricId::g2: return H;
    case MetricId::gamma_vn:
      return (property == P::cloning || property == P::dimension_stability) ? V : H;
    case MetricId::gamma_vv:
      return (property == P::coherence || property == P::cloning || property == P::dimension_stability) ? H : V;
    case MetricId::gamma_r:
    case MetricId::gamma_az: return property == P::coherence ? H : V;
    case MetricId::sqrtn_gamma_r:
    case MetricId::sqrtn_gamma_az:
      if (property == P::dimension_stability) return H;
      return std::nullopt;
    case MetricId::t_coeff:
      if (property == P::coherence) return V;
      if (property == P::scale_invariance || property == P::rising_tide || property == P::cloning) return H;
      return std::nullopt;
    default: return std::nullopt;
  }
}

namespace {

struct Instances {
  MomentSummary general;      // 3-d, correlated
  MomentSummary suf_base;     // m = (2, 1), Id
  MomentSummary tide_r;       // m = (3, 3), [[1, 1], [1, 2]]
  Vector tide_r_shift;        // (1, -2)
  MomentSummary tide_az;      // m = (1, 0.1), diag(1, 100)
  Vector tide_az_shift;       // (0, 0.9)
};

Instances make_instances() {
  Instances in;
  Matrix general_cov(3, 3);
  general_cov << 2.0, 0.3, 0.1, 0.3, 1.0, 0.2, 0.1, 0.2, 0.5;
  in.general = make_summary(Vector{{1.0, 2.0, 0.5}}, general_cov);
  in.suf_base = make_summary(Vector{{2.0, 1.0}}, Matrix::Identity(2, 2));
  Matrix tide_cov(2, 2);
  tide_cov << 1.0, 1.0, 1.0, 2.0;
  in.tide_r = make_summary(Vector{{3.0, 3.0}}, tide_cov);
  in.tide_r_shift = Vector{{1.0, -2.0}};
  in.tide_az = make_summary(Vector{{1.0, 0.1}}, Vector{{1.0, 100.0}}.asDiagonal().toDenseMatrix());
  in.tide_az_shift = Vector{{0.0, 0.9}};
  return in;
}

constexpr int kScaleTrials = 20;
constexpr int kTideTrials = 50;
constexpr int kDataTideTrials = 20;
constexpr Index kDataSampleSize = 200;
constexpr Index kCloningSampleSize = 50;

PropertyVerdict matrix_cell(MetricId id, PropertyId property, const Instances& in, std::uint64_t seed) {
  const MetricSpec metric{id, 2.0};
  const bool data_level = requires_data(id);
  auto as_dist = [&](const MomentSummary& ms, Index N) {
    return data_level ? Distribution{exact_moment_sample(ms, N, seed)} : Distribution{ms};
  };
  switch (property) {
    case PropertyId::coherence: return check_coherence(metric);
    case PropertyId::scale_invariance:
      return check_scale_invariance(metric, as_dist(in.general, kDataSampleSize), kScaleTrials, seed);
    case PropertyId::suf: return check_suf(metric, in.suf_base);
    case PropertyId::rising_tide: {
      const int trials = data_level ? kDataTideTrials : kTideTrials;
      std::vector<PropertyVerdict> parts;
      parts.push_back(check_rising_tide(metric, as_dist(in.tide_r, kDataSampleSize), in.tide_r_shift));
      parts.push_back(check_rising_tide(metric, as_dist(in.tide_az, kDataSampleSize), in.tide_az_shift));
      parts.push_back(search_rising_tide(metric, as_dist(in.general, kDataSampleSize), trials, seed));
      return combine(std::move(parts));
    }
    case PropertyId::cloning: return check_cloning(metric, as_dist(in.general, kCloningSampleSize));
    case PropertyId::dimension_stability:
      return check_dimension_stability(metric, SequenceSpec::iid(2.0, 2.0, 400));
  }
  return start(property, metric, 1e-12);
}

void add_golden(std::vector<GoldenCheck>& out, std::string name, double expected, double actual) {
  GoldenCheck g{std::move(name), expected, actual, 1e-12, false};
  g.passed = std::abs(actual - expected) <= g.tolerance * std::max(1.0, std::abs(expected));
  out.push_back(std::move(g));
}

void add_pair(std::vector<GoldenCheck>& out, const std::string& name, const PropertyVerdict& v, double before, double after) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  add_golden(out, name + " before", before, v.witness ? v.witness->before : nan);
  add_golden(out, name + " after", after, v.witness ? v.witness->after : nan);
}

}  // namespace

std::vector<GoldenCheck> golden_checks() {
  std::vector<GoldenCheck> out;
  const Instances in = make_instances();
  const MomentSummary unit = make_summary(Vector{{1.0, 1.0}}, Matrix::Identity(2, 2));

  const auto tide_r = check_rising_tide({MetricId::gamma_r}, in.tide_r, in.tide_r_shift);
  add_pair(out, "gamma_r rising tide", tide_r, std::sqrt(1.0 / 18.0), std::sqrt(1.0 / 17.0));
  add_golden(out, "gamma_r rising tide c^T S^-1 m", 3.0, direction_form(in.tide_r, in.tide_r_shift));

  const auto tide_az = check_rising_tide({MetricId::gamma_az}, in.tide_az, in.tide_az_shift);
  add_pair(out, "gamma_az rising tide", tide_az, std::sqrt(2.0) / 1.01, std::sqrt(101.0) / 2.0);

  add_pair(out, "gamma_r suf", check_suf({MetricId::gamma_r}, unit), 1.0 / std::sqrt(2.0), std::sqrt(2.0 / 5.0));
  add_pair(out, "gamma_vv suf", check_suf({MetricId::gamma_vv}, in.suf_base), std::sqrt(2.0 / 5.0),
           std::sqrt(5.0 / 17.0));
  add_pair(out, "gamma_az suf", check_suf({MetricId::gamma_az}, unit), std::sqrt(0.5), std::sqrt(17.0 / 25.0));

  const Matrix stretch = Vector{{2.0, 1.0}}.asDiagonal().toDenseMatrix();
  add_pair(out, "gamma_vv scale", check_scale_invariance({MetricId::gamma_vv}, in.suf_base, stretch),
           std::sqrt(2.0 / 5.0), std::sqrt(5.0 / 17.0));

  const double half_root = 1.0 / std::sqrt(2.0);
  for (auto [id, ratio] : {std::pair{MetricId::gamma_vn, half_root}, std::pair{MetricId::gamma_r, half_root},
                           std::pair{MetricId::gamma_az, half_root}, std::pair{MetricId::gamma_vv, 1.0},
                           std::pair{MetricId::g2, 1.0}}) {
    const auto v = check_cloning({id}, in.general);
    add_golden(out, std::string(to_string(id)) + " cloning ratio", ratio,
               v.ratio.value_or(std::numeric_limits<double>::quiet_NaN()));
  }

  const std::array cvs{0.5, 0.25};
  const MomentSummary harmonic_case = make_summary(Vector{{2.0, 4.0}}, Matrix::Identity(2, 2));
  add_golden(out, "harmonic aggregator (1/2, 1/4)", 1.0 / std::sqrt(10.0), harmonic_aggregator(cvs));
  add_golden(out, "g2 at m = (2, 4), Id", 1.0 / std::sqrt(10.0), g2(harmonic_case).value);
  return out;
}

SuiteResult counterexample_suite(std::uint64_t seed) {
  SuiteResult out;
  out.seed = seed;
  out.golden = golden_checks();
  for (const auto& g : out.golden) {
    if (!g.passed) ++out.golden_failures;
  }
  const Instances in = make_instances();

  for (MetricId id : kMatrixMetrics) {
    for (PropertyId property : kAllProperties) {
      MatrixCell cell{matrix_cell(id, property, in, seed), expected_verdict(id, property), false};
      cell.mismatch = cell.expected.has_value() && cell.verdict.verdict != *cell.expected;
      if (cell.mismatch) ++out.mismatches;
      out.matrix.push_back(std::move(cell));
    }
  }
  return out;
}

}  // namespace mcv
