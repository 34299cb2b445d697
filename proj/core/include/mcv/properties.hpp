#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mcv/dataset.hpp"
#include "mcv/metrics.hpp"
#include "mcv/moments.hpp"
#include "mcv/rng.hpp"

namespace mcv {

enum class PropertyId { coherence, scale_invariance, suf, rising_tide, cloning, dimension_stability };

std::string_view to_string(PropertyId id) noexcept;
PropertyId parse_property_id(std::string_view text);
std::span<const PropertyId> all_property_ids() noexcept;

enum class Verdict { holds, violated, inconclusive };

std::string_view to_string(Verdict v) noexcept;

/// The instance a verdict rests on: the input moments and the metric value
/// before and after the property's operation (or, for coherence, the metric
/// value and sigma / |m|).
struct Witness {
  MomentSummary input;
  double before = std::numeric_limits<double>::quiet_NaN();
  double after = std::numeric_limits<double>::quiet_NaN();
  std::string detail;
};

struct PropertyVerdict {
  PropertyId property = PropertyId::coherence;
  MetricSpec metric;
  Verdict verdict = Verdict::inconclusive;
  std::optional<Witness> witness;
  double tolerance = 1e-12;
  std::string note;
  /// after / before for cloning.
  std::optional<double> ratio;
  /// Metric values for n = 1..n_max (dimension stability only).
  std::vector<double> trajectory;
};

/// Either exact moments or observations. Moment-level metrics accept both;
/// data-only metrics (gq, g_inf, t_coeff, ...) need a DataSet.
using Distribution = std::variant<MomentSummary, DataSet>;

Index dim(const Distribution& dist);
/// Population moments of a DataSet, or the summary itself.
MomentSummary moments_of(const Distribution& dist);
double evaluate(const MetricSpec& metric, const Distribution& dist);
/// Law of A X.
Distribution transform(const Distribution& dist, const Matrix& A);
/// Law of X + c.
Distribution shift(const Distribution& dist, const Vector& c);
/// Law of the independent coupling (X, X').
Distribution couple(const Distribution& dist);

/// N seeded Gaussian draws affinely corrected so that their population mean
/// and covariance equal ms exactly (up to rounding).
DataSet exact_moment_sample(const MomentSummary& ms, Index N, std::uint64_t seed);

/// Evaluates the metric on n = 1 instances over (m, sigma) in
/// {+-0.5, +-2} x {0.1, 1, 3} and compares with sigma / |m| at 1e-12
/// relative. Data-only metrics use the three-point law {0, 0, 3} rescaled to
/// each (m, sigma).
PropertyVerdict check_coherence(const MetricSpec& metric);

/// `trials` random invertible A (standard normal entries, condition number
/// at most 1e4, resampled otherwise). Holds iff the largest relative change is
/// at most 1e-8.
PropertyVerdict check_scale_invariance(const MetricSpec& metric, const Distribution& dist, int trials,
                                       std::uint64_t seed = kDefaultSeed);
/// Single fixed A.
PropertyVerdict check_scale_invariance(const MetricSpec& metric, const Distribution& dist, const Matrix& A);

/// sqrt(n / sum y_i^-2). ZeroCV if any y_i <= 0 or is not finite.
double harmonic_aggregator(std::span<const double> cvs);

/// Diagonal rescalings D that keep every component CV of a diagonal summary.
std::vector<Vector> default_suf_partners(Index n);

/// SUF on a diagonal summary. Every partner D (a vector of positive scales)
/// yields a law with the same component CVs; if any partner changes the
/// metric by more than 1e-10 relative, no function of the CVs can exist and
/// the verdict is violated. Otherwise the verdict holds, and the note says
/// whether the value also equals the harmonic aggregator. Data-only metrics
/// are evaluated on exact_moment_sample draws.
PropertyVerdict check_suf(const MetricSpec& metric, const MomentSummary& diag_ms,
                          std::span<const Vector> partners = {});

/// InvalidDirection unless c^T S^-1 m >= 0. Holds iff
/// metric(X + c) <= metric(X) + 1e-12.
PropertyVerdict check_rising_tide(const MetricSpec& metric, const Distribution& dist, const Vector& c);
/// Random directions, reflected into the admissible half-space. A "holds"
/// verdict only means no violation was found in `trials` draws.
PropertyVerdict search_rising_tide(const MetricSpec& metric, const Distribution& dist, int trials,
                                   std::uint64_t seed = kDefaultSeed);

/// Holds iff metric((X, X')) equals metric(X) within 1e-12 relative.
PropertyVerdict check_cloning(const MetricSpec& metric, const Distribution& dist);

/// Nested independent laws: coordinate i has mean m_i and variance s_i^2.
struct SequenceSpec {
  enum class Kind { iid, custom_marginals };
  Kind kind = Kind::iid;
  std::function<double(Index)> mean;      ///< m_i for i = 1, 2, ...
  std::function<double(Index)> variance;  ///< s_i^2 for i = 1, 2, ...
  Index n_max = 400;

  static SequenceSpec iid(double mean, double variance, Index n_max = 400);
  /// Diagonal summary of the first n coordinates.
  MomentSummary prefix(Index n) const;
  /// lim s_i / |m_i|. NonConvergentSpec if the marginal CVs at n_max and
  /// n_max / 2 differ by more than 1e-3 relative.
  double limit_cv() const;
};

void validate(const SequenceSpec& spec);

/// Holds iff |v(n_max) - L| <= max(0.02, 5 |v(n_max) - v(n_max / 2)|).
/// Data-only metrics are inconclusive.
PropertyVerdict check_dimension_stability(const MetricSpec& metric, const SequenceSpec& spec);

/// One exact value the suite reproduces.
struct GoldenCheck {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 1e-12;
  bool passed = false;
};

struct MatrixCell {
  PropertyVerdict verdict;
  /// Claimed outcome; empty when the claim matrix says nothing.
  std::optional<Verdict> expected;
  bool mismatch = false;
};

struct SuiteResult {
  std::uint64_t seed = kDefaultSeed;
  std::vector<GoldenCheck> golden;
  /// Metric-major: for each metric in matrix_metrics(), the six properties in
  /// all_property_ids() order.
  std::vector<MatrixCell> matrix;
  int golden_failures = 0;
  int mismatches = 0;
};

/// gamma_vn, gamma_r, gamma_vv, gamma_az, g2, sqrtn_gamma_r, sqrtn_gamma_az,
/// t_coeff.
std::span<const MetricId> matrix_metrics() noexcept;
std::optional<Verdict> expected_verdict(MetricId metric, PropertyId property) noexcept;

/// Every worked counterexample and positive check with an exact value.
std::vector<GoldenCheck> golden_checks();

/// golden_checks() plus the full verdict matrix.
SuiteResult counterexample_suite(std::uint64_t seed = kDefaultSeed);

}  // namespace mcv
