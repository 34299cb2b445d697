#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcv/dataset.hpp"
#include "mcv/moments.hpp"

namespace mcv {

/// Every dispersion coefficient the library knows how to compute.
enum class MetricId {
  cv,              ///< sigma / |m| (n = 1)
  gini,            ///< univariate Gini index (n = 1, data only)
  gamma_vn,        ///< Voinov-Nikulin: 1 / sqrt(m^T S^-1 m)
  gamma_r,         ///< Reyment: sqrt(det(S)^(1/n) / m^T m)
  gamma_vv,        ///< Van Valen: sqrt(tr(S) / m^T m)
  gamma_az,        ///< Albert-Zhang: sqrt(m^T S m / (m^T m)^2)
  g2,              ///< squared Gini, closed form sqrt(n) * gamma_vn
  g2_pairwise,     ///< squared Gini from the pairwise double integral (data only)
  gq,              ///< L_q Gini on ZCA-cor whitened data (data only)
  g_inf,           ///< q -> infinity limit of gq (data only)
  t_coeff,         ///< Mahalanobis mean-difference index (data only)
  sqrtn_gamma_r,   ///< sqrt(n) * gamma_r
  sqrtn_gamma_az,  ///< sqrt(n) * gamma_az
};

std::string_view to_string(MetricId id) noexcept;
MetricId parse_metric_id(std::string_view text);
/// All ids in declaration order.
std::span<const MetricId> all_metric_ids() noexcept;
/// True for metrics that need observations rather than a MomentSummary.
bool requires_data(MetricId id) noexcept;

/// A metric plus its parameter (only gq uses q).
struct MetricSpec {
  MetricId id = MetricId::g2;
  double q = 2.0;

  std::string label() const;
};

struct MetricReport {
  MetricId metric = MetricId::g2;
  double value = 0.0;
  Index n = 1;
  Convention convention = Convention::population;
  std::optional<double> q;
  /// Interpretation caveats, e.g. "negative_support" for a Gini index
  /// computed on data with negative values.
  std::vector<std::string> flags;
};

/// Knobs for the O(N^2) pairwise kernels.
///
/// Each observation's row sum is computed independently and the row sums are
/// reduced with a fixed pairwise tree, so the result is bit-identical for
/// any partition count.
struct PairwiseOptions {
  unsigned partitions = 1;
  Convention convention = Convention::population;
};

enum class PairwiseMethod {
  double_sum,  ///< literal (1/N^2) sum over all ordered pairs, O(N^2 n)
  trace,       ///< tr(S^-1 S_hat) / (m^T S^-1 m), O(N n^2)
};

double cv_univariate(double mean, double sigma);

/// (1 / (2|m|)) * (1/N^2) * sum_ij |x_i - x_j| in O(N log N) via sorted prefix
/// weights. Input order does not matter.
MetricReport gini_univariate(std::span<const double> values);

MetricReport gamma_vn(const MomentSummary& ms);
MetricReport gamma_reyment(const MomentSummary& ms);
MetricReport gamma_vanvalen(const MomentSummary& ms);
MetricReport gamma_az(const MomentSummary& ms);
MetricReport g2(const MomentSummary& ms);

MetricReport g2_pairwise(const DataSet& data, PairwiseMethod method = PairwiseMethod::double_sum,
                         const PairwiseOptions& options = {});
MetricReport gq(const DataSet& data, double q, const PairwiseOptions& options = {});
MetricReport g_inf(const DataSet& data);
MetricReport t_coefficient(const DataSet& data, const PairwiseOptions& options = {});

struct CorrectedMetrics {
  MetricReport sqrtn_gamma_r;
  MetricReport sqrtn_gamma_az;
};
CorrectedMetrics corrected_metrics(const MomentSummary& ms);

/// The published closed-form influence function of G2, evaluated verbatim:
///   sqrt(n) / (2 a^(3/2)) * (a^2 - 2 m^T S^-1 (x - m)),  a = m^T S^-1 m.
double influence_g2(const Vector& x, const MomentSummary& ms);

/// Finite-difference influence of G2 at x: (G2(mu_eps) - G2(mu)) / eps with
/// mu_eps = (1 - eps) * empirical + eps * delta_x, at eps and eps / 2.
struct InfluenceEstimate {
  double eps = 0.0;
  double at_eps = 0.0;
  double at_half_eps = 0.0;
  /// 2 * at_half_eps - at_eps.
  double richardson = 0.0;
  /// |at_eps - at_half_eps| / |at_half_eps|.
  double relative_change = 0.0;
};
InfluenceEstimate influence_fd(const Vector& x, const DataSet& data, double eps);

/// Evaluate a moment-level metric. Data-only metrics throw InvalidArgument.
MetricReport compute(const MetricSpec& metric, const MomentSummary& ms);
/// Evaluate any metric on observations; moment-level metrics use
/// estimate_moments(data, options.convention).
MetricReport compute(const MetricSpec& metric, const DataSet& data, const PairwiseOptions& options = {});

}  // namespace mcv
