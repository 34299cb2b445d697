#include "mcv/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "mcv/errors.hpp"
#include "mcv/spdlinalg.hpp"
#include "mcv/whitening.hpp"
#include "pairwise.hpp"

namespace mcv {
namespace {

constexpr std::array kAllMetrics{
    MetricId::cv,          MetricId::gini,     MetricId::gamma_vn, MetricId::gamma_r,      MetricId::gamma_vv,
    MetricId::gamma_az,    MetricId::g2,       MetricId::g2_pairwise, MetricId::gq,        MetricId::g_inf,
    MetricId::t_coeff,     MetricId::sqrtn_gamma_r, MetricId::sqrtn_gamma_az,
};

MetricReport report(MetricId id, double value, const MomentSummary& ms) {
  return MetricReport{id, value, ms.dim(), ms.convention, std::nullopt, {}};
}

double mean_norm_sq(const MomentSummary& ms) {
  const double mtm = ms.mean.squaredNorm();
  if (!(mtm > 0.0)) throw Error(ErrorCode::ZeroMean, "mean vector is zero");
  return mtm;
}

/// m^T S^-1 m, guarded against a vanishing form.
double mahalanobis_mean_form(const MomentSummary& ms) {
  const double a = linalg::quadratic_form(linalg::spd_inverse(ms.cov), ms.mean);
  if (!(a > 1e-14)) {
    throw Error(ErrorCode::ZeroMeanForm, "m^T S^-1 m = " + std::to_string(a) + " is not positive");
  }
  return a;
}

detail::RowMajorMatrix transformed_rows(const DataSet& data, const Matrix& W) {
  return data.values() * W.transpose();
}

}  // namespace

std::string_view to_string(MetricId id) noexcept {
  switch (id) {
    case MetricId::cv: return "cv";
    case MetricId::gini: return "gini";
    case MetricId::gamma_vn: return "gamma_vn";
    case MetricId::gamma_r: return "gamma_r";
    case MetricId::gamma_vv: return "gamma_vv";
    case MetricId::gamma_az: return "gamma_az";
    case MetricId::g2: return "g2";
    case MetricId::g2_pairwise: return "g2_pairwise";
    case MetricId::gq: return "gq";
    case MetricId::g_inf: return "g_inf";
    case MetricId::t_coeff: return "t_coeff";
    case MetricId::sqrtn_gamma_r: return "sqrtn_gamma_r";
    case MetricId::sqrtn_gamma_az: return "sqrtn_gamma_az";
  }
  return "unknown";
}

MetricId parse_metric_id(std::string_view text) {
  for (MetricId id : kAllMetrics) {
    if (to_string(id) == text) return id;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown metric '" + std::string(text) + "'");
}

std::span<const MetricId> all_metric_ids() noexcept { return kAllMetrics; }

bool requires_data(MetricId id) noexcept {
  switch (id) {
    case MetricId::gini:
    case MetricId::g2_pairwise:
    case MetricId::gq:
    case MetricId::g_inf:
    case MetricId::t_coeff:
      return true;
    default:
      return false;
  }
}

std::string MetricSpec::label() const {
  std::string out(to_string(id));
  if (id == MetricId::gq) {
    std::string qs = std::to_string(q);
    qs.erase(qs.find_last_not_of('0') + 1);
    if (!qs.empty() && qs.back() == '.') qs.pop_back();
    out += "(q=" + qs + ")";
  }
  return out;
}

double cv_univariate(double mean, double sigma) {
  if (mean == 0.0) throw Error(ErrorCode::ZeroMean, "coefficient of variation needs a nonzero mean");
  if (!(sigma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "standard deviation must be non-negative");
  return sigma / std::abs(mean);
}

MetricReport gini_univariate(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "Gini index of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  for (double v : sorted) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "Gini input has non-finite values");
  }
  std::sort(sorted.begin(), sorted.end());
  const auto N = static_cast<double>(sorted.size());
  double sum = 0.0;
  for (double v : sorted) sum += v;
  const double mean = sum / N;
  if (mean == 0.0) throw Error(ErrorCode::ZeroMean, "Gini index needs a nonzero mean");

  // sum_ij |x_i - x_j| = 2 sum_k (2k - N + 1) x_(k); shifting by the minimum
  // leaves differences unchanged and makes constant samples exactly 0.
  const double lo = sorted.front();
  double weighted = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    weighted += (2.0 * static_cast<double>(k) - N + 1.0) * (sorted[k] - lo);
  }
  const double mean_abs_diff = 2.0 * weighted / (N * N);

  MetricReport out{MetricId::gini, mean_abs_diff / (2.0 * std::abs(mean)), 1, Convention::population,
                   std::nullopt, {}};
  if (lo < 0.0) out.flags.emplace_back("negative_support");
  return out;
}

MetricReport gamma_vn(const MomentSummary& ms) {
  return report(MetricId::gamma_vn, 1.0 / std::sqrt(mahalanobis_mean_form(ms)), ms);
}

MetricReport gamma_reyment(const MomentSummary& ms) {
  const double mtm = mean_norm_sq(ms);
  const double log_det = linalg::log_det_spd(ms.cov);
  const double geo = std::exp(log_det / static_cast<double>(ms.dim()));
  return report(MetricId::gamma_r, std::sqrt(geo / mtm), ms);
}

MetricReport gamma_vanvalen(const MomentSummary& ms) {
  const double mtm = mean_norm_sq(ms);
  return report(MetricId::gamma_vv, std::sqrt(ms.cov.trace() / mtm), ms);
}

MetricReport gamma_az(const MomentSummary& ms) {
  const double mtm = mean_norm_sq(ms);
  const double form = ms.mean.dot(ms.cov * ms.mean);
  return report(MetricId::gamma_az, std::sqrt(std::max(form, 0.0)) / mtm, ms);
}

MetricReport g2(const MomentSummary& ms) {
  const double n = static_cast<double>(ms.dim());
  return report(MetricId::g2, std::sqrt(n / mahalanobis_mean_form(ms)), ms);
}

MetricReport g2_pairwise(const DataSet& data, PairwiseMethod method, const PairwiseOptions& options) {
  const MomentSummary ms = estimate_moments(data, options.convention);
  const double a = mahalanobis_mean_form(ms);
  const auto N = static_cast<double>(data.observations());

  double value = 0.0;
  if (method == PairwiseMethod::double_sum) {
    // (x_i - x_j)^T S^-1 (x_i - x_j) = |L^-1 (x_i - x_j)|^2 with S = L L^T.
    const Matrix w = linalg::lower_triangular_inverse(linalg::cholesky(ms.cov).lower);
    const auto z = transformed_rows(data, w);
    const double upper = detail::pairwise_upper_sum(z, options.partitions, [](const double* u, const double* v,
                                                                              Index n) {
      double s = 0.0;
      for (Index k = 0; k < n; ++k) {
        const double d = u[k] - v[k];
        s += d * d;
      }
      return s;
    });
    const double mean_sq_distance = 2.0 * upper / (N * N);
    value = std::sqrt(mean_sq_distance / (2.0 * a));
  } else {
    const Vector center = data.values().colwise().mean().transpose();
    const Matrix centered = data.values().rowwise() - center.transpose();
    const Matrix plug_in = centered.transpose() * centered / N;
    const double trace = (linalg::spd_inverse(ms.cov) * plug_in).trace();
    value = std::sqrt(trace / a);
  }
  return MetricReport{MetricId::g2_pairwise, value, data.dim(), options.convention, std::nullopt, {}};
}

MetricReport gq(const DataSet& data, double q, const PairwiseOptions& options) {
  if (!(q >= 1.0) || !std::isfinite(q)) {
    throw Error(ErrorCode::InvalidArgument, "q must be a finite real >= 1");
  }
  const MomentSummary ms = estimate_moments(data, options.convention);
  const WhiteningTransform W = zca_cor_whitening(ms);
  const auto z = transformed_rows(data, W.matrix);
  const Vector white_mean = W.matrix * ms.mean;
  const double top_mean = white_mean.cwiseAbs().maxCoeff();
  if (!(top_mean > 1e-14)) throw Error(ErrorCode::ZeroWhitenedMean, "whitened mean vector is zero");

  // Dividing every magnitude by a common scale keeps |.|^q in range for large q;
  // the scale cancels between numerator and denominator.
  const double range = (z.colwise().maxCoeff() - z.colwise().minCoeff()).maxCoeff();
  const double scale = std::max(top_mean, range);
  const double inv_scale = 1.0 / scale;

  auto power = [q](double r) {
    if (q == 1.0) return r;
    if (q == 2.0) return r * r;
    return std::pow(r, q);
  };
  double mean_term = 0.0;
  for (Index k = 0; k < white_mean.size(); ++k) mean_term += power(std::abs(white_mean(k)) * inv_scale);

  const double upper = detail::pairwise_upper_sum(z, options.partitions, [&](const double* u, const double* v,
                                                                             Index n) {
    double s = 0.0;
    for (Index k = 0; k < n; ++k) s += power(std::abs(u[k] - v[k]) * inv_scale);
    return s;
  });
  const auto N = static_cast<double>(data.observations());
  const double pair_term = 2.0 * upper / (N * N);
  const double value = std::pow(pair_term / (2.0 * mean_term), 1.0 / q);

  MetricReport out{MetricId::gq, value, data.dim(), options.convention, q, {}};
  return out;
}

MetricReport g_inf(const DataSet& data) {
  const MomentSummary ms = estimate_moments(data, Convention::population);
  const WhiteningTransform W = zca_cor_whitening(ms);
  const Matrix z = data.values() * W.matrix.transpose();
  const Vector white_mean = W.matrix * ms.mean;
  const double top_mean = white_mean.cwiseAbs().maxCoeff();
  if (!(top_mean > 1e-14)) throw Error(ErrorCode::ZeroWhitenedMean, "whitened mean vector is zero");
  const double range = (z.colwise().maxCoeff() - z.colwise().minCoeff()).maxCoeff();
  return MetricReport{MetricId::g_inf, range / top_mean, data.dim(), Convention::population, std::nullopt, {}};
}

MetricReport t_coefficient(const DataSet& data, const PairwiseOptions& options) {
  const MomentSummary ms = estimate_moments(data, options.convention);
  const double a = mahalanobis_mean_form(ms);
  const Matrix w = linalg::lower_triangular_inverse(linalg::cholesky(ms.cov).lower);
  const auto z = transformed_rows(data, w);
  const double upper = detail::pairwise_upper_sum(z, options.partitions, [](const double* u, const double* v,
                                                                            Index n) {
    double s = 0.0;
    for (Index k = 0; k < n; ++k) {
      const double d = u[k] - v[k];
      s += d * d;
    }
    return std::sqrt(s);
  });
  const auto N = static_cast<double>(data.observations());
  const double mean_distance = 2.0 * upper / (N * N);
  return MetricReport{MetricId::t_coeff, std::sqrt(1.0 / (2.0 * a)) * mean_distance, data.dim(),
                      options.convention, std::nullopt, {}};
}

CorrectedMetrics corrected_metrics(const MomentSummary& ms) {
  const double root_n = std::sqrt(static_cast<double>(ms.dim()));
  MetricReport r = gamma_reyment(ms);
  MetricReport az = gamma_az(ms);
  r.metric = MetricId::sqrtn_gamma_r;
  r.value *= root_n;
  az.metric = MetricId::sqrtn_gamma_az;
  az.value *= root_n;
  return CorrectedMetrics{r, az};
}

double influence_g2(const Vector& x, const MomentSummary& ms) {
  if (x.size() != ms.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "point has length " + std::to_string(x.size()) +
                                                  ", summary dimension is " + std::to_string(ms.dim()));
  }
  const Matrix inv = linalg::spd_inverse(ms.cov);
  const double a = linalg::quadratic_form(inv, ms.mean);
  if (!(a > 1e-14)) throw Error(ErrorCode::ZeroMeanForm, "m^T S^-1 m is not positive");
  const double linear = ms.mean.dot(inv * (x - ms.mean));
  const double root_n = std::sqrt(static_cast<double>(ms.dim()));
  return root_n / (2.0 * std::pow(a, 1.5)) * (a * a - 2.0 * linear);
}

InfluenceEstimate influence_fd(const Vector& x, const DataSet& data, double eps) {
  if (!(eps > 0.0 && eps < 0.1)) throw Error(ErrorCode::InvalidArgument, "eps must lie in (0, 0.1)");
  if (x.size() != data.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "point has length " + std::to_string(x.size()) +
                                                  ", data dimension is " + std::to_string(data.dim()));
  }
  if (!x.allFinite()) throw Error(ErrorCode::NonFinite, "contamination point has non-finite entries");
  const Index N = data.observations();
  const double base =
      g2(weighted_moments(data, Vector::Constant(N, 1.0 / static_cast<double>(N)))).value;

  Matrix extended(N + 1, data.dim());
  extended.topRows(N) = data.values();
  extended.row(N) = x.transpose();
  const DataSet contaminated(std::move(extended), data.column_names());

  auto estimate = [&](double e) {
    Vector w = Vector::Constant(N + 1, (1.0 - e) / static_cast<double>(N));
    w(N) = e;
    return (g2(weighted_moments(contaminated, w)).value - base) / e;
  };
  InfluenceEstimate out;
  out.eps = eps;
  out.at_eps = estimate(eps);
  out.at_half_eps = estimate(eps / 2.0);
  out.richardson = 2.0 * out.at_half_eps - out.at_eps;
  out.relative_change = std::abs(out.at_eps - out.at_half_eps) / std::abs(out.at_half_eps);
  return out;
}

MetricReport compute(const MetricSpec& metric, const MomentSummary& ms) {
  switch (metric.id) {
    case MetricId::cv: {
      if (ms.dim() != 1) throw Error(ErrorCode::DimensionMismatch, "cv is defined for n = 1 only");
      return report(MetricId::cv, cv_univariate(ms.mean(0), std::sqrt(ms.cov(0, 0))), ms);
    }
    case MetricId::gamma_vn: return gamma_vn(ms);
    case MetricId::gamma_r: return gamma_reyment(ms);
    case MetricId::gamma_vv: return gamma_vanvalen(ms);
    case MetricId::gamma_az: return gamma_az(ms);
    case MetricId::g2: return g2(ms);
    case MetricId::sqrtn_gamma_r: return corrected_metrics(ms).sqrtn_gamma_r;
    case MetricId::sqrtn_gamma_az: return corrected_metrics(ms).sqrtn_gamma_az;
    default:
      throw Error(ErrorCode::InvalidArgument,
                  "metric '" + std::string(to_string(metric.id)) + "' requires observations, not moments");
  }
}

MetricReport compute(const MetricSpec& metric, const DataSet& data, const PairwiseOptions& options) {
  switch (metric.id) {
    case MetricId::gini: {
      if (data.dim() != 1) throw Error(ErrorCode::DimensionMismatch, "gini is defined for n = 1 only");
      const Vector col = data.values().col(0);
      return gini_univariate(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())));
    }
    case MetricId::g2_pairwise: return g2_pairwise(data, PairwiseMethod::double_sum, options);
    case MetricId::gq: return gq(data, metric.q, options);
    case MetricId::g_inf: return g_inf(data);
    case MetricId::t_coeff: return t_coefficient(data, options);
    default: return compute(metric, estimate_moments(data, options.convention));
  }
}

}  // namespace mcv
