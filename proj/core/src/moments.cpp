#include "mcv/moments.hpp"

#include <cmath>
#include <string>

#include "mcv/errors.hpp"
#include "mcv/spdlinalg.hpp"

namespace mcv {

std::string_view to_string(Convention c) noexcept {
  switch (c) {
    case Convention::population: return "population";
    case Convention::unbiased: return "unbiased";
    case Convention::analytic: return "analytic";
  }
  return "unknown";
}

Convention parse_convention(std::string_view text) {
  if (text == "population") return Convention::population;
  if (text == "unbiased") return Convention::unbiased;
  if (text == "analytic") return Convention::analytic;
  throw Error(ErrorCode::InvalidArgument, "unknown convention '" + std::string(text) + "'");
}

Matrix MomentSummary::corr() const {
  const Index n = dim();
  Vector sd(n);
  for (Index i = 0; i < n; ++i) {
    if (!(cov(i, i) > 0.0)) {
      throw Error(ErrorCode::DegenerateColumn,
                  "variable " + std::to_string(i + 1) + " has zero variance; correlation undefined");
    }
    sd(i) = std::sqrt(cov(i, i));
  }
  Matrix p(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) p(i, j) = i == j ? 1.0 : cov(i, j) / (sd(i) * sd(j));
  }
  return p;
}

void validate_summary(const MomentSummary& ms) {
  const Index n = ms.mean.size();
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "moment summary has dimension 0");
  if (ms.cov.rows() != n || ms.cov.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "covariance must be " + std::to_string(n) + "x" +
                                                  std::to_string(n));
  }
  if (!ms.mean.allFinite() || !ms.cov.allFinite()) {
    throw Error(ErrorCode::NonFinite, "moment summary contains non-finite entries");
  }
  const double scale = ms.cov.cwiseAbs().maxCoeff();
  if ((ms.cov - ms.cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::InvalidArgument, "covariance is not symmetric");
  }
  if (scale == 0.0) return;
  const auto eig = linalg::sym_eigen(0.5 * (ms.cov + ms.cov.transpose()));
  const double top = eig.values(0);
  if (eig.values(n - 1) < -1e-10 * std::abs(top)) {
    throw Error(ErrorCode::NotPositiveDefinite, "covariance has a negative eigenvalue " +
                                                    std::to_string(eig.values(n - 1)));
  }
}

MomentSummary make_summary(Vector mean, Matrix cov, Convention convention) {
  MomentSummary ms{std::move(mean), std::move(cov), convention};
  validate_summary(ms);
  ms.cov = 0.5 * (ms.cov + ms.cov.transpose());
  return ms;
}

MomentSummary estimate_moments(const DataSet& data, Convention convention) {
  const auto& x = data.values();
  const Index N = x.rows();
  if (convention == Convention::analytic) {
    throw Error(ErrorCode::InvalidArgument, "cannot estimate moments under the analytic convention");
  }
  for (Index j = 0; j < x.cols(); ++j) {
    if (x.col(j).maxCoeff() == x.col(j).minCoeff()) {
      throw Error(ErrorCode::DegenerateColumn,
                  "column '" + data.column_names()[static_cast<std::size_t>(j)] + "' has zero variance");
    }
  }
  Vector mean = x.colwise().mean().transpose();
  const Matrix centered = x.rowwise() - mean.transpose();
  const double divisor = convention == Convention::population ? static_cast<double>(N)
                                                              : static_cast<double>(N - 1);
  Matrix cov = (centered.transpose() * centered) / divisor;
  cov = 0.5 * (cov + cov.transpose());
  return MomentSummary{std::move(mean), std::move(cov), convention};
}

MomentSummary coupling_moments(const MomentSummary& ms) {
  const Index n = ms.dim();
  Vector mean(2 * n);
  mean << ms.mean, ms.mean;
  Matrix cov = Matrix::Zero(2 * n, 2 * n);
  cov.topLeftCorner(n, n) = ms.cov;
  cov.bottomRightCorner(n, n) = ms.cov;
  return MomentSummary{std::move(mean), std::move(cov), ms.convention};
}

MomentSummary shift_moments(const MomentSummary& ms, const Vector& c) {
  if (c.size() != ms.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "shift has length " + std::to_string(c.size()) +
                                                  ", summary dimension is " + std::to_string(ms.dim()));
  }
  if (!c.allFinite()) throw Error(ErrorCode::NonFinite, "shift vector contains non-finite entries");
  return MomentSummary{ms.mean + c, ms.cov, ms.convention};
}

MomentSummary scale_moments(const MomentSummary& ms, const Matrix& A) {
  if (A.rows() != ms.dim() || A.cols() != ms.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "transform must be " + std::to_string(ms.dim()) + "x" +
                                                  std::to_string(ms.dim()));
  }
  if (!A.allFinite()) throw Error(ErrorCode::NonFinite, "transform contains non-finite entries");
  Matrix cov = A * ms.cov * A.transpose();
  cov = 0.5 * (cov + cov.transpose());
  return MomentSummary{A * ms.mean, std::move(cov), ms.convention};
}

MomentSummary weighted_moments(const DataSet& data, const Vector& weights) {
  const auto& x = data.values();
  if (weights.size() != x.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "got " + std::to_string(weights.size()) + " weights for " +
                                                  std::to_string(x.rows()) + " observations");
  }
  if (!weights.allFinite() || weights.minCoeff() < 0.0) {
    throw Error(ErrorCode::WeightSum, "weights must be finite and non-negative");
  }
  const double total = weights.sum();
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::WeightSum, "weights sum to " + std::to_string(total) + ", expected 1");
  }
  Vector mean = x.transpose() * weights;
  const Matrix centered = x.rowwise() - mean.transpose();
  Matrix cov = centered.transpose() * weights.asDiagonal() * centered;
  cov = 0.5 * (cov + cov.transpose());
  return MomentSummary{std::move(mean), std::move(cov), Convention::population};
}

}  // namespace mcv
