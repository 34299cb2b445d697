#include "mcv/whitening.hpp"

#include <cmath>
#include <string>

#include "mcv/errors.hpp"
#include "mcv/spdlinalg.hpp"

namespace mcv {

std::string_view to_string(WhiteningKind kind) noexcept {
  return kind == WhiteningKind::zca_cor ? "zca_cor" : "cholesky";
}

WhiteningKind parse_whitening_kind(std::string_view text) {
  if (text == "zca_cor" || text == "zca-cor") return WhiteningKind::zca_cor;
  if (text == "cholesky") return WhiteningKind::cholesky;
  throw Error(ErrorCode::InvalidArgument, "unknown whitening kind '" + std::string(text) + "'");
}

WhiteningTransform zca_cor_whitening(const MomentSummary& ms) {
  const Matrix P = ms.corr();  // throws DegenerateColumn on a zero variance
  const auto eig = linalg::sym_eigen(P);
  const Matrix p_inv_sqrt = linalg::spd_inv_sqrt(eig);
  const Vector inv_sd = ms.var_diag().cwiseSqrt().cwiseInverse();
  return WhiteningTransform{p_inv_sqrt * inv_sd.asDiagonal(), WhiteningKind::zca_cor, ms, eig.condition()};
}

WhiteningTransform cholesky_whitening(const MomentSummary& ms) {
  const auto chol = linalg::cholesky(ms.cov);
  return WhiteningTransform{linalg::lower_triangular_inverse(chol.lower), WhiteningKind::cholesky, ms,
                            linalg::sym_eigen(ms.cov).condition()};
}

WhiteningTransform make_whitening(const MomentSummary& ms, WhiteningKind kind) {
  return kind == WhiteningKind::zca_cor ? zca_cor_whitening(ms) : cholesky_whitening(ms);
}

DataSet apply_whitening(const WhiteningTransform& W, const DataSet& data) {
  if (W.matrix.cols() != data.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "whitening is " + std::to_string(W.matrix.cols()) +
                                                  "-dimensional, data has " + std::to_string(data.dim()) +
                                                  " columns");
  }
  auto names = data.column_names();
  for (auto& name : names) name += "*";
  return DataSet(data.values() * W.matrix.transpose(), std::move(names));
}

MomentSummary whiten_summary(const WhiteningTransform& W, const MomentSummary& ms) {
  return scale_moments(ms, W.matrix);
}

Vector component_cvs(const WhiteningTransform& W, const MomentSummary& ms) {
  const MomentSummary white = whiten_summary(W, ms);
  Vector cvs(white.dim());
  for (Index i = 0; i < white.dim(); ++i) {
    const double m = white.mean(i);
    if (std::abs(m) <= 1e-14) {
      throw Error(ErrorCode::ZeroWhitenedMean, "whitened component " + std::to_string(i + 1) + " has mean 0");
    }
    cvs(i) = std::sqrt(white.cov(i, i)) / std::abs(m);
  }
  return cvs;
}

}  // namespace mcv
