#pragma once

#include <string_view>

#include "mcv/dataset.hpp"
#include "mcv/moments.hpp"

namespace mcv {

enum class WhiteningKind { zca_cor, cholesky };

std::string_view to_string(WhiteningKind kind) noexcept;
WhiteningKind parse_whitening_kind(std::string_view text);

/// A matrix W with W^T W = cov^-1 for the summary it was built from.
///
/// Both kinds are scale stable: rescaling the variables by a positive
/// diagonal Q and whitening Q X gives back exactly the whitened X.
struct WhiteningTransform {
  Matrix matrix;
  WhiteningKind kind = WhiteningKind::zca_cor;
  MomentSummary source;
  /// Eigenvalue ratio of the matrix that was inverted (P for zca_cor,
  /// cov for cholesky).
  double condition = 1.0;
};

/// W = P^-1/2 V^-1/2, with P the correlation matrix and V the variance diagonal.
WhiteningTransform zca_cor_whitening(const MomentSummary& ms);

/// W = L^-1 where cov = L L^T.
WhiteningTransform cholesky_whitening(const MomentSummary& ms);

WhiteningTransform make_whitening(const MomentSummary& ms, WhiteningKind kind);

/// Each row x replaced by W x. Nothing is centered: means map to W m.
DataSet apply_whitening(const WhiteningTransform& W, const DataSet& data);

/// Moments of W X.
MomentSummary whiten_summary(const WhiteningTransform& W, const MomentSummary& ms);

/// Coefficients of variation of the whitened components: sd_i / |(W m)_i|,
/// which is 1 / |(W m)_i| when W whitens ms.
Vector component_cvs(const WhiteningTransform& W, const MomentSummary& ms);

}  // namespace mcv
