#pragma once

#include <string_view>

#include "mcv/dataset.hpp"
#include "mcv/types.hpp"

namespace mcv {

/// How a covariance was obtained: plug-in (1/N), Bessel-corrected (1/(N-1)),
/// or supplied analytically.
enum class Convention { population, unbiased, analytic };

std::string_view to_string(Convention c) noexcept;
Convention parse_convention(std::string_view text);

/// First two moments of a distribution on R^n.
///
/// The variance diagonal and the correlation matrix are derived from `cov`
/// on demand, so they can never drift out of sync with it. `corr()` throws
/// DegenerateColumn when a variance is zero, since the correlation is then
/// undefined.
struct MomentSummary {
  Vector mean;
  Matrix cov;
  Convention convention = Convention::analytic;

  Index dim() const noexcept { return mean.size(); }
  Vector var_diag() const { return cov.diagonal(); }
  Matrix corr() const;
};

/// Validating constructor: finite entries, matching dimensions, symmetric
/// covariance (1e-12 relative) and positive semidefinite (eigenvalues at
/// least -1e-10 times the largest). The stored covariance is symmetrized.
MomentSummary make_summary(Vector mean, Matrix cov, Convention convention = Convention::analytic);

/// Throws on the first violated MomentSummary invariant.
void validate_summary(const MomentSummary& ms);

MomentSummary estimate_moments(const DataSet& data, Convention convention = Convention::population);

/// Moments of the independent coupling (X, X'): mean (m, m), covariance
/// blockdiag(cov, cov).
MomentSummary coupling_moments(const MomentSummary& ms);

/// Moments of X + c.
MomentSummary shift_moments(const MomentSummary& ms, const Vector& c);

/// Moments of A X for a square A acting on column vectors: (A m, A cov A^T).
MomentSummary scale_moments(const MomentSummary& ms, const Matrix& A);

/// Moments of the discrete measure putting mass weights[i] on row i.
/// Weights must be non-negative and sum to 1 within 1e-12. The covariance
/// is weight-exact (no small-sample correction).
MomentSummary weighted_moments(const DataSet& data, const Vector& weights);

}  // namespace mcv
