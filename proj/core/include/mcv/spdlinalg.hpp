#pragma once

#include "mcv/types.hpp"

/// Dense symmetric / SPD kernels. Dimensions are small (n up to ~100), so
/// everything is plain O(n^3) and deterministic.
namespace mcv::linalg {

/// S = L L^T with L lower triangular and a strictly positive diagonal.
struct SpdFactorization {
  Matrix lower;

  Index dim() const noexcept { return lower.rows(); }
};

/// S = G diag(values) G^T. Eigenvalues descending; in every eigenvector the
/// entry of largest magnitude is positive.
struct SymEigen {
  Matrix vectors;
  Vector values;

  /// Ratio of largest to smallest eigenvalue (infinity if the smallest is <= 0).
  double condition() const noexcept;
};

/// Eigenvalue ratio above which callers should surface a conditioning warning.
inline constexpr double kConditionWarning = 1e10;

/// Throws NotPositiveDefinite when a pivot falls to n * 1e-14 * max|S_ij| or below.
SpdFactorization cholesky(const Matrix& S);

Matrix spd_inverse(const Matrix& S);

/// Cyclic Jacobi rotations, at most 100 sweeps, until the off-diagonal
/// Frobenius norm is at most 1e-12 * ||S||_F; NoConvergence otherwise.
SymEigen sym_eigen(const Matrix& S);

/// G diag(values^-1/2) G^T. NotPositiveDefinite when an eigenvalue is at or
/// below 1e-12 times the largest.
Matrix spd_inv_sqrt(const Matrix& S);
Matrix spd_inv_sqrt(const SymEigen& eig);

/// v^T S_inv v.
double quadratic_form(const Matrix& S_inv, const Vector& v);

/// Inverse of a lower-triangular matrix by forward substitution.
Matrix lower_triangular_inverse(const Matrix& L);

/// log det(S) from the Cholesky diagonal.
double log_det_spd(const Matrix& S);

}  // namespace mcv::linalg
