#include "mcv/spdlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "mcv/errors.hpp"

namespace mcv::linalg {
namespace {

void require_square(const Matrix& S, const char* what) {
  if (S.rows() != S.cols() || S.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " needs a non-empty square matrix, got " +
                                                  std::to_string(S.rows()) + "x" + std::to_string(S.cols()));
  }
  if (!S.allFinite()) throw Error(ErrorCode::NonFinite, std::string(what) + " input has non-finite entries");
}

void require_symmetric(const Matrix& S, const char* what) {
  const double scale = S.cwiseAbs().maxCoeff();
  if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " input is not symmetric");
  }
}

double off_diagonal_norm(const Matrix& A) {
  double sum = 0.0;
  for (Index j = 0; j < A.cols(); ++j) {
    for (Index i = 0; i < A.rows(); ++i) {
      if (i != j) sum += A(i, j) * A(i, j);
    }
  }
  return std::sqrt(sum);
}

}  // namespace

double SymEigen::condition() const noexcept {
  const double lo = values(values.size() - 1);
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return values(0) / lo;
}

SpdFactorization cholesky(const Matrix& S) {
  require_square(S, "cholesky");
  require_symmetric(S, "cholesky");
  const Index n = S.rows();
  const double tol = static_cast<double>(n) * 1e-14 * S.cwiseAbs().maxCoeff();
  Matrix L = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    double pivot = S(j, j);
    for (Index k = 0; k < j; ++k) pivot -= L(j, k) * L(j, k);
    if (!(pivot > tol)) {
      throw Error(ErrorCode::NotPositiveDefinite,
                  "Cholesky pivot " + std::to_string(j + 1) + " is " + std::to_string(pivot));
    }
    const double d = std::sqrt(pivot);
    L(j, j) = d;
    for (Index i = j + 1; i < n; ++i) {
      double s = S(i, j);
      for (Index k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / d;
    }
  }
  return SpdFactorization{std::move(L)};
}

Matrix lower_triangular_inverse(const Matrix& L) {
  require_square(L, "lower_triangular_inverse");
  const Index n = L.rows();
  Matrix inv = Matrix::Zero(n, n);
  for (Index col = 0; col < n; ++col) {
    for (Index i = col; i < n; ++i) {
      double s = i == col ? 1.0 : 0.0;
      for (Index k = col; k < i; ++k) s -= L(i, k) * inv(k, col);
      if (L(i, i) == 0.0) throw Error(ErrorCode::NotPositiveDefinite, "singular triangular factor");
      inv(i, col) = s / L(i, i);
    }
  }
  return inv;
}

Matrix spd_inverse(const Matrix& S) {
  const auto chol = cholesky(S);
  const Matrix linv = lower_triangular_inverse(chol.lower);
  Matrix inv = linv.transpose() * linv;
  return 0.5 * (inv + inv.transpose());
}

double log_det_spd(const Matrix& S) {
  const auto chol = cholesky(S);
  double sum = 0.0;
  for (Index i = 0; i < chol.dim(); ++i) sum += std::log(chol.lower(i, i));
  return 2.0 * sum;
}

SymEigen sym_eigen(const Matrix& S) {
  require_square(S, "sym_eigen");
  require_symmetric(S, "sym_eigen");
  const Index n = S.rows();
  Matrix A = 0.5 * (S + S.transpose());
  Matrix V = Matrix::Identity(n, n);
  const double target = 1e-12 * A.norm();
  constexpr int kMaxSweeps = 100;

  bool converged = false;
  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(A) <= target) {
      converged = true;
      break;
    }
    if (sweep == kMaxSweeps) break;
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (apq == 0.0) continue;
        // Rotation annihilating A(p, q) (symmetric Schur decomposition of the 2x2 block).
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Index k = 0; k < n; ++k) {
          const double akp = A(k, p);
          const double akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const double apk = A(p, k);
          const double aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        A(p, q) = 0.0;
        A(q, p) = 0.0;
        for (Index k = 0; k < n; ++k) {
          const double vkp = V(k, p);
          const double vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) {
    throw Error(ErrorCode::NoConvergence, "Jacobi eigensolver exceeded 100 sweeps");
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return A(a, a) > A(b, b); });

  SymEigen out{Matrix(n, n), Vector(n)};
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = A(src, src);
    Vector v = V.col(src);
    Index arg = 0;
    for (Index i = 1; i < n; ++i) {
      if (std::abs(v(i)) > std::abs(v(arg))) arg = i;
    }
    if (v(arg) < 0.0) v = -v;
    out.vectors.col(k) = v;
  }
  return out;
}

Matrix spd_inv_sqrt(const SymEigen& eig) {
  const Index n = eig.values.size();
  const double top = eig.values(0);
  if (!(top > 0.0) || !(eig.values(n - 1) > 1e-12 * top)) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "smallest eigenvalue " + std::to_string(eig.values(n - 1)) + " is not positive enough");
  }
  const Vector scale = eig.values.cwiseSqrt().cwiseInverse();
  Matrix R = eig.vectors * scale.asDiagonal() * eig.vectors.transpose();
  return 0.5 * (R + R.transpose());
}

Matrix spd_inv_sqrt(const Matrix& S) { return spd_inv_sqrt(sym_eigen(S)); }

double quadratic_form(const Matrix& S_inv, const Vector& v) {
  if (S_inv.rows() != v.size() || S_inv.cols() != v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "quadratic form of a length-" + std::to_string(v.size()) +
                                                  " vector with a " + std::to_string(S_inv.rows()) + "x" +
                                                  std::to_string(S_inv.cols()) + " matrix");
  }
  return v.dot(S_inv * v);
}

}  // namespace mcv::linalg
