#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "mcv/errors.hpp"
#include "mcv/spdlinalg.hpp"
#include "support.hpp"

using namespace mcv;
using namespace mcv::linalg;
using Catch::Matchers::WithinAbs;

namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected mcv::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("cholesky worked cases") {
  CHECK(cholesky(Matrix::Identity(3, 3)).lower == Matrix(Matrix::Identity(3, 3)));
  CHECK(test::max_abs(cholesky(mat2(1, 1, 1, 2)).lower - mat2(1, 0, 1, 1)) < 1e-15);
  CHECK(cholesky(Matrix::Constant(1, 1, 4.0)).lower(0, 0) == 2.0);
  CHECK(code_of([] { cholesky(mat2(1, 2, 2, 1)); }) == ErrorCode::NotPositiveDefinite);
  CHECK(code_of([] { cholesky(Matrix::Ones(2, 2)); }) == ErrorCode::NotPositiveDefinite);
}

TEST_CASE("spd_inverse worked cases") {
  CHECK(test::max_abs(spd_inverse(mat2(1, 1, 1, 2)) - mat2(2, -1, -1, 1)) < 1e-14);
  CHECK(test::max_abs(spd_inverse(mat2(1, 0, 0, 100)) - mat2(1, 0, 0, 0.01)) < 1e-16);
  CHECK(spd_inverse(Matrix::Identity(4, 4)) == Matrix(Matrix::Identity(4, 4)));
}

TEST_CASE("sym_eigen worked cases") {
  const SymEigen d = sym_eigen(mat2(1, 0, 0, 3));
  CHECK(d.values == Vector{{3.0, 1.0}});
  CHECK(test::max_abs(d.vectors - mat2(0, 1, 1, 0)) < 1e-15);

  const double rho = 0.3;
  const SymEigen r = sym_eigen(mat2(1, rho, rho, 1));
  CHECK_THAT(r.values(0), WithinAbs(1 + rho, 1e-14));
  CHECK_THAT(r.values(1), WithinAbs(1 - rho, 1e-14));
  const double h = 1.0 / std::sqrt(2.0);
  CHECK_THAT(r.vectors(0, 0), WithinAbs(h, 1e-14));
  CHECK_THAT(r.vectors(1, 0), WithinAbs(h, 1e-14));
  CHECK_THAT(std::abs(r.vectors(0, 1)), WithinAbs(h, 1e-14));
  CHECK_THAT(r.vectors(0, 1) + r.vectors(1, 1), WithinAbs(0.0, 1e-14));

  CHECK(sym_eigen(Matrix::Identity(5, 5)).values == Vector::Ones(5));
  CHECK_THAT(r.condition(), WithinAbs(1.3 / 0.7, 1e-12));
}

TEST_CASE("spd_inv_sqrt worked cases") {
  CHECK(test::max_abs(spd_inv_sqrt(mat2(4, 0, 0, 9)) - mat2(0.5, 0, 0, 1.0 / 3.0)) < 1e-15);
  CHECK(test::max_abs(spd_inv_sqrt(Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)) < 1e-15);
  const Matrix s = mat2(1, 0.5, 0.5, 1);
  const Matrix r = spd_inv_sqrt(s);
  CHECK(r == r.transpose());
  CHECK(test::max_abs(r * s * r - Matrix::Identity(2, 2)) < 1e-10);
  CHECK(code_of([] { spd_inv_sqrt(mat2(1, 1, 1, 1 + 1e-14)); }) == ErrorCode::NotPositiveDefinite);
}

TEST_CASE("quadratic_form worked cases") {
  CHECK_THAT(quadratic_form(mat2(2, -1, -1, 1), Vector{{3.0, 3.0}}), WithinAbs(9.0, 1e-15));
  CHECK(quadratic_form(mat2(2, -1, -1, 1), Vector::Zero(2)) == 0.0);
  CHECK(quadratic_form(Matrix::Identity(2, 2), Vector{{3.0, 4.0}}) == 25.0);
  CHECK(code_of([] { quadratic_form(Matrix::Identity(2, 2), Vector::Ones(3)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("random SPD matrices against Eigen") {
  RandomStream rng(kDefaultSeed, stream_id(0x51, 0));
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 1 + trial % 8;
    const Matrix s = test::random_spd(n, rng);
    const double scale = test::max_abs(s);
    const Matrix id = Matrix::Identity(n, n);

    const Matrix l = cholesky(s).lower;
    CHECK(test::max_abs(l * l.transpose() - s) <= 1e-12 * scale);
    CHECK(test::max_abs(l - Matrix(s.llt().matrixL())) <= 1e-12 * std::sqrt(scale));

    const Matrix inv = spd_inverse(s);
    CHECK(test::max_abs(s * inv - id) < 1e-9);

    const SymEigen e = sym_eigen(s);
    CHECK(test::max_abs(e.vectors.transpose() * e.vectors - id) < 1e-9);
    CHECK(test::max_abs(e.vectors * e.values.asDiagonal() * e.vectors.transpose() - s) <= 1e-8 * scale);
    for (Index i = 1; i < n; ++i) CHECK(e.values(i - 1) >= e.values(i));
    Eigen::SelfAdjointEigenSolver<Matrix> oracle(s);
    CHECK(test::max_abs(e.values - oracle.eigenvalues().reverse()) <= 1e-10 * scale);
    for (Index j = 0; j < n; ++j) {
      Index arg = 0;
      e.vectors.col(j).cwiseAbs().maxCoeff(&arg);
      CHECK(e.vectors(arg, j) > 0.0);
    }

    const Matrix r = spd_inv_sqrt(s);
    CHECK(test::max_abs(r * s * r - id) < 1e-8);
    CHECK(test::max_abs(r * r - inv) <= 1e-8 * test::max_abs(inv));

    CHECK_THAT(log_det_spd(s), WithinAbs(std::log(s.determinant()), 1e-9 * (1.0 + std::abs(std::log(s.determinant())))));
    CHECK(test::max_abs(lower_triangular_inverse(l) * l - id) < 1e-10);
  }
}

TEST_CASE("linear algebra is deterministic") {
  RandomStream rng(3, 3);
  const Matrix s = test::random_spd(6, rng);
  const SymEigen a = sym_eigen(s);
  const SymEigen b = sym_eigen(s);
  CHECK(a.values == b.values);
  CHECK(a.vectors == b.vectors);
}
