#pragma once

#include <cstdint>

#include "mcv/dataset.hpp"
#include "mcv/moments.hpp"
#include "mcv/rng.hpp"

namespace mcv::test {

inline Matrix random_matrix(Index rows, Index cols, RandomStream& rng) {
  Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) a(i, j) = rng.normal();
  }
  return a;
}

/// A A^T + 0.1 n Id: symmetric positive definite and reasonably conditioned.
inline Matrix random_spd(Index n, RandomStream& rng) {
  const Matrix a = random_matrix(n, n, rng);
  return a * a.transpose() + 0.1 * static_cast<double>(n) * Matrix::Identity(n, n);
}

/// Correlated Gaussian rows around a mean drawn from U[1, 4] per coordinate.
inline DataSet random_dataset(Index N, Index n, std::uint64_t seed) {
  RandomStream rng(seed, 0xABCDULL);
  const Matrix mix = random_matrix(n, n, rng) + 2.0 * Matrix::Identity(n, n);
  Vector mean(n);
  for (Index j = 0; j < n; ++j) mean(j) = rng.uniform(1.0, 4.0);
  Matrix x = random_matrix(N, n, rng) * mix.transpose();
  x.rowwise() += mean.transpose();
  return DataSet(std::move(x));
}

inline MomentSummary random_summary(Index n, RandomStream& rng) {
  Vector m(n);
  for (Index j = 0; j < n; ++j) m(j) = rng.uniform(-3.0, 3.0);
  return make_summary(std::move(m), random_spd(n, rng));
}

inline double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace mcv::test
