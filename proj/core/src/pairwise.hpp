#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mcv/types.hpp"

namespace mcv::detail {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Sum with a fixed binary tree over the index range.
double tree_sum(std::span<const double> values);

/// Calls body(i) for every i in [0, count), spreading indices round-robin over
/// `partitions` threads. body must only write state owned by index i.
void for_each_index(Index count, unsigned partitions, const std::function<void(Index)>& body);

/// Sum over unordered pairs i < j of kernel(row_i, row_j, dim) for the rows of z.
template <class Kernel>
double pairwise_upper_sum(const RowMajorMatrix& z, unsigned partitions, Kernel kernel) {
  const Index N = z.rows();
  const Index n = z.cols();
  std::vector<double> row_sums(static_cast<std::size_t>(N), 0.0);
  for_each_index(N, partitions, [&](Index i) {
    const double* zi = z.data() + i * n;
    double acc = 0.0;
    for (Index j = i + 1; j < N; ++j) acc += kernel(zi, z.data() + j * n, n);
    row_sums[static_cast<std::size_t>(i)] = acc;
  });
  return tree_sum(row_sums);
}

}  // namespace mcv::detail
