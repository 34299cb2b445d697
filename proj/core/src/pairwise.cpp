#include "pairwise.hpp"

#include <algorithm>
#include <thread>

namespace mcv::detail {

double tree_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return tree_sum(values.first(half)) + tree_sum(values.subspan(half));
}

void for_each_index(Index count, unsigned partitions, const std::function<void(Index)>& body) {
  const unsigned workers = std::max(1u, std::min<unsigned>(partitions, static_cast<unsigned>(count)));
  if (workers == 1) {
    for (Index i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (Index i = w; i < count; i += workers) body(i);
    });
  }
}

}  // namespace mcv::detail
