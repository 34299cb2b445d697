#pragma once

#include <array>
#include <cstdint>

namespace mcv {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3"). Exposed for known-answer testing.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// Deterministic random stream keyed by (seed, stream id).
///
/// The seed is the Philox key and the stream id occupies the upper half of
/// the 128-bit counter, so distinct stream ids under one seed never share a
/// block. Output depends only on integer arithmetic and libm, not on the
/// standard library's distribution implementations.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller; deviates are produced in pairs.
  double normal() noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Packs a (tag, index) pair into a stream id.
constexpr std::uint64_t stream_id(std::uint32_t tag, std::uint32_t index) noexcept {
  return (static_cast<std::uint64_t>(tag) << 32) | index;
}

}  // namespace mcv
