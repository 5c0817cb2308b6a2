#pragma once

#include <array>
#include <cstdint>

namespace relunet {

/// Philox4x32-10 counter-based generator.
///
/// The 64-bit seed is the key; `stream` occupies the upper two counter words
/// and a block index the lower two, so (seed, stream) pairs give independent,
/// reproducible substreams without shared state.
class CounterRng {
 public:
  using Block = std::array<std::uint32_t, 4>;

  CounterRng(std::uint64_t seed, std::uint64_t stream);

  /// The raw bijection: ten Philox rounds of counter under key.
  static Block philox(Block counter, std::array<std::uint32_t, 2> key);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform double in [a, b].
  double uniform(double a, double b);

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Block buffer_{};
  int used_ = 4;
};

}  // namespace relunet
