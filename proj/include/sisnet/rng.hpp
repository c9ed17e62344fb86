#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace sisnet {

/// Philox4x32-10 counter-based generator.
///
/// The key is the 64-bit master seed; the upper half of the 128-bit counter
/// is the replication index, the lower half a block counter. Streams for
/// distinct replications therefore never overlap, and any replication can be
/// regenerated without replaying the others.
class Philox4x32 {
public:
  using result_type = std::uint64_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr std::string_view algorithm = "philox4x32-10";

  Philox4x32(std::uint64_t master_seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Raw bijection, exposed for known-answer tests.
  static Block encrypt(Block counter, Key key);

private:
  void refill();

  Key key_;
  Block counter_{};
  Block buffer_{};
  unsigned used_ = 4;  // 32-bit words consumed from buffer_
};

/// Uniform on the open interval (0, 1), 53-bit resolution.
double uniform_open01(Philox4x32& rng);
/// Exponential waiting time with the given positive rate.
double exponential(Philox4x32& rng, double rate);
/// Uniform integer in [0, n).
std::uint64_t uniform_index(Philox4x32& rng, std::uint64_t n);

}  // namespace sisnet
