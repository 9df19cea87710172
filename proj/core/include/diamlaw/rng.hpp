#ifndef DIAMLAW_RNG_HPP
#define DIAMLAW_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>

namespace diamlaw {

/// Identifies one reproducible random substream.
///
/// The generator is Philox4x32-10 (Salmon et al., SC'11): the 64-bit master
/// seed is the key, and the 128-bit counter is (block index, stream index).
/// Distinct (master_seed, stream_index) pairs therefore address disjoint
/// counter ranges of a keyed bijection, and the raw 32-bit output sequence is
/// identical on every platform.  Floating values are derived with explicit
/// bit manipulation, never through std:: distributions.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  friend bool operator==(const RngStream&, const RngStream&) = default;
};

/// Stream indices are partitioned by a tag in the top 16 bits so that
/// experiments sharing a master seed never share a substream.
enum class StreamTag : std::uint16_t {
  sample = 1,
  diameter = 2,
  constant_mc = 3,
  tail = 4,
  overlap = 5,
  poisson = 6,
  limit = 7,
  exponent = 8,
  test = 0x7fff,
};

constexpr std::uint64_t tagged_stream(StreamTag tag, std::uint64_t local) noexcept {
  return (static_cast<std::uint64_t>(tag) << 48) | (local & ((std::uint64_t{1} << 48) - 1));
}

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// One Philox4x32 block with 10 rounds.
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept;

/// Sequential engine over one substream.  Satisfies
/// UniformRandomBitGenerator with 32-bit results.
class Philox {
 public:
  using result_type = std::uint32_t;

  explicit Philox(RngStream stream) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    if (pos_ == 4) refill();
    return buffer_[pos_++];
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t hi = (*this)();
    const std::uint64_t lo = (*this)();
    return (hi << 32) | lo;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1].
  double uniform_pos() noexcept { return 1.0 - uniform(); }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  const RngStream& stream() const noexcept { return stream_; }
  std::uint64_t blocks_used() const noexcept { return block_; }

 private:
  void refill() noexcept;

  RngStream stream_;
  PhiloxKey key_;
  std::uint64_t block_ = 0;
  PhiloxCounter buffer_{};
  int pos_ = 4;
};

}  // namespace diamlaw

#endif  // DIAMLAW_RNG_HPP
