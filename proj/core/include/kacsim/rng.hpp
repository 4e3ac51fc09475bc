#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace kacsim {

/// Philox4x32-10 counter-based block generator (Salmon et al., SC'11).
/// Pure function of (counter, key); no hidden state.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) noexcept;
};

/// Deterministic random source addressed by (seed, stream_id).
///
/// The seed is the Philox key; the stream id occupies the upper half of the
/// 128-bit counter and the draw position the lower half, so two streams with
/// different ids never share a counter value. Replicate r of an experiment
/// uses stream_id = r.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  /// Number of 64-bit words consumed so far.
  std::uint64_t position() const noexcept { return position_; }

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 bits of resolution.
  double next_double() noexcept;
  /// Uniform on (0, 1]; safe to pass to log().
  double next_double_open_zero() noexcept;
  /// Uniform integer in [0, bound), bound > 0 (Lemire's method, unbiased).
  std::uint64_t next_below(std::uint64_t bound) noexcept;

  /// Child stream that is independent of this one and of every other
  /// (seed, stream_id) pair in practice. Does not advance this stream.
  RngStream substream(std::uint64_t tag) const noexcept;

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_index_ = 0;
  std::uint64_t position_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

/// Uniform real on [lo, hi). Throws std::invalid_argument unless lo < hi and
/// both are finite.
double uniform(RngStream& s, double lo, double hi);

/// Poisson count with the given mean. Inversion by sequential search below
/// mean 10, Hormann's PTRS transformed rejection above.
std::uint64_t poisson(RngStream& s, double mean);

bool bernoulli(RngStream& s, double p);

/// Standard normal via Box-Muller (one output per call).
double standard_normal(RngStream& s) noexcept;

/// Exponential with rate 1.
double standard_exponential(RngStream& s) noexcept;

/// Returns +1.0 or -1.0 with equal probability.
double random_sign(RngStream& s) noexcept;

/// Zero-based index pair with i != j, both in [0, n). With ordered=false the
/// result satisfies i < j and every unordered pair has probability 1/C(n,2);
/// with ordered=true every ordered pair has probability 1/(n(n-1)).
std::pair<std::size_t, std::size_t> random_pair(RngStream& s, std::size_t n, bool ordered);

/// m disjoint zero-based pairs drawn from [0, n) by a partial Fisher-Yates
/// shuffle. Throws std::invalid_argument if 2m > n.
std::vector<std::pair<std::size_t, std::size_t>> random_disjoint_pairs(RngStream& s, std::size_t n,
                                                                       std::size_t m);

/// In-place form used by hot loops: shuffles the first `count` slots of
/// `perm` uniformly from the remaining entries. `perm` may hold any
/// permutation; the selected prefix is uniform regardless.
void partial_shuffle(RngStream& s, std::span<std::uint32_t> perm, std::size_t count) noexcept;

}  // namespace kacsim
