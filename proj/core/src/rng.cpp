#include "kacsim/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kacsim {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

__extension__ using uint128 = unsigned __int128;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) noexcept {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_id_(stream_id) {}

void RngStream::refill() noexcept {
  const Philox4x32::Counter ctr{static_cast<std::uint32_t>(block_index_),
                                static_cast<std::uint32_t>(block_index_ >> 32),
                                static_cast<std::uint32_t>(stream_id_),
                                static_cast<std::uint32_t>(stream_id_ >> 32)};
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
  const auto out = Philox4x32::block(ctr, key);
  buffer_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  buffer_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
  buffered_ = 2;
  ++block_index_;
}

std::uint64_t RngStream::next_u64() noexcept {
  if (buffered_ == 0) refill();
  ++position_;
  return buffer_[2 - buffered_--];
}

double RngStream::next_double() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_double_open_zero() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

std::uint64_t RngStream::next_below(std::uint64_t bound) noexcept {
  std::uint64_t x = next_u64();
  auto m = static_cast<uint128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<uint128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

RngStream RngStream::substream(std::uint64_t tag) const noexcept {
  return RngStream(seed_, splitmix64(stream_id_ ^ splitmix64(tag ^ 0xA5A5A5A55A5A5A5Aull)));
}

double uniform(RngStream& s, double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw std::invalid_argument("uniform: require finite lo < hi");
  }
  const double x = lo + (hi - lo) * s.next_double();
  // Rounding can land exactly on hi when the interval is wide.
  return x < hi ? x : std::nextafter(hi, lo);
}

double standard_exponential(RngStream& s) noexcept { return -std::log(s.next_double_open_zero()); }

double standard_normal(RngStream& s) noexcept {
  const double radius = std::sqrt(2.0 * standard_exponential(s));
  return radius * std::cos(2.0 * std::numbers::pi * s.next_double());
}

double random_sign(RngStream& s) noexcept { return (s.next_u64() >> 63) ? -1.0 : 1.0; }

bool bernoulli(RngStream& s, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli: p must lie in [0, 1]");
  if (p == 0.0) return false;
  if (p == 1.0) return true;
  return s.next_double() < p;
}

namespace {

std::uint64_t poisson_inversion(RngStream& s, double mean) {
  const double u = s.next_double();
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  while (u >= cdf) {
    ++k;
    p *= mean / static_cast<double>(k);
    const double next = cdf + p;
    if (next == cdf) break;  // tail exhausted in double precision
    cdf = next;
  }
  return k;
}

// Hormann (1993), "The transformed rejection method for generating Poisson
// random variables", algorithm PTRS.
std::uint64_t poisson_ptrs(RngStream& s, double mean) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = s.next_double() - 0.5;
    const double v = s.next_double();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace

std::uint64_t poisson(RngStream& s, double mean) {
  if (!std::isfinite(mean) || mean < 0.0) throw std::invalid_argument("poisson: mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  return mean < 10.0 ? poisson_inversion(s, mean) : poisson_ptrs(s, mean);
}

std::pair<std::size_t, std::size_t> random_pair(RngStream& s, std::size_t n, bool ordered) {
  if (n < 2) throw std::invalid_argument("random_pair: n must be >= 2");
  const auto i = static_cast<std::size_t>(s.next_below(n));
  auto j = static_cast<std::size_t>(s.next_below(n - 1));
  if (j >= i) ++j;
  if (!ordered && j < i) return {j, i};
  return {i, j};
}

void partial_shuffle(RngStream& s, std::span<std::uint32_t> perm, std::size_t count) noexcept {
  const std::size_t n = perm.size();
  for (std::size_t k = 0; k < count; ++k) {
    const auto pick = k + static_cast<std::size_t>(s.next_below(n - k));
    std::swap(perm[k], perm[pick]);
  }
}

std::vector<std::pair<std::size_t, std::size_t>> random_disjoint_pairs(RngStream& s, std::size_t n,
                                                                       std::size_t m) {
  if (2 * m > n) throw std::invalid_argument("random_disjoint_pairs: 2m exceeds n");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (m == 0) return pairs;
  std::vector<std::uint32_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);
  partial_shuffle(s, perm, 2 * m);
  pairs.reserve(m);
  for (std::size_t k = 0; k < m; ++k) pairs.emplace_back(perm[2 * k], perm[2 * k + 1]);
  return pairs;
}

}  // namespace kacsim
