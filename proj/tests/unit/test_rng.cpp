#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>

#include "kacsim/rng.hpp"

using kacsim::Philox4x32;
using kacsim::RngStream;

namespace {

struct Moments {
  double mean;
  double variance;
};

template <typename Draw>
Moments moments(std::size_t n, Draw&& draw) {
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = draw();
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / static_cast<double>(n);
  return {mean, (sum2 - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1)};
}

}  // namespace

// Known-answer vectors published with the Random123 reference implementation.
TEST(Philox, KnownAnswerZero) {
  const auto out = Philox4x32::block({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out, (Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi) {
  const auto out = Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out, (Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(RngStream, ReplayIsBitExact) {
  RngStream a(42, 0), b(42, 0);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
  RngStream c(42, 0), d(42, 0);
  const double x = kacsim::uniform(c, 0.0, 1.0);
  const double y = kacsim::uniform(d, 0.0, 1.0);
  EXPECT_EQ(std::bit_cast<std::uint64_t>(x), std::bit_cast<std::uint64_t>(y));
}

TEST(RngStream, CopiesReplayFromTheirPosition) {
  RngStream a(7, 3);
  for (int i = 0; i < 5; ++i) a.next_u64();
  RngStream b = a;
  EXPECT_EQ(a.position(), 5u);
  for (int i = 0; i < 10; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngStream, DistinctStreamsAndSeedsDiffer) {
  RngStream a(1, 0), b(1, 1), c(2, 0);
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    same_ab += x == b.next_u64();
    same_ac += x == c.next_u64();
  }
  EXPECT_EQ(same_ab, 0);
  EXPECT_EQ(same_ac, 0);
}

TEST(RngStream, NeighbouringStreamsAreUncorrelated) {
  RngStream a(9, 100), b(9, 101);
  const std::size_t n = 200000;
  double sab = 0.0;
  for (std::size_t i = 0; i < n; ++i) sab += (a.next_double() - 0.5) * (b.next_double() - 0.5);
  // Correlation of two independent uniforms: sd of the estimator is 1/sqrt(n).
  const double corr = sab / static_cast<double>(n) * 12.0;
  EXPECT_LT(std::fabs(corr), 5.0 / std::sqrt(static_cast<double>(n)));
}

TEST(RngStream, SubstreamDoesNotAdvanceParent) {
  RngStream a(5, 0), b(5, 0);
  auto child = a.substream(17);
  EXPECT_EQ(a.next_u64(), b.next_u64());
  EXPECT_NE(child.stream_id(), a.stream_id());
  EXPECT_NE(a.substream(17).stream_id(), a.substream(18).stream_id());
  EXPECT_EQ(a.substream(17).stream_id(), child.stream_id());
}

TEST(RngStream, NextDoubleRanges) {
  RngStream s(3, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = s.next_double();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double w = s.next_double_open_zero();
    ASSERT_GT(w, 0.0);
    ASSERT_LE(w, 1.0);
  }
}

TEST(RngStream, NextBelowIsUniform) {
  RngStream s(11, 0);
  const std::uint64_t bound = 7;
  const std::size_t n = 700000;
  std::array<std::size_t, 7> counts{};
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = s.next_below(bound);
    ASSERT_LT(k, bound);
    ++counts[k];
  }
  double chi2 = 0.0;
  const double expected = static_cast<double>(n) / bound;
  for (auto c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 22.46);  // chi-square(6) at p = 0.001
}

TEST(RngStream, NextBelowHugeBound) {
  RngStream s(11, 1);
  const std::uint64_t bound = (std::uint64_t{1} << 63) + 12345;
  int upper = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto k = s.next_below(bound);
    ASSERT_LT(k, bound);
    upper += k >= bound / 2;
  }
  EXPECT_NEAR(upper, 5000, 300);
}

TEST(Uniform, RangeContract) {
  RngStream s(1, 0);
  for (int i = 0; i < 100000; ++i) {
    const double x = kacsim::uniform(s, 0.0, 2.0 * std::numbers::pi);
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 2.0 * std::numbers::pi);
  }
}

TEST(Uniform, MeanOfUnitInterval) {
  RngStream s(2, 0);
  const auto m = moments(1000000, [&] { return kacsim::uniform(s, 0.0, 1.0); });
  EXPECT_NEAR(m.mean, 0.5, 0.002);
}

TEST(Uniform, RejectsBadBounds) {
  RngStream s(1, 0);
  EXPECT_THROW(kacsim::uniform(s, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(kacsim::uniform(s, 2.0, 1.0), std::invalid_argument);
  EXPECT_THROW(kacsim::uniform(s, 0.0, std::numeric_limits<double>::infinity()), std::invalid_argument);
  EXPECT_THROW(kacsim::uniform(s, std::nan(""), 1.0), std::invalid_argument);
}

TEST(Poisson, ZeroMean) {
  RngStream s(1, 0);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(kacsim::poisson(s, 0.0), 0u);
}

TEST(Poisson, MeanSqrtPi) {
  RngStream s(4, 0);
  const double mean = std::sqrt(std::numbers::pi);
  const auto m = moments(1000000, [&] { return static_cast<double>(kacsim::poisson(s, mean)); });
  EXPECT_NEAR(m.mean, 1.77245, 0.01);
}

TEST(Poisson, VarianceFour) {
  RngStream s(5, 0);
  const auto m = moments(1000000, [&] { return static_cast<double>(kacsim::poisson(s, 4.0)); });
  EXPECT_NEAR(m.variance, 4.0, 0.05);
}

class PoissonMoments : public ::testing::TestWithParam<double> {};

// 5-sigma bounds on 10^6 draws. sd(mean) = sqrt(mu/n); sd(var) ~ sqrt((mu + 2 mu^2) / n).
TEST_P(PoissonMoments, MatchParameter) {
  const double mu = GetParam();
  RngStream s(6, static_cast<std::uint64_t>(mu * 1000));
  const std::size_t n = 1000000;
  const auto m = moments(n, [&] { return static_cast<double>(kacsim::poisson(s, mu)); });
  EXPECT_NEAR(m.mean, mu, 5.0 * std::sqrt(mu / n));
  EXPECT_NEAR(m.variance, mu, 5.0 * std::sqrt((mu + 2.0 * mu * mu) / n));
}

INSTANTIATE_TEST_SUITE_P(AcrossRegimes, PoissonMoments, ::testing::Values(0.3, 3.0, 9.99, 10.0, 17.7, 88.6, 1000.0));

TEST(Poisson, PtrsPmfMatches) {
  // Chi-square against the exact pmf at a PTRS-regime mean.
  RngStream s(8, 0);
  const double mu = 25.0;
  const std::size_t n = 500000;
  std::map<std::uint64_t, std::size_t> counts;
  for (std::size_t i = 0; i < n; ++i) ++counts[kacsim::poisson(s, mu)];
  double chi2 = 0.0;
  int cells = 0;
  for (std::uint64_t k = 12; k <= 40; ++k) {
    const double p = std::exp(-mu + k * std::log(mu) - std::lgamma(k + 1.0));
    const double e = p * n;
    const double c = static_cast<double>(counts[k]);
    chi2 += (c - e) * (c - e) / e;
    ++cells;
  }
  EXPECT_LT(chi2, cells + 5.0 * std::sqrt(2.0 * cells));
}

TEST(Poisson, RejectsBadMean) {
  RngStream s(1, 0);
  EXPECT_THROW(kacsim::poisson(s, -1.0), std::invalid_argument);
  EXPECT_THROW(kacsim::poisson(s, std::numeric_limits<double>::infinity()), std::invalid_argument);
  EXPECT_THROW(kacsim::poisson(s, std::nan("")), std::invalid_argument);
}

TEST(Bernoulli, Degenerate) {
  RngStream s(1, 0);
  for (int i = 0; i < 100; ++i) {
    EXPECT_FALSE(kacsim::bernoulli(s, 0.0));
    EXPECT_TRUE(kacsim::bernoulli(s, 1.0));
  }
}

TEST(Bernoulli, Frequency) {
  RngStream s(12, 0);
  const auto m = moments(1000000, [&] { return kacsim::bernoulli(s, 0.3) ? 1.0 : 0.0; });
  EXPECT_NEAR(m.mean, 0.3, 0.002);
}

TEST(Bernoulli, RejectsOutOfRange) {
  RngStream s(1, 0);
  EXPECT_THROW(kacsim::bernoulli(s, -0.1), std::invalid_argument);
  EXPECT_THROW(kacsim::bernoulli(s, 1.1), std::invalid_argument);
  EXPECT_THROW(kacsim::bernoulli(s, std::nan("")), std::invalid_argument);
}

TEST(Normal, Moments) {
  RngStream s(13, 0);
  const auto m = moments(1000000, [&] { return kacsim::standard_normal(s); });
  EXPECT_NEAR(m.mean, 0.0, 0.005);
  EXPECT_NEAR(m.variance, 1.0, 0.005);
}

TEST(Exponential, Moments) {
  RngStream s(14, 0);
  const auto m = moments(1000000, [&] { return kacsim::standard_exponential(s); });
  EXPECT_NEAR(m.mean, 1.0, 0.005);
  EXPECT_NEAR(m.variance, 1.0, 0.015);
}

TEST(RandomPair, TwoParticlesOnlyOnePair) {
  RngStream s(1, 0);
  for (int i = 0; i < 100; ++i) {
    const auto [a, b] = kacsim::random_pair(s, 2, false);
    EXPECT_EQ(a, 0u);
    EXPECT_EQ(b, 1u);
  }
}

TEST(RandomPair, UnorderedUniformOverTenPairs) {
  RngStream s(15, 0);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> counts;
  const std::size_t n = 1000000;
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = kacsim::random_pair(s, 5, false);
    ASSERT_LT(p.first, p.second);
    ASSERT_LT(p.second, 5u);
    ++counts[p];
  }
  ASSERT_EQ(counts.size(), 10u);
  for (const auto& [pair, c] : counts) EXPECT_NEAR(static_cast<double>(c) / n, 0.1, 0.005);
}

TEST(RandomPair, OrderedUniform) {
  RngStream s(16, 0);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> counts;
  const std::size_t n = 600000;
  for (std::size_t i = 0; i < n; ++i) ++counts[kacsim::random_pair(s, 3, true)];
  ASSERT_EQ(counts.size(), 6u);
  for (const auto& [pair, c] : counts) {
    EXPECT_NE(pair.first, pair.second);
    EXPECT_NEAR(static_cast<double>(c) / n, 1.0 / 6.0, 0.005);
  }
  EXPECT_GT(counts[std::make_pair(std::size_t{1}, std::size_t{0})], 0u);
  EXPECT_GT(counts[std::make_pair(std::size_t{0}, std::size_t{1})], 0u);
}

TEST(RandomPair, RejectsSmallN) {
  RngStream s(1, 0);
  EXPECT_THROW(kacsim::random_pair(s, 1, false), std::invalid_argument);
  EXPECT_THROW(kacsim::random_pair(s, 0, true), std::invalid_argument);
}

TEST(DisjointPairs, PerfectMatchingsOfFourAreUniform) {
  RngStream s(17, 0);
  std::map<std::set<std::pair<std::size_t, std::size_t>>, std::size_t> counts;
  const std::size_t n = 100000;
  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::pair<std::size_t, std::size_t>> matching;
    for (auto [a, b] : kacsim::random_disjoint_pairs(s, 4, 2)) matching.insert({std::min(a, b), std::max(a, b)});
    ++counts[matching];
  }
  ASSERT_EQ(counts.size(), 3u);
  for (const auto& [m, c] : counts) EXPECT_NEAR(static_cast<double>(c) / n, 1.0 / 3.0, 0.01);
}

TEST(DisjointPairs, EmptyWhenMZero) {
  RngStream s(1, 0);
  EXPECT_TRUE(kacsim::random_disjoint_pairs(s, 10, 0).empty());
}

TEST(DisjointPairs, FullMatchingUsesEveryIndexOnce) {
  RngStream s(18, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const auto pairs = kacsim::random_disjoint_pairs(s, 100, 50);
    ASSERT_EQ(pairs.size(), 50u);
    std::vector<int> seen(100, 0);
    for (auto [a, b] : pairs) {
      ++seen[a];
      ++seen[b];
    }
    for (int c : seen) ASSERT_EQ(c, 1);
  }
}

TEST(DisjointPairs, NeverRepeatsAnIndex) {
  RngStream s(19, 0);
  for (int rep = 0; rep < 1000; ++rep) {
    const auto pairs = kacsim::random_disjoint_pairs(s, 37, 11);
    std::set<std::size_t> seen;
    for (auto [a, b] : pairs) {
      ASSERT_TRUE(seen.insert(a).second);
      ASSERT_TRUE(seen.insert(b).second);
    }
  }
}

TEST(DisjointPairs, RelabelingInvariant) {
  // Each index is selected with probability 2m/n.
  RngStream s(20, 0);
  const std::size_t n = 10, m = 3, reps = 200000;
  std::vector<std::size_t> hits(n, 0);
  for (std::size_t r = 0; r < reps; ++r)
    for (auto [a, b] : kacsim::random_disjoint_pairs(s, n, m)) ++hits[a], ++hits[b];
  for (auto h : hits) EXPECT_NEAR(static_cast<double>(h) / reps, 0.6, 0.005);
}

TEST(DisjointPairs, RejectsTooManyPairs) {
  RngStream s(1, 0);
  EXPECT_THROW(kacsim::random_disjoint_pairs(s, 5, 3), std::invalid_argument);
}

TEST(PartialShuffle, PrefixUniformFromAnyStartingPermutation) {
  RngStream s(21, 0);
  std::vector<std::uint32_t> perm{4, 2, 0, 3, 1};
  std::array<std::size_t, 5> first{};
  const std::size_t reps = 500000;
  for (std::size_t r = 0; r < reps; ++r) {
    kacsim::partial_shuffle(s, perm, 2);
    ++first[perm[0]];
  }
  for (auto c : first) EXPECT_NEAR(static_cast<double>(c) / reps, 0.2, 0.004);
}
