#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>

#include <gtest/gtest.h>

#include "diamlaw/rng.hpp"

namespace diamlaw {
namespace {

// Known-answer vectors of the Random123 reference implementation.
TEST(Philox, KnownAnswers) {
  EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
            (PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                          {0xffffffff, 0xffffffff}),
            (PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                          {0xa4093822, 0x299f31d0}),
            (PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, EngineMatchesBlockFunction) {
  Philox rng({0x299f31d0a4093822ULL, 0x0370734413198a2eULL});
  const PhiloxKey key{0xa4093822, 0x299f31d0};
  for (std::uint32_t block = 0; block < 3; ++block) {
    const auto expected = philox4x32_10({block, 0, 0x13198a2e, 0x03707344}, key);
    for (auto word : expected) EXPECT_EQ(rng(), word);
  }
  EXPECT_EQ(rng.blocks_used(), 3u);
}

TEST(Philox, Reproducible) {
  Philox a({7, 11});
  Philox b({7, 11});
  for (int k = 0; k < 1000; ++k) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(Philox, UniformRanges) {
  Philox rng({1, 2});
  double lo = 1.0;
  double hi = 0.0;
  double sum = 0.0;
  constexpr int n = 1000000;
  for (int k = 0; k < n; ++k) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.uniform_pos();
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_LT(lo, 1e-5);
  EXPECT_GT(hi, 1 - 1e-5);
  EXPECT_NEAR(sum / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
  for (int k = 0; k < 1000; ++k) {
    const double x = rng.uniform(-3.0, 2.0);
    ASSERT_GE(x, -3.0);
    ASSERT_LT(x, 2.0);
  }
}

TEST(Philox, StreamsDiffer) {
  std::set<std::uint64_t> first;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    Philox rng({42, tagged_stream(StreamTag::test, s)});
    first.insert(rng.next_u64());
  }
  EXPECT_EQ(first.size(), 1000u);
  Philox x({42, 5});
  Philox y({43, 5});
  EXPECT_NE(x.next_u64(), y.next_u64());
}

TEST(Philox, TaggedStreamLayout) {
  EXPECT_EQ(tagged_stream(StreamTag::tail, 3), (std::uint64_t{4} << 48) | 3);
  EXPECT_NE(tagged_stream(StreamTag::poisson, 0), tagged_stream(StreamTag::limit, 0));
  // the local index cannot leak into the tag bits
  EXPECT_EQ(tagged_stream(StreamTag::sample, std::uint64_t{1} << 48),
            tagged_stream(StreamTag::sample, 0));
}

}  // namespace
}  // namespace diamlaw
