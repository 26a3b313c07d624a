#include <gtest/gtest.h>

#include "slat/adversarial.hpp"
#include "slat/instances.hpp"

namespace slat {
namespace {

using Points = std::vector<std::uint32_t>;

TEST(Markers, SingletonsOfFreeSemilattice) {
  auto s = free_semilattice(6);
  auto markers = find_markers(s, {}, 3);
  ASSERT_EQ(markers.b.size(), 3u);
  for (std::uint32_t j = 0; j < 3; ++j) {
    EXPECT_EQ(s.member_set(markers.b[j]), Points{j});
    EXPECT_EQ(markers.gamma[j], j);
  }
}

TEST(Markers, AvoidTheGivenSet) {
  auto s = free_semilattice(6);
  Points a = {0, 1};
  auto markers = find_markers(s, a, 2);
  ASSERT_EQ(markers.gamma.size(), 2u);
  for (auto g : markers.gamma) {
    EXPECT_NE(g, 0u);
    EXPECT_NE(g, 1u);
  }
  EXPECT_NE(markers.gamma[0], markers.gamma[1]);
}

TEST(Markers, ChainHostHasInsufficientBreadth) {
  auto s = Semilattice::set_system(3, {{0}, {0, 1}, {0, 1, 2}});
  try {
    find_markers(s, {}, 2);
    FAIL() << "expected InsufficientBreadth";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientBreadth);
  }
}

TEST(Markers, TableHostIsKindMismatch) {
  try {
    find_markers(chain(3), {}, 1);
    FAIL() << "expected KindMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KindMismatch);
  }
}

TEST(BuildChain, ZeroLevelsRejected) {
  try {
    build_chain(free_semilattice(3), 0);
    FAIL() << "expected Usage";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Usage);
  }
}

TEST(BuildChain, BaseCase) {
  auto s = fin_truncation(6, 2);
  auto chain = build_chain(s, 1);
  EXPECT_EQ(chain.depth, 1u);
  EXPECT_EQ(chain.markers[0], Points{0});
  ASSERT_EQ(chain.families[0].size(), 1u);
  EXPECT_EQ(s.member_set(chain.families[0][0]), Points{0});
  EXPECT_TRUE(check_chain(s, chain).ok());
}

TEST(BuildChain, ThreeLevelsOnTwentyPoints) {
  auto s = fin_truncation(20, 6, false, Limits{});
  auto chain = build_chain(s, 3);
  ASSERT_EQ(chain.depth, 3u);
  EXPECT_FALSE(chain.truncated);
  EXPECT_EQ(chain.cumulative[3], (Points{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(chain.markers[1], (Points{1, 2}));
  EXPECT_EQ(chain.markers[2], (Points{3, 4, 5}));
  EXPECT_EQ(s.member_set(chain.families[1][0]), (Points{0, 1}));
  EXPECT_EQ(s.member_set(chain.families[2][2]), (Points{0, 1, 2, 5}));
  auto check = check_chain(s, chain);
  EXPECT_TRUE(check.ok()) << (check.failures.empty() ? "" : check.failures.front());
}

TEST(BuildChain, TruncatesWhenTheHostRunsOut) {
  auto s = fin_truncation(8, 4);
  auto chain = build_chain(s, 5);
  EXPECT_EQ(chain.depth, 3u);
  EXPECT_TRUE(chain.truncated);
  EXPECT_FALSE(chain.notice.empty());
  try {
    build_chain(s, 5, true);
    FAIL() << "expected InsufficientBreadth";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientBreadth);
  }
}

TEST(Eta, Examples) {
  auto s = fin_truncation(8, 4);
  auto chain = build_chain(s, 3);
  auto eta = eta_weight(chain, s);
  // Contains D_3 = {0..5}.
  auto full = *s.find_set(Points{0, 1, 2, 3, 4, 5, 7});
  EXPECT_EQ(eta.values[full], Rational(0));
  EXPECT_EQ(eta.level[full], 3u);
  // Disjoint from D_3.
  auto outside = *s.find_set(Points{6, 7});
  EXPECT_EQ(eta.values[outside], Rational(0));
  EXPECT_EQ(eta.level[outside], 0u);
  // F_1 = {D_1}; members of later F_n carry one marker beyond D_{n-1}.
  EXPECT_EQ(eta.values[chain.families[0][0]], Rational(0));
  for (std::size_t n = 2; n <= chain.depth; ++n) {
    for (ElementId x : chain.families[n - 1]) {
      EXPECT_EQ(eta.values[x], Rational(1));
      EXPECT_EQ(eta.level[x], n - 1);
    }
  }
  // {1, 3, 6}: N = 0, r = {1, 3}.
  EXPECT_EQ(eta.values[*s.find_set(Points{1, 3, 6})], Rational(2));
}

TEST(Eta, Subadditive) {
  auto s = fin_truncation(8, 4);
  auto chain = build_chain(s, 3);
  auto eta = eta_weight(chain, s);
  EXPECT_TRUE(validate_logweight(s, eta.values).ok());
  auto check = check_eta_subadditivity(chain, s, eta);
  EXPECT_TRUE(check.ok);
  EXPECT_TRUE(check.exhaustive);
  EXPECT_EQ(check.traces, 64u);
}

TEST(Barrier, EveryLevelPasses) {
  auto s = fin_truncation(8, 4);
  auto chain = build_chain(s, 3);
  auto eta = eta_weight(chain, s);
  for (std::size_t n = 2; n <= 3; ++n) {
    auto b = verify_barrier(chain, s, eta, n);
    EXPECT_TRUE(b.passed) << n;
    EXPECT_TRUE(b.family_in_w1);
    EXPECT_EQ(b.eta_z, Rational(0));
    ASSERT_FALSE(b.value.infinite);
    EXPECT_GE(b.value.c * 2, Rational(static_cast<std::int64_t>(n)));
  }
  EXPECT_THROW(verify_barrier(chain, s, eta, 1), Error);
  EXPECT_THROW(verify_barrier(chain, s, eta, 4), Error);
}

}  // namespace
}  // namespace slat
