#include <gtest/gtest.h>

#include "slat/breadth.hpp"
#include "slat/instances.hpp"
#include "slat/metrics.hpp"
#include "slat/propagation.hpp"
#include "slat/reference.hpp"

namespace slat {
namespace {

struct Prototype {
  explicit Prototype(std::size_t n) : s(prototype(n)), lambda(builtin_logweight(s, "prototype")) {
    singletons = SubsetMask(s.size());
    for (std::uint32_t p = 0; p < n; ++p) singletons.set(*s.find_set(std::vector<std::uint32_t>{p}));
    top = static_cast<ElementId>(s.size() - 1);
  }
  SubsetMask of_cardinality(std::size_t k) const {
    SubsetMask out(s.size());
    for (ElementId x = 0; x < s.size(); ++x) {
      if (s.cardinality(x) == k) out.set(x);
    }
    return out;
  }
  Semilattice s;
  LogWeight lambda;
  SubsetMask singletons;
  ElementId top;
};

TEST(Fbp, PrototypeSingletons) {
  Prototype p(4);
  EXPECT_EQ(fbp(p.s, p.lambda, Rational(1), p.singletons), p.singletons);
  EXPECT_EQ(fbp(p.s, p.lambda, Rational(2), p.singletons), p.singletons | p.of_cardinality(2));
  EXPECT_EQ(fbp(p.s, p.lambda, Rational(1), p.singletons), reference::fbp_naive(p.s, p.lambda, Rational(1), p.singletons));
  EXPECT_EQ(fbp(p.s, p.lambda, Rational(2), p.singletons), reference::fbp_naive(p.s, p.lambda, Rational(2), p.singletons));
}

TEST(Fbp, EmptyAndAboveLevel) {
  Prototype p(3);
  EXPECT_TRUE(fbp(p.s, p.lambda, Rational(5), SubsetMask(p.s.size())).none());
  EXPECT_TRUE(fbp(p.s, p.lambda, Rational(1, 2), p.singletons).none());
}

TEST(FbpClosure, PrototypeReachesTopAtTwo) {
  Prototype p(4);
  auto closed = fbp_closure(p.s, p.lambda, Rational(2), p.singletons);
  auto expected = p.singletons | p.of_cardinality(2);
  expected.set(p.top);
  EXPECT_EQ(closed.set, expected);
  EXPECT_EQ(closed.iterations, 2u);
  EXPECT_EQ(closed.set, reference::closure_naive(p.s, p.lambda, Rational(2), p.singletons));
}

TEST(FbpClosure, Empty) {
  Prototype p(3);
  auto closed = fbp_closure(p.s, p.lambda, Rational(3), SubsetMask(p.s.size()));
  EXPECT_TRUE(closed.set.none());
  EXPECT_EQ(closed.iterations, 0u);
}

TEST(FbpClosure, LargeLevelGivesGeneratedFilter) {
  auto s = free_semilattice(4);
  auto lambda = builtin_logweight(s, "cardinality");
  for (ElementId a = 0; a < s.size(); ++a) {
    for (ElementId b = 0; b < s.size(); ++b) {
      SubsetMask e(s.size());
      e.set(a);
      e.set(b);
      EXPECT_EQ(fbp_closure(s, lambda, Rational(100), e).set, generate_filter(s, e));
    }
  }
}

TEST(FbpClosure, SandwichAndMonotone) {
  auto s = kary_tree(2, 2);
  LogWeight lambda = {Rational(0), Rational(1), Rational(2), Rational(1), Rational(2), Rational(2), Rational(3)};
  ASSERT_TRUE(validate_logweight(s, lambda).ok());
  for (std::uint32_t bits = 1; bits < (1u << s.size()); ++bits) {
    SubsetMask e(s.size(), bits);
    SubsetMask previous(s.size());
    for (int c = 0; c <= 3; ++c) {
      auto closed = fbp_closure(s, lambda, Rational(c), e).set;
      auto w = level_set(lambda, Rational(c));
      EXPECT_TRUE((e & w).is_subset_of(closed));
      EXPECT_TRUE(closed.is_subset_of(generate_filter(s, e) & w));
      EXPECT_TRUE(previous.is_subset_of(closed));
      previous = closed;
    }
  }
}

TEST(Stability, Examples) {
  Prototype p(4);
  EXPECT_TRUE(is_fbp_stable(p.s, p.lambda, Rational(1), p.singletons));
  EXPECT_FALSE(is_fbp_stable(p.s, p.lambda, Rational(2), p.singletons));
  for (const auto& f : enumerate_filters(p.s)) {
    for (int c = 0; c <= 4; ++c) EXPECT_TRUE(is_fbp_stable(p.s, p.lambda, Rational(c), f));
  }
}

TEST(VValue, PrototypeTopNeedsHalfTheGround) {
  Prototype p(4);
  EXPECT_EQ(v_value(p.s, p.lambda, p.singletons, p.top), PropagationValue::finite(Rational(2)));
}

TEST(VValue, MemberAndOutsideFilter) {
  Prototype p(4);
  auto pair = *p.s.find_set(std::vector<std::uint32_t>{0, 1});
  SubsetMask e(p.s.size());
  e.set(pair);
  EXPECT_EQ(v_value(p.s, p.lambda, e, pair), PropagationValue::finite(Rational(2)));
  auto single = *p.s.find_set(std::vector<std::uint32_t>{2});
  EXPECT_TRUE(v_value(p.s, p.lambda, e, single).infinite);
  EXPECT_TRUE(v_value(p.s, p.lambda, SubsetMask(p.s.size()), single).infinite);
}

TEST(VValue, MatchesDenseScan) {
  for (std::size_t n = 2; n <= 6; ++n) {
    Prototype p(n);
    auto exact = v_value(p.s, p.lambda, p.singletons, p.top);
    auto dense = reference::v_value_dense(p.s, p.lambda, p.singletons, p.top);
    EXPECT_EQ(exact, dense) << n;
    EXPECT_EQ(exact, PropagationValue::finite(Rational(static_cast<std::int64_t>((n + 1) / 2)))) << n;
  }
}

TEST(Profile, ZeroWeightChainIsZero) {
  auto s = chain(3);
  LogWeight lambda(3, Rational(0));
  auto profile = propagation_profile(s, lambda, Rational(0));
  EXPECT_TRUE(profile.exhaustive);
  EXPECT_EQ(profile.value, PropagationValue::finite(Rational(0)));
}

TEST(Profile, PrototypeFour) {
  Prototype p(4);
  auto profile = propagation_profile(p.s, p.lambda, Rational(1));
  EXPECT_TRUE(profile.exhaustive);
  EXPECT_EQ(profile.value, PropagationValue::finite(Rational(2)));
  ASSERT_TRUE(profile.witness_z);
  EXPECT_EQ(*profile.witness_z, p.top);
  auto witness = mask_from_ids(p.s.size(), profile.witness_e);
  EXPECT_EQ(v_value(p.s, p.lambda, witness, *profile.witness_z), profile.value);
}

TEST(Profile, PrototypeSixAtLeastThree) {
  Prototype p(6);
  auto profile = propagation_profile(p.s, p.lambda, Rational(1));
  ASSERT_FALSE(profile.value.infinite);
  EXPECT_GE(profile.value.c, Rational(3));
}

TEST(Profile, FreeThreeCardinalityMatchesBruteForce) {
  auto s = free_semilattice(3);
  auto lambda = builtin_logweight(s, "cardinality");
  for (int l = 1; l <= 3; ++l) {
    auto profile = propagation_profile(s, lambda, Rational(l));
    ASSERT_FALSE(profile.value.infinite);
    EXPECT_EQ(profile.value.c, reference::profile_bruteforce(s, lambda, Rational(l))) << l;
    EXPECT_LE(profile.value.c, Rational(3 * l));
  }
}

TEST(Profile, FinTruncationWithinSquareBound) {
  auto s = fin_truncation(4, 2);
  auto lambda = builtin_logweight(s, "cardinality");
  for (int l = 1; l <= 3; ++l) {
    auto profile = propagation_profile(s, lambda, Rational(l));
    ASSERT_TRUE(profile.exhaustive);
    ASSERT_FALSE(profile.value.infinite);
    EXPECT_LE(profile.value.c, Rational(l * l));
    EXPECT_EQ(profile.value.c, Rational(l));
  }
}

TEST(Profile, StrictModeRaisesBudgetExceeded) {
  Prototype p(6);
  SearchOptions options;
  options.budget = 1;
  options.strict = true;
  try {
    propagation_profile(p.s, p.lambda, Rational(1), options);
    FAIL() << "expected BudgetExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
  options.strict = false;
  auto sampled = propagation_profile(p.s, p.lambda, Rational(1), options);
  EXPECT_FALSE(sampled.exhaustive);
}

TEST(Equivalence, PrototypeFourBelowAndAtProfile) {
  Prototype p(4);
  auto below = check_equivalence_iii(p.s, p.lambda, Rational(1), Rational(1));
  EXPECT_GE(below.violations, 1u);
  auto at = check_equivalence_iii(p.s, p.lambda, Rational(1), Rational(2));
  EXPECT_EQ(at.violations, 0u);
  EXPECT_TRUE(at.exhaustive);
  EXPECT_EQ(reference::equivalence_violations_bruteforce(p.s, p.lambda, Rational(1), Rational(2)), 0u);
}

TEST(Equivalence, ZeroWeightAtZero) {
  for (const auto& s : {chain(4), kary_tree(2, 2), powerset(3)}) {
    LogWeight lambda(s.size(), Rational(0));
    EXPECT_EQ(check_equivalence_iii(s, lambda, Rational(0), Rational(0)).violations, 0u);
  }
}

TEST(BreadthBound, ChainTreeAndFree) {
  struct Case {
    Semilattice s;
    std::size_t breadth;
  };
  std::vector<Case> cases;
  cases.push_back({chain(5), 1});
  cases.push_back({kary_tree(2, 2), 2});
  cases.push_back({free_semilattice(3), 3});
  for (const auto& c : cases) {
    LogWeight lambda = c.s.kind() == Kind::SetSystem ? builtin_logweight(c.s, "cardinality")
                                                     : LogWeight(c.s.size(), Rational(1));
    for (int l = 1; l <= 2; ++l) {
      auto report = finite_breadth_bound_check(c.s, lambda, Rational(l), c.breadth);
      EXPECT_TRUE(report.ok);
      EXPECT_EQ(report.breadth, c.breadth);
    }
  }
}

}  // namespace
}  // namespace slat
