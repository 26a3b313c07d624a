#include <gtest/gtest.h>

#include <set>

#include "slat/instances.hpp"
#include "slat/semilattice.hpp"

namespace slat {
namespace {

std::vector<ElementId> ids(std::initializer_list<ElementId> list) { return list; }

TEST(Chain, ProductIsMinimum) {
  auto s = chain(3);
  EXPECT_EQ(s.kind(), Kind::Table);
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.product(1, 2), 1u);
  EXPECT_EQ(s.product(0, 1), 0u);
  EXPECT_EQ(s.product(2, 2), 2u);
  EXPECT_TRUE(s.leq(0, 2));
  EXPECT_FALSE(s.leq(2, 0));
  ASSERT_TRUE(s.identity());
  EXPECT_EQ(*s.identity(), 2u);
  EXPECT_TRUE(validate(s).ok());
}

TEST(Chain, UpSetIsPrincipalFilter) {
  auto s = chain(4);
  auto up = s.up_set(1);
  EXPECT_EQ(ids_from_mask(up), ids({1, 2, 3}));
}

TEST(Validate, ReportsNonAssociativeTable) {
  // Commutative and idempotent, but (1·2)·0 = 0 while 1·(2·0) = 1.
  std::vector<ElementId> product = {0, 0, 1,  //
                                    0, 1, 0,  //
                                    1, 0, 2};
  auto s = Semilattice::table(3, product);
  auto report = validate(s);
  EXPECT_FALSE(report.ok());
  bool associative_violation = false;
  for (const auto& v : report.violations) associative_violation |= v.kind == ViolationKind::NotAssociative;
  EXPECT_TRUE(associative_violation);
}

TEST(Validate, ReportsNonCommutativeAndNonIdempotent) {
  std::vector<ElementId> product = {1, 0,  //
                                    1, 1};
  auto report = validate(Semilattice::table(2, product));
  std::set<ViolationKind> kinds;
  for (const auto& v : report.violations) kinds.insert(v.kind);
  EXPECT_TRUE(kinds.count(ViolationKind::NotIdempotent));
  EXPECT_TRUE(kinds.count(ViolationKind::NotCommutative));
}

TEST(Table, RejectsOutOfRangeEntries) {
  EXPECT_THROW(Semilattice::table(2, {0, 0, 0, 5}), Error);
  EXPECT_THROW(Semilattice::table(2, {0, 0, 0}), Error);
}

TEST(Table, RespectsSizeCap) {
  Limits limits;
  limits.max_table = 4;
  try {
    chain(5, limits);
    FAIL() << "expected SizeLimit";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SizeLimit);
  }
}

TEST(SetSystem, CanonicalOrderByCardinalityThenLexicographic) {
  std::vector<ElementId> mapping;
  auto s = Semilattice::set_system(3, {{0, 1, 2}, {1, 2}, {0, 2}, {0, 1}, {2}, {1}, {0}, {}}, {}, {}, &mapping);
  ASSERT_EQ(s.size(), 8u);
  EXPECT_EQ(s.member_set(0), std::vector<std::uint32_t>{});
  EXPECT_EQ(s.member_set(1), std::vector<std::uint32_t>{0});
  EXPECT_EQ(s.member_set(3), std::vector<std::uint32_t>{2});
  EXPECT_EQ(s.member_set(4), (std::vector<std::uint32_t>{0, 1}));
  EXPECT_EQ(s.member_set(5), (std::vector<std::uint32_t>{0, 2}));
  EXPECT_EQ(s.member_set(6), (std::vector<std::uint32_t>{1, 2}));
  EXPECT_EQ(s.member_set(7), (std::vector<std::uint32_t>{0, 1, 2}));
  EXPECT_EQ(mapping, ids({7, 6, 5, 4, 3, 2, 1, 0}));
  EXPECT_EQ(s, powerset(3));
}

TEST(SetSystem, ProductIsUnionAndOrderIsReverseInclusion) {
  auto s = powerset(3);
  auto a = *s.find_set(std::vector<std::uint32_t>{0});
  auto b = *s.find_set(std::vector<std::uint32_t>{1});
  auto ab = *s.find_set(std::vector<std::uint32_t>{0, 1});
  EXPECT_EQ(s.product(a, b), ab);
  EXPECT_TRUE(s.leq(ab, a));
  EXPECT_FALSE(s.leq(a, ab));
  EXPECT_EQ(*s.identity(), *s.find_set(std::vector<std::uint32_t>{}));
  EXPECT_EQ(s.label(ab), "{0,1}");
}

TEST(SetSystem, RejectsDuplicates) {
  try {
    Semilattice::set_system(2, {{0}, {1}, {0}, {0, 1}});
    FAIL() << "expected InvalidInstance";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInstance);
  }
}

TEST(SetSystem, MissingUnionIsReportedAndThrowsOnProduct) {
  auto s = Semilattice::set_system(2, {{0}, {1}});
  auto report = validate(s);
  EXPECT_EQ(report.total, 1u);
  EXPECT_EQ(report.violations.front().kind, ViolationKind::NotUnionClosed);
  EXPECT_FALSE(s.try_product(0, 1));
  EXPECT_THROW(s.product(0, 1), Error);
}

TEST(SetSystem, LabelsFollowTheirSets) {
  std::vector<ElementId> mapping;
  auto s = Semilattice::set_system(2, {{0, 1}, {0}}, {"a", "b"}, {"top", "low"}, &mapping);
  EXPECT_EQ(s.label(mapping[0]), "top");
  EXPECT_EQ(s.label(mapping[1]), "low");
  EXPECT_EQ(s.ground_label(1), "b");
}

TEST(SetSystem, KindMismatchOnTableAccessors) {
  auto s = chain(2);
  try {
    s.ground_size();
    FAIL() << "expected KindMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KindMismatch);
  }
}

TEST(UnionClosure, AddsMissingUnions) {
  auto closed = union_closure(3, {{0}, {1}, {2}}, 100);
  EXPECT_EQ(closed.size(), 7u);
  auto s = Semilattice::set_system(3, closed);
  EXPECT_TRUE(validate(s).ok());
  EXPECT_EQ(s, free_semilattice(3));
}

TEST(Conversion, TableAndSetSystemRoundTrip) {
  auto s = powerset(3);
  auto t = to_table(s);
  EXPECT_EQ(t.kind(), Kind::Table);
  for (ElementId x = 0; x < s.size(); ++x) {
    for (ElementId y = 0; y < s.size(); ++y) EXPECT_EQ(t.product(x, y), s.product(x, y));
  }
  auto back = to_set_system(t);
  EXPECT_EQ(back.kind(), Kind::SetSystem);
  EXPECT_TRUE(validate(back).ok());
  EXPECT_EQ(back.size(), s.size());
}

TEST(SchEmbedding, ComplementImageIsUnionClosedHomomorphism) {
  for (const auto& s : {chain(4), kary_tree(2, 2), to_table(free_semilattice(3))}) {
    auto e = sch_embed(s);
    EXPECT_TRUE(e.homomorphism_verified);
    EXPECT_EQ(e.convention, "complement");
    EXPECT_TRUE(validate(e.system).ok());
    for (ElementId x = 0; x < s.size(); ++x) {
      for (ElementId y = 0; y < s.size(); ++y) {
        EXPECT_EQ(e.image[s.product(x, y)], e.system.product(e.image[x], e.image[y]));
      }
    }
  }
}

TEST(SchEmbedding, ChainMapsToNestedComplements) {
  auto e = sch_embed(chain(3));
  // E_x = {t : t ⪯ x}; complements are {1,2}, {2}, {} for x = 0, 1, 2.
  EXPECT_EQ(e.system.member_set(e.image[0]), (std::vector<std::uint32_t>{1, 2}));
  EXPECT_EQ(e.system.member_set(e.image[1]), std::vector<std::uint32_t>{2});
  EXPECT_EQ(e.system.member_set(e.image[2]), std::vector<std::uint32_t>{});
}

TEST(Generators, Sizes) {
  EXPECT_EQ(powerset(4).size(), 16u);
  EXPECT_EQ(free_semilattice(4).size(), 15u);
  EXPECT_EQ(prototype(5).size(), 31u);
  EXPECT_EQ(kary_tree(2, 3).size(), 15u);
  EXPECT_EQ(kary_tree(3, 2).size(), 13u);
  EXPECT_EQ(fin_truncation(5, 2).size(), 32u);
  EXPECT_EQ(fin_truncation(5, 0).size(), 1u);
  EXPECT_EQ(fin_truncation(1, 1, true).size(), 2u);
  EXPECT_EQ(fin_truncation(4, 4, true).size(), 16u);
}

TEST(Generators, AllAreSemilattices) {
  for (const auto& s : {chain(5), powerset(3), free_semilattice(4), fin_truncation(5, 2), kary_tree(2, 3),
                        kary_tree(3, 2), prototype(4)}) {
    EXPECT_TRUE(validate(s).ok());
  }
}

TEST(Generators, TreeProductIsLowestCommonAncestor) {
  auto s = kary_tree(2, 2);  // 0; 1, 2; 3, 4 under 1; 5, 6 under 2
  EXPECT_EQ(s.product(3, 4), 1u);
  EXPECT_EQ(s.product(3, 5), 0u);
  EXPECT_EQ(s.product(3, 1), 1u);
  EXPECT_FALSE(s.identity());
}

TEST(Generators, ExactTruncationNeedsClosure) {
  try {
    fin_truncation(4, 2, true);
    FAIL() << "expected NotClosed";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotClosed);
  }
}

TEST(Generators, Descriptors) {
  EXPECT_EQ(generate_instance("chain:6").semilattice.size(), 6u);
  EXPECT_EQ(generate_instance("fin:3:1").semilattice.size(), 8u);
  EXPECT_EQ(generate_instance("tree:2:1").semilattice.size(), 3u);
  auto proto = generate_instance("prototype:3");
  EXPECT_EQ(proto.default_weight, "prototype");
  EXPECT_EQ(generate_instance("free:3").default_weight, "zero");
  for (const char* bad : {"chain", "chain:x", "chain:1:2", "nosuch:3", "tree:2"}) {
    try {
      generate_instance(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::Usage) << bad;
    }
  }
}

TEST(Rationals, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(to_string(Rational(3, 2)), "3/2");
  EXPECT_EQ(to_string(Rational(4)), "4");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
}

TEST(Masks, IdsRoundTrip) {
  auto m = mask_from_ids(10, ids({1, 4, 9}));
  EXPECT_EQ(m.count(), 3u);
  EXPECT_EQ(ids_from_mask(m), ids({1, 4, 9}));
  EXPECT_THROW(mask_from_ids(3, ids({3})), Error);
}

}  // namespace
}  // namespace slat
