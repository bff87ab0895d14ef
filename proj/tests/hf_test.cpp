#include <gtest/gtest.h>

#include <set>

#include "forcelab/error.hpp"
#include "forcelab/hf.hpp"
#include "support.hpp"

using namespace forcelab;
using forcelab::testing::ackermann;

TEST(HFSet, StageSizes) {
  const std::vector<std::size_t> expected{0, 1, 2, 4, 16};
  for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_EQ(vstage(k).size(), expected[k]) << "k=" << k;
  EXPECT_EQ(vstage(5).size(), 65536u);
  EXPECT_THROW(vstage(6), BoundError);
}

TEST(HFSet, StageFourMatchesAckermannNumbering) {
  std::set<std::uint64_t> codes;
  for (const auto& x : vstage(4)) codes.insert(ackermann(x));
  EXPECT_EQ(codes.size(), 16u);
  EXPECT_EQ(*codes.rbegin(), 15u);
}

TEST(HFSet, EqualityIsExtensional) {
  HFSet zero;
  HFSet one = HFSet::of({zero});
  HFSet two_a = HFSet::of({zero, one});
  HFSet two_b = HFSet::of({one, zero, one, zero});
  EXPECT_EQ(two_a, two_b);
  EXPECT_EQ(two_a, HFSet::natural(2));
  EXPECT_EQ(two_a.code(), "{{}{{}}}");
  EXPECT_EQ(one.code(), "{{}}");
  for (const auto& x : vstage(4)) {
    for (const auto& y : vstage(4)) EXPECT_EQ(x == y, ackermann(x) == ackermann(y));
  }
}

TEST(HFSet, CanonicalizeCollapsesDuplicates) {
  RawSetGraph g;
  g.children = {{1, 2}, {}, {}};
  EXPECT_EQ(canonicalize(g), HFSet::of({HFSet()}));
}

TEST(HFSet, CanonicalizeRejectsCycles) {
  RawSetGraph g;
  g.children = {{1}, {0}};
  EXPECT_THROW(canonicalize(g), Error);
  RawSetGraph self;
  self.children = {{0}};
  EXPECT_THROW(canonicalize(self), Error);
}

TEST(HFSet, RankOfKuratowskiPair) {
  for (const auto& x : vstage(4)) {
    for (const auto& y : vstage(4)) {
      EXPECT_EQ(kuratowski(x, y).rank(), std::max(x.rank(), y.rank()) + 2);
    }
  }
}

TEST(HFSet, RankMatchesStage) {
  for (std::size_t k = 1; k <= 4; ++k) {
    for (const auto& x : vstage(k)) EXPECT_LT(x.rank(), k);
  }
  EXPECT_EQ(HFSet::natural(3).rank(), 3u);
}

TEST(HFSet, NaturalsAreTransitive) {
  for (std::size_t n = 0; n < 8; ++n) {
    HFSet x = HFSet::natural(n);
    EXPECT_TRUE(x.is_transitive());
    EXPECT_EQ(x.as_natural(), n);
    EXPECT_EQ(x.size(), n);
  }
  EXPECT_FALSE(HFSet::of({HFSet::natural(1)}).as_natural().has_value());
}

TEST(HFSet, TransitiveClosure) {
  HFSet x = HFSet::of({HFSet::of({HFSet::natural(1)})});
  HFSet tc = transitive_closure(x);
  EXPECT_TRUE(tc.is_transitive());
  EXPECT_EQ(tc.size(), 3u);
  for (const auto& y : vstage(4)) {
    HFSet t = transitive_closure(y);
    EXPECT_TRUE(t.is_transitive());
    for (const auto& z : y.elements()) EXPECT_TRUE(t.contains(z));
  }
}

TEST(HFSet, LiteralRoundTrip) {
  for (const auto& x : vstage(4)) EXPECT_EQ(parse_hf_literal(x.to_string()), x);
  EXPECT_EQ(parse_hf_literal("nat:3"), HFSet::natural(3));
  EXPECT_EQ(parse_hf_literal("{ nat:0 , {} }"), HFSet::natural(1));
  EXPECT_THROW(parse_hf_literal("{"), ParseError);
  EXPECT_THROW(parse_hf_literal("{}}"), ParseError);
}

TEST(HFSet, StageIsSortedAndTransitive) {
  auto v = vstage(4);
  EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
  for (const auto& x : v) {
    for (const auto& y : x.elements()) EXPECT_TRUE(std::binary_search(v.begin(), v.end(), y));
  }
}

TEST(GroundModel, RequiresTransitivity) {
  HFSet zero;
  HFSet two = HFSet::natural(2);
  EXPECT_THROW(GroundModel::from_sets({zero, two}), Error);
  EXPECT_THROW(GroundModel::from_sets({HFSet::natural(1)}), Error);
  auto m = GroundModel::from_sets({zero, HFSet::natural(1), two});
  EXPECT_EQ(m.size(), 3u);
  EXPECT_FALSE(m.stage_index().has_value());
  EXPECT_TRUE(m.member(0, 2));
}

TEST(GroundModel, Stage) {
  auto m = GroundModel::stage(3);
  EXPECT_EQ(m.size(), 4u);
  EXPECT_EQ(m.stage_index(), 3u);
  EXPECT_EQ(m.index_of(HFSet()), 0u);
}
