#include <gtest/gtest.h>

#include <set>

#include "forcelab/boolean.hpp"
#include "forcelab/error.hpp"
#include "forcelab/generators.hpp"
#include "support.hpp"

using namespace forcelab;
using namespace forcelab::testing;

namespace {

std::set<std::vector<Cond>> as_sets(const std::vector<ConditionSet>& xs) {
  std::set<std::vector<Cond>> out;
  for (const auto& x : xs) out.insert(members(x));
  return out;
}

}  // namespace

TEST(BooleanAlgebra, FromOrderRejectsChain) {
  std::vector<ConditionSet> rows{mask_set(3, 0b111), mask_set(3, 0b110), mask_set(3, 0b100)};
  EXPECT_THROW(FiniteBooleanAlgebra::from_order({"0", "m", "1"}, rows), Error);
}

TEST(BooleanAlgebra, FourElementAlgebra) {
  std::vector<ConditionSet> rows{mask_set(4, 0b1111), mask_set(4, 0b1010), mask_set(4, 0b1100),
                                 mask_set(4, 0b1000)};
  auto b = FiniteBooleanAlgebra::from_order({"0", "x", "y", "1"}, rows);
  EXPECT_EQ(b.zero(), 0u);
  EXPECT_EQ(b.one(), 3u);
  EXPECT_EQ(b.complement(1), 2u);
  EXPECT_EQ(b.join(1, 2), 3u);
  EXPECT_EQ(b.meet(1, 2), 0u);
  EXPECT_EQ(b.atoms(), (std::vector<Elem>{1, 2}));
}

TEST(BooleanAlgebra, FromOperationsChecksLaws) {
  FiniteBooleanAlgebra::Operations ops;
  ops.meet = [](Elem a, Elem b) { return a & b; };
  ops.join = [](Elem a, Elem b) { return a | b; };
  ops.complement = [](Elem a) { return a ^ 7u; };
  ops.zero = 0;
  ops.one = 7;
  std::vector<std::string> labels;
  for (int i = 0; i < 8; ++i) labels.push_back(std::to_string(i));
  auto b = FiniteBooleanAlgebra::from_operations(labels, ops);
  EXPECT_EQ(b.atoms().size(), 3u);
  ops.complement = [](Elem a) { return a; };
  EXPECT_THROW(FiniteBooleanAlgebra::from_operations(labels, ops), Error);
}

TEST(RegularOpen, P3HasFourElements) {
  auto ro = regular_open_algebra(p3());
  EXPECT_EQ(ro.completion.algebra.size(), 4u);
  EXPECT_TRUE(is_dense_embedding(ro.completion));
}

TEST(RegularOpen, MatchesBruteForce) {
  for (const auto& p : preorder_suite(80, 21)) {
    auto ro = regular_open_algebra(p);
    EXPECT_EQ(as_sets(ro.regions), as_sets(brute_regular_open(p)));
    EXPECT_EQ(ro.completion.algebra.size(), std::size_t{1} << minimal_classes(p).size());
    for (const auto& r : ro.regions) EXPECT_TRUE(is_regular_open(p, r));
  }
}

TEST(RegularOpen, EmbeddingIsDense) {
  for (const auto& raw : preorder_suite(60, 23)) {
    Preorder p = separative_quotient(raw).target;
    EXPECT_TRUE(is_dense_embedding(regular_open_algebra(p).completion));
  }
}

TEST(RegularOpen, RespectsBound) {
  Preorder big = make_order({"1", "a", "b", "c", "d"}, {});
  EXPECT_THROW(regular_open_algebra(big, 8), BoundError);
}

TEST(Saturation, P3MatchesRegularOpen) {
  auto sat = saturate_to_boolean(p3());
  EXPECT_EQ(sat.completion.algebra.size(), 4u);
  auto ro = regular_open_algebra(separative_quotient(p3()).target);
  auto iso = completion_isomorphism(sat.completion, ro.completion);
  EXPECT_TRUE(std::holds_alternative<BooleanIsomorphism>(iso));
}

TEST(Saturation, ChainSaturatesToTwoElements) {
  auto sat = saturate_to_boolean(chain(3));
  EXPECT_EQ(sat.completion.algebra.size(), 2u);
}

TEST(Saturation, AgreesWithRegularOpenOnSuite) {
  for (const auto& raw : preorder_suite(60, 29)) {
    auto sat = saturate_to_boolean(raw);
    auto ro = regular_open_algebra(raw);
    ASSERT_TRUE(sat.completion.source == ro.completion.source);
    EXPECT_TRUE(is_dense_embedding(sat.completion));
    auto iso = completion_isomorphism(sat.completion, ro.completion);
    ASSERT_TRUE(std::holds_alternative<BooleanIsomorphism>(iso))
        << std::get<IsomorphismFailure>(iso).law;
    EXPECT_EQ(sat.completion.algebra.size(), std::size_t{1} << minimal_classes(raw).size());
  }
}

TEST(Isomorphism, RejectsDifferentSources) {
  auto a = regular_open_algebra(p3());
  auto b = regular_open_algebra(make_order({"1", "x", "y"}, {}));
  EXPECT_THROW(completion_isomorphism(a.completion, b.completion), Error);
}

TEST(Isomorphism, ReportsBrokenEmbedding) {
  auto a = regular_open_algebra(p3());
  Completion broken = a.completion;
  broken.embedding[1] = broken.embedding[0];
  auto iso = completion_isomorphism(a.completion, a.completion);
  EXPECT_TRUE(std::holds_alternative<BooleanIsomorphism>(iso));
  auto bad = completion_isomorphism(a.completion, broken);
  ASSERT_TRUE(std::holds_alternative<IsomorphismFailure>(bad));
  EXPECT_FALSE(std::get<IsomorphismFailure>(bad).law.empty());
}
