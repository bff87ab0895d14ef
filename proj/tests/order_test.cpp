#include <gtest/gtest.h>

#include <set>

#include "forcelab/error.hpp"
#include "forcelab/generators.hpp"
#include "forcelab/order.hpp"
#include "support.hpp"

using namespace forcelab;
using namespace forcelab::testing;

TEST(Preorder, ClosesGenerators) {
  Preorder c = chain(3);
  EXPECT_TRUE(c.le(c.index("b"), c.index("1")));
  EXPECT_FALSE(c.le(c.index("1"), c.index("b")));
  EXPECT_EQ(c.top(), c.index("1"));
}

TEST(Preorder, RejectsMissingTop) {
  std::vector<std::pair<Cond, Cond>> gens;
  EXPECT_THROW(Preorder::from_generators({"1", "a"}, gens, 0), Error);
  EXPECT_THROW(Preorder::from_generators({"1", "1"}, std::vector<std::pair<Cond, Cond>>{{1, 0}}, 0), Error);
}

TEST(Preorder, P3Basics) {
  Preorder p = p3();
  Cond a = p.index("a"), b = p.index("b");
  EXPECT_FALSE(p.compatible(a, b));
  EXPECT_TRUE(p.compatible(a, p.top()));
  EXPECT_EQ(minimal_classes(p), (std::vector<Cond>{a, b}));
  EXPECT_TRUE(is_separative(p));
  EXPECT_TRUE(is_maximal_antichain(p, set_of(p, {"a", "b"})));
  EXPECT_FALSE(is_maximal_antichain(p, set_of(p, {"a"})));
  EXPECT_TRUE(is_dense(p, set_of(p, {"a", "b"})));
  EXPECT_FALSE(is_dense(p, set_of(p, {"a"})));
  EXPECT_TRUE(is_dense_below(p, set_of(p, {"a"}), a));
  EXPECT_TRUE(is_predense_below(p, set_of(p, {"a"}), a));
  EXPECT_FALSE(is_predense_below(p, set_of(p, {"a"}), p.top()));
}

TEST(Preorder, CompatibilityMatchesDefinition) {
  for (const auto& p : preorder_suite(60, 7)) {
    for (Cond x = 0; x < p.size(); ++x) {
      for (Cond y = 0; y < p.size(); ++y) EXPECT_EQ(p.compatible(x, y), naive_compatible(p, x, y));
    }
  }
}

TEST(Preorder, SmallPreordersAreComplete) {
  auto all = small_preorders(3);
  // one on 1 condition, two on 2, and the distinct closures of 16 relations on 3
  EXPECT_EQ(all.front().size(), 1u);
  std::size_t on_two = 0;
  for (const auto& p : all) on_two += p.size() == 2;
  EXPECT_EQ(on_two, 2u);
  EXPECT_GE(all.size(), 10u);
}

TEST(SeparativeQuotient, ChainCollapses) {
  Preorder c = chain(2);
  EXPECT_FALSE(is_separative(c));
  auto q = separative_quotient(c);
  EXPECT_EQ(q.target.size(), 1u);
  EXPECT_EQ(q.target.id(0), "1");
  EXPECT_EQ(q.map, (std::vector<Cond>{0, 0}));
}

TEST(SeparativeQuotient, Properties) {
  for (const auto& p : preorder_suite(80, 11)) {
    auto q = separative_quotient(p);
    EXPECT_TRUE(is_separative(q.target));
    EXPECT_TRUE(q.target.is_antisymmetric());
    for (Cond x = 0; x < p.size(); ++x) {
      for (Cond y = 0; y < p.size(); ++y) {
        if (p.le(x, y)) EXPECT_TRUE(q.target.le(q.map[x], q.map[y]));
        EXPECT_EQ(p.compatible(x, y), q.target.compatible(q.map[x], q.map[y]));
      }
    }
    auto again = separative_quotient(q.target);
    EXPECT_EQ(again.target.size(), q.target.size());
    EXPECT_EQ(minimal_classes(q.target).size(), minimal_classes(p).size());
  }
}

TEST(AddSupremum, P3) {
  Preorder p = p3();
  auto both = add_supremum(p, set_of(p, {"a", "b"}));
  EXPECT_TRUE(both.order.equivalent(both.added, p.top()));
  auto one = add_supremum(p, set_of(p, {"a"}));
  EXPECT_TRUE(one.order.equivalent(one.added, p.index("a")));
  EXPECT_TRUE(one.warnings.empty());
  auto none = add_supremum(p, p.empty_set());
  EXPECT_EQ(none.warnings.size(), 1u);
  for (Cond x = 0; x < p.size(); ++x) {
    EXPECT_TRUE(none.order.le(none.added, x));
    EXPECT_FALSE(none.order.le(x, none.added));
  }
}

TEST(AddSupremum, NonSeparativeInputIsNotTransitive) {
  // In 1 > a > b the set {b} is predense below 1, so 1 <= sup{b} <= b would be forced.
  Preorder c = chain(3);
  EXPECT_THROW(add_supremum(c, set_of(c, {"b"})), Error);
}

TEST(AddSupremum, RestrictionUnchangedOnSeparativeInput) {
  for (const auto& raw : preorder_suite(40, 3)) {
    Preorder p = separative_quotient(raw).target;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.size()); ++mask) {
      auto ext = add_supremum(p, mask_set(p.size(), mask));
      for (Cond x = 0; x < p.size(); ++x) {
        for (Cond y = 0; y < p.size(); ++y) EXPECT_EQ(ext.order.le(x, y), p.le(x, y));
        if (mask_set(p.size(), mask)[x]) EXPECT_TRUE(ext.order.le(x, ext.added));
      }
    }
  }
}

TEST(AddNegation, P3) {
  Preorder p = p3();
  auto na = add_negation(p, p.index("a"));
  EXPECT_TRUE(na.order.equivalent(na.added, p.index("b")));
  auto n1 = add_negation(p, p.top());
  for (Cond x = 0; x < p.size(); ++x) EXPECT_TRUE(n1.order.le(n1.added, x));
  auto nna = add_negation(na.order, na.added);
  EXPECT_TRUE(nna.order.equivalent(nna.added, p.index("a")));
  EXPECT_THROW(add_negation(chain(2), 0), Error);
}

TEST(AddNegation, PreservesSeparativity) {
  for (const auto& raw : preorder_suite(40, 5)) {
    Preorder p = separative_quotient(raw).target;
    for (Cond q = 0; q < p.size(); ++q) {
      auto ext = add_negation(p, q);
      EXPECT_TRUE(is_separative(induced_suborder(ext.order, ~zero_like(ext.order)).order));
      EXPECT_EQ(zero_like(ext.order).any(), q == p.top());
      for (Cond x = 0; x < p.size(); ++x) EXPECT_EQ(ext.order.le(x, ext.added), !p.compatible(x, q));
    }
  }
}

TEST(CompleteSubforcing, P3) {
  Preorder p = p3();
  Preorder sub = make_order({"1", "a"}, {});
  EXPECT_FALSE(is_complete_subforcing(sub, p));
  EXPECT_TRUE(is_complete_subforcing(p, p));
  Preorder foreign = make_order({"1", "z"}, {});
  EXPECT_THROW(is_complete_subforcing(foreign, p), Error);
}

TEST(MaximalAntichains, MatchBruteForce) {
  for (const auto& p : preorder_suite(60, 13)) {
    std::set<std::vector<Cond>> found;
    for_each_maximal_antichain(p, [&](const ConditionSet& a) { found.insert(members(a)); });
    std::set<std::vector<Cond>> expected;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << p.size()); ++mask) {
      auto a = mask_set(p.size(), mask);
      if (is_maximal_antichain(p, a)) expected.insert(members(a));
    }
    EXPECT_EQ(found, expected);
  }
}

TEST(Filters, ConesAreFilters) {
  for (const auto& p : preorder_suite(40, 17)) {
    for (Cond m = 0; m < p.size(); ++m) EXPECT_TRUE(is_filter(p, p.above(m)));
    EXPECT_FALSE(is_filter(p, p.empty_set()));
  }
  Preorder p = p3();
  EXPECT_FALSE(is_filter(p, set_of(p, {"1", "a", "b"})));
}
