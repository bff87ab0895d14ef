#include <gtest/gtest.h>

#include <random>

#include "forcelab/error.hpp"
#include "forcelab/forcing.hpp"
#include "forcelab/generators.hpp"
#include "forcelab/names.hpp"
#include "support.hpp"

using namespace forcelab;
using namespace forcelab::testing;

TEST(PName, EntriesAreCanonical) {
  PName zero;
  PName a = PName::of({{zero, 1}, {zero, 0}, {zero, 1}});
  PName b = PName::of({{zero, 0}, {zero, 1}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(a.rank(), 1u);
  EXPECT_EQ(a.domain().size(), 1u);
}

TEST(PName, CheckNamesHaveMatchingRank) {
  for (const auto& x : vstage(4)) EXPECT_EQ(check_name(x, 0).rank(), x.rank());
}

TEST(PName, CheckNamesEvaluateToThemselves) {
  Preorder p = p3();
  for (const auto& g : cone_generics(p)) {
    for (const auto& x : vstage(4)) EXPECT_EQ(evaluate(check_name(x, p.top()), g), x);
  }
}

TEST(PName, OrderedPairName) {
  Preorder p = p3();
  for (const auto& x : vstage(3)) {
    for (const auto& y : vstage(3)) {
      PName pair = op_name(check_name(x, 0), check_name(y, 0), 0);
      EXPECT_EQ(evaluate(pair, p.full_set()), kuratowski(x, y));
    }
  }
}

TEST(PName, P3Example) {
  Preorder p = p3();
  PName sigma = PName::of({{PName(), p.index("a")}});
  EXPECT_EQ(evaluate(sigma, cone(p, p.index("a"))), HFSet::natural(1));
  EXPECT_EQ(evaluate(sigma, cone(p, p.index("b"))), HFSet());
  EXPECT_EQ(to_string(sigma, p), "{<{},a>}");
}

TEST(PName, EvaluationMatchesNaiveOracle) {
  std::mt19937_64 rng(41);
  for (const auto& p : preorder_suite(30, 43)) {
    auto names = sample_names(p, {}, rng);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.size()); ++mask) {
      auto g = mask_set(p.size(), mask);
      NameEvaluator eval(g);
      for (const auto& s : names) EXPECT_EQ(eval(s), naive_value(s, g));
    }
  }
}

TEST(PName, SubnamesAreClosed) {
  std::mt19937_64 rng(3);
  Preorder p = p3();
  for (const auto& s : sample_names(p, {}, rng)) {
    auto subs = subnames(s);
    EXPECT_TRUE(std::binary_search(subs.begin(), subs.end(), s));
    for (const auto& t : subs) {
      for (const auto& e : t.entries()) EXPECT_TRUE(std::binary_search(subs.begin(), subs.end(), e.name));
    }
  }
}

TEST(PName, ValidateRejectsForeignConditions) {
  Preorder p = p3();
  EXPECT_THROW(validate_name(PName::of({{PName(), 7}}), p), Error);
  EXPECT_NO_THROW(validate_name(PName::of({{PName(), 2}}), p));
}

TEST(PName, GenericNameEvaluatesToFilter) {
  Preorder p = p3();
  for (const auto& g : cone_generics(p)) {
    std::vector<HFSet> expected;
    for (Cond c : members(g)) expected.push_back(HFSet::natural(c));
    EXPECT_EQ(evaluate(gdot_name(p), g), HFSet::of(expected));
  }
}

TEST(PName, PEvaluation) {
  Preorder p = p3();
  for (const auto& x : vstage(3)) EXPECT_EQ(p_evaluation(check_name(x, 0), p.index("a"), p), x);
  PName sigma = PName::of({{PName(), p.index("a")}});
  EXPECT_EQ(p_evaluation(sigma, p.index("a"), p), HFSet::natural(1));
  EXPECT_EQ(p_evaluation(sigma, p.index("b"), p), HFSet());
  EXPECT_EQ(p_evaluation(sigma, p.top(), p), HFSet());
}

TEST(PName, QuotientTransport) {
  Preorder c = chain(2);
  auto q = separative_quotient(c);
  PName sigma = PName::of({{PName(), c.index("a")}});
  EXPECT_EQ(transport_quotient(sigma, q), PName::of({{PName(), 0}}));
}

TEST(PName, QuotientTransportPreservesValues) {
  std::mt19937_64 rng(5);
  for (const auto& p : preorder_suite(40, 47)) {
    auto q = separative_quotient(p);
    auto names = sample_names(p, {}, rng);
    for (Cond m : minimal_classes(p)) {
      auto g = cone(p, m);
      auto h = cone(q.target, q.map[m]);
      for (const auto& s : names) EXPECT_EQ(evaluate(s, g), evaluate(transport_quotient(s, q), h));
    }
  }
}

TEST(PName, SupremumTransforms) {
  Preorder p = p3();
  auto ext = add_supremum(p, set_of(p, {"a", "b"}));
  PName sigma = PName::of({{PName(), ext.added}});
  EXPECT_EQ(plus_transform(sigma, ext.added, p.top()), PName::of({{PName(), p.top()}}));
  EXPECT_EQ(minus_transform(sigma, ext.added), PName());
  PName nested = PName::of({{sigma, p.index("a")}});
  EXPECT_EQ(minus_transform(nested, ext.added), PName::of({{PName(), p.index("a")}}));
}

TEST(PName, RetagFollowsMap) {
  Preorder p = p3();
  PName sigma = PName::of({{PName::of({{PName(), 1}}), 2}});
  EXPECT_EQ(retag(sigma, {0, 0, 0}), PName::of({{PName::of({{PName(), 0}}), 0}}));
}
