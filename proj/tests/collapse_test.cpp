#include <gtest/gtest.h>

#include <random>
#include <set>

#include "forcelab/collapse.hpp"
#include "forcelab/error.hpp"
#include "forcelab/forcing.hpp"
#include "support.hpp"

namespace forcelab {
namespace {

using testing::mask_set;

Cond at(const CollapseForcing& c, const std::string& text) {
  return c.index_of(parse_partial_function(text, c.slots()));
}

// Oracle: a plain condition as a set of (slot, value) pairs.
std::set<std::pair<std::size_t, std::size_t>> graph_of(const PartialFunction& f) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t n = 0; n < f.size(); ++n) {
    if (f[n]) out.emplace(n, f[n]->value);
  }
  return out;
}

TEST(Collapse, Counts) {
  EXPECT_EQ(CollapseForcing(2, 3, CollapseVariant::Plain).size(), 16u);
  EXPECT_EQ(CollapseForcing(2, 3, CollapseVariant::Star).size(), 13u);
  EXPECT_EQ(CollapseForcing(1, 2, CollapseVariant::Geq).size(), 5u);
  EXPECT_EQ(CollapseForcing(2, 4, CollapseVariant::Geq).size(), 81u);
  EXPECT_THROW(CollapseForcing(6, 6, CollapseVariant::Geq), BoundError);
}

TEST(Collapse, PlainOrderIsReverseInclusion) {
  CollapseForcing c(2, 3, CollapseVariant::Plain);
  for (Cond p = 0; p < c.size(); ++p) {
    for (Cond q = 0; q < c.size(); ++q) {
      auto gp = graph_of(c.condition(p));
      auto gq = graph_of(c.condition(q));
      bool included = std::includes(gp.begin(), gp.end(), gq.begin(), gq.end());
      EXPECT_EQ(c.order().le(p, q), included) << c.order().id(p) << " " << c.order().id(q);
    }
  }
  EXPECT_TRUE(c.order().is_antisymmetric());
  EXPECT_EQ(c.order().id(c.order().top()), "{}");
}

TEST(Collapse, StarIsDenseInPlain) {
  EXPECT_TRUE(star_dense_in_plain(2, 3));
  EXPECT_TRUE(star_dense_in_plain(3, 2));
  CollapseForcing star(2, 3, CollapseVariant::Star);
  EXPECT_FALSE(star.find(parse_partial_function("{1:0}", 2)).has_value());
}

TEST(Collapse, GeqExtension) {
  CollapseForcing c(1, 2, CollapseVariant::Geq);
  Cond marker = at(c, "{0:>=0}");
  Cond one = at(c, "{0:1}");
  EXPECT_TRUE(c.order().le(one, marker));
  EXPECT_FALSE(c.order().le(marker, one));
  EXPECT_TRUE(c.order().le(at(c, "{0:>=1}"), marker));
  EXPECT_FALSE(c.order().le(marker, at(c, "{0:>=1}")));
  CollapseForcing d(1, 3, CollapseVariant::Geq);
  EXPECT_FALSE(d.order().le(at(d, "{0:0}"), at(d, "{0:>=1}")));
  EXPECT_TRUE(d.order().le(at(d, "{0:2}"), at(d, "{0:>=1}")));
}

TEST(Collapse, PartialFunctionText) {
  auto f = parse_partial_function("{0:2, 1:>=1}", 2);
  EXPECT_EQ(format_partial_function(f), "{0:2,1:>=1}");
  EXPECT_EQ(format_partial_function(parse_partial_function("{}", 3)), "{}");
  EXPECT_THROW(parse_partial_function("{2:0}", 2), Error);
  EXPECT_THROW(parse_partial_function("{0:1,0:2}", 2), Error);
  EXPECT_THROW(parse_partial_function("{0 1}", 2), Error);
}

TEST(CollapseDense, Extenders) {
  CollapseForcing c(2, 3, CollapseVariant::Plain);
  auto sets = collapse_dense_sets(c);
  ASSERT_EQ(sets.size(), 5u);
  EXPECT_EQ(sets[2].name, "ran:2");
  EXPECT_EQ(c.order().id(sets[2].extend(c.order().top(), nullptr)), "{0:2}");
  Cond inside = at(c, "{1:2}");
  EXPECT_EQ(sets[2].extend(inside, nullptr), inside);
  EXPECT_EQ(c.order().id(sets[3].extend(at(c, "{1:1}"), nullptr)), "{0:0,1:1}");
}

TEST(CollapseDense, ExtendersWorkWhereASlotIsFree) {
  std::mt19937_64 rng(5);
  for (auto variant : {CollapseVariant::Plain, CollapseVariant::Star}) {
    CollapseForcing c(2, 3, variant);
    const Preorder& p = c.order();
    for (const auto& d : collapse_dense_sets(c)) {
      for (Cond x = 0; x < p.size(); ++x) {
        bool room = domain_size(c.condition(x)) < c.slots();
        if (!d.members[x] && !room) {
          EXPECT_THROW(d.extend(x, nullptr), BoundError);
          EXPECT_FALSE(is_dense_below(p, d.members, x));
          continue;
        }
        for (std::mt19937_64* r : {static_cast<std::mt19937_64*>(nullptr), &rng}) {
          Cond y = d.extend(x, r);
          EXPECT_TRUE(p.le(y, x));
          EXPECT_TRUE(d.members[y]);
        }
      }
    }
    auto sets = collapse_dense_sets(c);
    // a full domain with no 2 in its range cannot be extended into ran:2
    EXPECT_FALSE(is_dense(p, sets[2].members));
    for (std::size_t n = 0; n < c.slots(); ++n) EXPECT_TRUE(is_dense(p, sets[c.height() + n].members));
  }
  EXPECT_THROW(collapse_dense_sets(CollapseForcing(1, 2, CollapseVariant::Geq)), Error);
}

TEST(CollapseDense, SurjectionName) {
  CollapseForcing c(1, 1, CollapseVariant::Plain);
  PName sigma = surjection_name(c);
  ConditionSet g = c.order().full_set();
  HFSet zero;
  EXPECT_EQ(evaluate(sigma, g), HFSet::of({kuratowski(zero, zero)}));
  EXPECT_EQ(evaluate(sigma, c.order().singleton(c.order().top())), HFSet());

  CollapseForcing big(3, 3, CollapseVariant::Plain);
  PName tau = surjection_name(big);
  auto sets = collapse_dense_sets(big);
  for (Cond m : minimal_classes(big.order())) {
    ConditionSet g2 = cone(big.order(), m);
    bool meets_all = true;
    for (std::size_t alpha = 0; alpha < big.height(); ++alpha) meets_all &= sets[alpha].members.intersects(g2);
    HFSet value = evaluate(tau, g2);
    std::set<std::size_t> range;
    for (const auto& pair : value.elements()) {
      for (std::size_t n = 0; n < big.slots(); ++n) {
        for (std::size_t a = 0; a < big.height(); ++a) {
          if (pair == kuratowski(HFSet::natural(n), HFSet::natural(a))) range.insert(a);
        }
      }
    }
    EXPECT_EQ(range.size() == big.height(), meets_all);
  }
  EXPECT_THROW(surjection_name(CollapseForcing(1, 2, CollapseVariant::Star)), Error);
}

TEST(CollapseAntichain, Defeater) {
  CollapseForcing c(1, 4, CollapseVariant::Plain);
  ConditionSet a = c.order().empty_set();
  a.set(at(c, "{0:1}"));
  a.set(at(c, "{0:2}"));
  EXPECT_EQ(c.order().id(antichain_defeater(c, a)), "{0:3}");
  EXPECT_EQ(c.order().id(antichain_defeater(c, c.order().singleton(at(c, "{0:0}")))), "{0:1}");
  EXPECT_THROW(antichain_defeater(c, c.order().singleton(at(c, "{0:3}"))), HeightOverflow);
  EXPECT_THROW(antichain_defeater(c, c.order().singleton(c.order().top())), Error);
}

TEST(CollapseAntichain, DefeaterIsIncompatibleWithEveryMember) {
  for (auto variant : {CollapseVariant::Plain, CollapseVariant::Star}) {
    CollapseForcing c(2, 3, variant);
    const Preorder& p = c.order();
    std::size_t defeated = 0;
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 400; ++trial) {
      ConditionSet a = mask_set(p.size(), rng()) & ~p.singleton(p.top());
      if (a.none() || !is_antichain(p, a)) continue;
      try {
        Cond d = antichain_defeater(c, a);
        for (Cond b : members(a)) EXPECT_FALSE(p.compatible(d, b)) << p.id(d) << " " << p.id(b);
        EXPECT_FALSE(is_maximal_antichain(p, a));
        ++defeated;
      } catch (const HeightOverflow&) {
      }
    }
    EXPECT_GT(defeated, 0u);
  }
}

TEST(CollapseGeq, Reduction) {
  CollapseForcing c(2, 4, CollapseVariant::Geq);
  EXPECT_EQ(c.order().id(geq_reduction(c, at(c, "{0:3,1:1}"), 2)), "{0:>=2,1:1}");
  EXPECT_EQ(c.order().id(geq_reduction(c, at(c, "{0:>=3,1:>=2}"), 2)), "{0:>=2,1:>=2}");
  Cond low = at(c, "{0:1,1:>=0}");
  EXPECT_EQ(geq_reduction(c, low, 2), low);
  for (std::size_t alpha = 0; alpha < c.height(); ++alpha) {
    ConditionSet stratum = collapse_stratum(c, alpha);
    for (Cond p = 0; p < c.size(); ++p) {
      Cond r = geq_reduction(c, p, alpha);
      EXPECT_TRUE(stratum[r]);
      EXPECT_TRUE(c.order().le(p, r));
      if (stratum[p]) EXPECT_EQ(r, p);
    }
  }
}

TEST(CollapseGeq, TruncationIsCompleteSubforcing) {
  CollapseForcing c(2, 3, CollapseVariant::Geq);
  Suborder sub = induced_suborder(c.order(), collapse_stratum(c, 1));
  EXPECT_EQ(sub.order.size(), 16u);
  EXPECT_TRUE(is_complete_subforcing(sub.order, c.order()));
  // the plain truncation is not complete: {0:0} alone is maximal below it, yet {0:1} avoids it
  CollapseForcing plain(1, 3, CollapseVariant::Plain);
  Suborder low = induced_suborder(plain.order(), collapse_stratum(plain, 1));
  EXPECT_FALSE(is_complete_subforcing(low.order, plain.order()));
}

TEST(CollapseProjection, Examples) {
  CollapseForcing c(2, 6, CollapseVariant::Plain);
  auto pi = collapse_projection(c, 2);
  EXPECT_EQ(c.order().id(pi[at(c, "{0:5,1:1}")]), "{0:2,1:1}");
  Cond inside = at(c, "{0:1,1:0}");
  EXPECT_EQ(pi[inside], inside);
  EXPECT_THROW(collapse_projection(c, 6), Error);
}

TEST(CollapseProjection, ApproachabilityHolds) {
  for (auto variant : {CollapseVariant::Plain, CollapseVariant::Star, CollapseVariant::Geq}) {
    for (std::size_t n = 1; n <= 2; ++n) {
      for (std::size_t height = 1; height <= 4; ++height) {
        CollapseForcing c(n, height, variant);
        auto check = check_approachability(approachability_instance(c));
        EXPECT_TRUE(check.ok) << to_string(variant) << " " << n << " " << height << ": " << check.failure;
        EXPECT_GT(check.checked, 0u);
      }
    }
  }
}

TEST(CollapseProjection, BrokenFamiliesFail) {
  CollapseForcing c(2, 4, CollapseVariant::Plain);
  auto constant = check_approachability(constant_projection_family(c));
  EXPECT_FALSE(constant.ok);
  EXPECT_NE(constant.failure.find("clause (3)"), std::string::npos) << constant.failure;

  ProjectionFamily identity = approachability_instance(c);
  for (auto& pi : identity.projections) {
    for (Cond p = 0; p < pi.size(); ++p) pi[p] = p;
  }
  auto id_check = check_approachability(identity);
  EXPECT_FALSE(id_check.ok);
  EXPECT_NE(id_check.failure.find("leaves its stratum"), std::string::npos);
}

TEST(CollapseRestricted, AgreesWithWholeOrder) {
  std::mt19937_64 rng(3);
  for (auto variant : {CollapseVariant::Plain, CollapseVariant::Geq}) {
    CollapseForcing c(2, 3, variant);
    ProjectionFamily family = approachability_instance(c);
    for (std::size_t alpha = 0; alpha < 2; ++alpha) {
      auto names = stratum_names(family, alpha, NamePoolSpec{2, 6, 3}, rng);
      auto check = check_restricted_equivalence(family, alpha, names);
      EXPECT_TRUE(check.ok) << check.failure;
      EXPECT_GT(check.checked, 0u);
    }
  }
}

TEST(CollapseRestricted, EmptyNames) {
  CollapseForcing c(1, 2, CollapseVariant::Plain);
  ProjectionFamily family = approachability_instance(c);
  RestrictedForcing r(family, 1);
  for (Cond p = 0; p < c.size(); ++p) {
    EXPECT_TRUE(r.sub(p, PName(), PName()));
    EXPECT_TRUE(r.eq(p, PName(), PName()));
  }
  PName outside = PName::of({{PName(), at(c, "{0:1}")}});
  EXPECT_THROW(r.sub(0, outside, PName()), Error);
}

TEST(CollapseRestricted, ConstantProjectionIsDetected) {
  std::mt19937_64 rng(3);
  CollapseForcing c(2, 3, CollapseVariant::Plain);
  ProjectionFamily family = constant_projection_family(c);
  auto names = stratum_names(family, 1, NamePoolSpec{1, 0, 2}, rng);
  auto check = check_restricted_equivalence(family, 1, names);
  EXPECT_FALSE(check.ok);
}

TEST(CollapseGenericExtension, ValuesTransfer) {
  std::mt19937_64 rng(9);
  for (auto variant : {CollapseVariant::Plain, CollapseVariant::Star, CollapseVariant::Geq}) {
    CollapseForcing c(2, 3, variant);
    ProjectionFamily family = approachability_instance(c);
    for (std::size_t alpha = 0; alpha < c.height(); ++alpha) {
      auto names = stratum_names(family, alpha, NamePoolSpec{2, 6, 3}, rng);
      for (const auto& g : cone_generics(c.order())) {
        auto check = proj_gen_ext_check(family, alpha, g, names);
        EXPECT_TRUE(check.ok) << check.failure;
      }
    }
  }
}

TEST(CollapseGenericExtension, ConstantProjectionIsDetected) {
  std::mt19937_64 rng(9);
  CollapseForcing c(2, 3, CollapseVariant::Plain);
  ProjectionFamily family = constant_projection_family(c);
  auto names = stratum_names(family, 1, NamePoolSpec{1, 0, 2}, rng);
  bool detected = false;
  for (const auto& g : cone_generics(c.order())) detected |= !proj_gen_ext_check(family, 1, g, names).ok;
  EXPECT_TRUE(detected);
  EXPECT_TRUE(proj_gen_ext_check(family, 1, cone_generics(c.order())[0], {PName()}).ok);
}

}  // namespace
}  // namespace forcelab
