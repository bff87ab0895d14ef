#include <gtest/gtest.h>

#include <random>
#include <set>

#include "forcelab/error.hpp"
#include "forcelab/forcing.hpp"
#include "forcelab/generators.hpp"
#include "support.hpp"

using namespace forcelab;
using namespace forcelab::testing;

namespace {

std::vector<Atomic> atoms_over(const std::vector<PName>& names, std::size_t limit) {
  std::vector<Atomic> out;
  for (std::size_t i = 0; i < names.size() && i < limit; ++i) {
    for (std::size_t j = 0; j < names.size() && j < limit; ++j) {
      for (AtomKind k : {AtomKind::Eq, AtomKind::Mem, AtomKind::Sub}) out.push_back({k, names[i], names[j]});
    }
  }
  return out;
}

std::set<std::vector<Cond>> as_sets(const std::vector<ConditionSet>& xs) {
  std::set<std::vector<Cond>> out;
  for (const auto& x : xs) out.insert(members(x));
  return out;
}

}  // namespace

TEST(Generics, ConesAreExactlyTheGenericFilters) {
  for (const auto& p : preorder_suite(80, 71)) EXPECT_EQ(as_sets(cone_generics(p)), as_sets(brute_generic_filters(p)));
}

TEST(Generics, ConeRoot) {
  Preorder p = p3();
  EXPECT_EQ(cone_root(p, cone(p, 1)), 1u);
  EXPECT_FALSE(cone_root(p, cone(p, 0)).has_value());
}

TEST(SemanticForcing, P3Examples) {
  Preorder p = p3();
  Cond a = p.index("a"), b = p.index("b");
  PName ga = PName::of({{PName(), a}});
  Atomic in{AtomKind::Mem, PName(), ga};
  EXPECT_TRUE(semantic_forces(p, a, in).forced);
  auto v = semantic_forces(p, p.top(), in);
  EXPECT_FALSE(v.forced);
  EXPECT_EQ(v.witness, b);
  EXPECT_TRUE(semantic_forces(p, a, InfFormula::in_generic(a)).forced);
  EXPECT_FALSE(semantic_forces(p, b, InfFormula::in_generic(a)).forced);
  EXPECT_TRUE(semantic_forces(p, p.top(), InfFormula::eq(PName(), PName())).forced);
}

TEST(AtomicForcing, MatchesSemantics) {
  std::mt19937_64 rng(73);
  for (const auto& p : preorder_suite(40, 79)) {
    auto names = sample_names(p, {}, rng);
    SemanticOracle oracle(p);
    AtomicForcing engine(p);
    for (const auto& a : atoms_over(names, 14)) {
      EXPECT_EQ(engine.forcing_set(a), oracle.forcing_set(a)) << to_string(a, p);
    }
  }
}

TEST(AtomicForcing, WitnessFalsifies) {
  std::mt19937_64 rng(83);
  for (const auto& p : preorder_suite(20, 89)) {
    auto names = sample_names(p, {}, rng);
    for (const auto& a : atoms_over(names, 8)) {
      for (Cond c = 0; c < p.size(); ++c) {
        auto v = syntactic_forces_atomic(p, c, a);
        if (v.forced) continue;
        ASSERT_TRUE(v.witness.has_value());
        EXPECT_TRUE(p.le(*v.witness, c));
        GenericModel model(cone(p, *v.witness));
        EXPECT_FALSE(model.holds(a));
      }
    }
  }
}

TEST(AtomicForcing, StarFormAgrees) {
  std::mt19937_64 rng(97);
  for (const auto& p : preorder_suite(30, 101)) {
    auto names = sample_names(p, {}, rng);
    AtomicForcing engine(p);
    StarForcing star(p);
    for (const auto& a : atoms_over(names, 12)) {
      if (a.kind == AtomKind::Mem) continue;
      EXPECT_EQ(engine.forcing_set(a), star.forcing_set(a)) << to_string(a, p);
    }
  }
}

TEST(DecidabilityFrontier, P3) {
  Preorder p = p3();
  Atomic in{AtomKind::Mem, PName(), PName::of({{PName(), p.index("a")}})};
  EXPECT_EQ(decidability_frontier(p, in), set_of(p, {"a", "b"}));
}

TEST(NuMuForcing, MatchesSemantics) {
  std::mt19937_64 rng(103);
  for (const auto& p : preorder_suite(25, 107)) {
    auto names = sample_names(p, {}, rng);
    SemanticOracle oracle(p);
    AtomicForcing engine(p);
    for (int i = 0; i < 12; ++i) {
      auto f = random_inf_formula(p, names, {}, rng);
      EXPECT_EQ(nu_mu_forcing_set(engine, f), oracle.forcing_set(f)) << to_string(f, p);
    }
  }
}

TEST(FOForcing, ExistentialWitnesses) {
  Preorder p = p3();
  Cond a = p.index("a");
  PName ga = PName::of({{PName(), a}});
  auto pool = NamePool::closure_of({ga});
  FOForcing forcing(p, pool);
  auto nonempty = FOFormula::exists(1, FOFormula::mem(1, 0));
  EXPECT_TRUE(forcing.forces(a, nonempty, {ga}));
  EXPECT_FALSE(forcing.forces(p.top(), nonempty, {ga}));
  EXPECT_EQ(forcing.forcing_set(nonempty, {ga}), forcing.semantic_forcing_set(nonempty, {ga}));
}

TEST(FOForcing, MatchesPoolSemantics) {
  std::mt19937_64 rng(109);
  std::vector<FOFormula> formulas{
      FOFormula::exists(1, FOFormula::mem(1, 0)),
      FOFormula::forall(1, FOFormula::implies(FOFormula::mem(1, 0), FOFormula::exists(2, FOFormula::mem(2, 1)))),
      FOFormula::exists(1, FOFormula::conjunction({FOFormula::mem(0, 1), FOFormula::negation(FOFormula::eq(1, 0))})),
      FOFormula::in_class(0, 0),
      FOFormula::forall(1, FOFormula::disjunction({FOFormula::in_class(1, 0), FOFormula::mem(0, 1)})),
  };
  NamePoolSpec spec;
  spec.per_rank = 3;
  for (const auto& p : preorder_suite(15, 113)) {
    auto pool = NamePool::closure_of(sample_names(p, spec, rng));
    std::vector<PName> classes{pool.names()[rng() % pool.size()]};
    FOForcing forcing(p, pool, classes);
    for (const auto& f : formulas) {
      for (std::size_t i = 0; i < pool.size(); i += 3) {
        std::vector<PName> env{pool.names()[i]};
        EXPECT_EQ(forcing.forcing_set(f, env), forcing.semantic_forcing_set(f, env)) << to_string(f);
      }
    }
  }
}

TEST(TruthLemma, P3Examples) {
  Preorder p = p3();
  Cond a = p.index("a");
  auto out = truth_lemma_check(p, cone(p, a), InfFormula::in_generic(a));
  EXPECT_TRUE(out.holds);
  EXPECT_EQ(out.witness, a);
  auto triv = truth_lemma_check(p, cone(p, a), InfFormula::eq(PName(), PName()));
  EXPECT_EQ(triv.witness, p.top());
  auto no = truth_lemma_check(p, cone(p, p.index("b")), InfFormula::in_generic(a));
  EXPECT_FALSE(no.holds);
  EXPECT_TRUE(no.ok());
  EXPECT_THROW(truth_lemma_check(p, p.full_set(), InfFormula::truth()), Error);
}

TEST(TruthLemma, HoldsOnRandomFormulas) {
  std::mt19937_64 rng(127);
  for (const auto& p : preorder_suite(25, 131)) {
    auto names = sample_names(p, {}, rng);
    for (int i = 0; i < 10; ++i) {
      auto f = random_inf_formula(p, names, {}, rng);
      for (const auto& g : cone_generics(p)) EXPECT_TRUE(truth_lemma_check(p, g, f).ok());
    }
  }
}

TEST(BooleanValuation, ForcingMatchesOrder) {
  std::mt19937_64 rng(137);
  for (const auto& p : preorder_suite(30, 139)) {
    auto names = sample_names(p, {}, rng);
    BooleanValuation val(p);
    AtomicForcing engine(p);
    for (const auto& a : atoms_over(names, 10)) {
      auto set = engine.forcing_set(a);
      for (Cond c = 0; c < p.size(); ++c) EXPECT_EQ(val.forces(c, a), static_cast<bool>(set[c])) << to_string(a, p);
    }
  }
}

TEST(BooleanValuation, RequiresVerifiedCompletion) {
  auto ro = regular_open_algebra(p3());
  Completion broken = ro.completion;
  broken.embedding[1] = broken.embedding[0];
  EXPECT_THROW(BooleanValuation{broken}, Error);
  EXPECT_NO_THROW(BooleanValuation{ro.completion});
}

TEST(FormulaToRO, IsHomomorphic) {
  std::mt19937_64 rng(149);
  for (const auto& p : preorder_suite(20, 151)) {
    auto names = sample_names(p, {}, rng);
    auto ro = regular_open_algebra(p);
    AtomicForcing engine(p);
    const auto& b = ro.completion.algebra;
    for (int i = 0; i < 8; ++i) {
      auto f = random_inf_formula(p, names, {}, rng);
      auto g = random_inf_formula(p, names, {}, rng);
      Elem x = formula_to_ro(ro, engine, f), y = formula_to_ro(ro, engine, g);
      EXPECT_EQ(formula_to_ro(ro, engine, InfFormula::conjunction({f, g})), b.meet(x, y));
      EXPECT_EQ(formula_to_ro(ro, engine, InfFormula::disjunction({f, g})), b.join(x, y));
      EXPECT_EQ(formula_to_ro(ro, engine, InfFormula::negation(f)), b.complement(x));
    }
  }
}
