#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "forcelab/boolean.hpp"
#include "forcelab/formulas.hpp"
#include "forcelab/names.hpp"
#include "forcelab/order.hpp"

namespace forcelab {

// {q : m <= q}
ConditionSet cone(const Preorder& p, Cond m);
// Cones of the minimal classes; at finite size these are exactly the generic filters.
std::vector<ConditionSet> cone_generics(const Preorder& p);
// The filter is the cone of a minimal condition.
std::optional<Cond> cone_root(const Preorder& p, const ConditionSet& filter);

struct Verdict {
  bool forced = false;
  // A minimal condition below the queried one whose cone falsifies the formula.
  std::optional<Cond> witness;
};

// Values of names and truth of formulas in one generic extension.
class GenericModel {
 public:
  explicit GenericModel(ConditionSet filter) : eval_(std::move(filter)) {}
  HFSet value(const PName& s) { return eval_(s); }
  bool holds(const InfFormula& f);
  bool holds(const Atomic& a);
  const ConditionSet& filter() const { return eval_.filter(); }

 private:
  NameEvaluator eval_;
};

// Forcing as truth in every cone generic through the condition.
class SemanticOracle {
 public:
  explicit SemanticOracle(const Preorder& p);

  const Preorder& order() const { return *order_; }
  const std::vector<Cond>& minimal() const { return minimal_; }
  GenericModel& model(std::size_t i) { return models_[i]; }

  // Bit i set when the formula holds in the cone of minimal()[i].
  boost::dynamic_bitset<> truth(const InfFormula& f);
  boost::dynamic_bitset<> truth(const Atomic& a);
  ConditionSet forcing_set(const boost::dynamic_bitset<>& truth) const;
  ConditionSet forcing_set(const InfFormula& f) { return forcing_set(truth(f)); }
  ConditionSet forcing_set(const Atomic& a) { return forcing_set(truth(a)); }
  Verdict verdict(Cond p, const boost::dynamic_bitset<>& truth) const;
  Verdict forces(Cond p, const InfFormula& f) { return verdict(p, truth(f)); }
  Verdict forces(Cond p, const Atomic& a) { return verdict(p, truth(a)); }

 private:
  const Preorder* order_;
  std::vector<Cond> minimal_;
  std::vector<GenericModel> models_;
};

Verdict semantic_forces(const Preorder& p, Cond c, const InfFormula& f);
Verdict semantic_forces(const Preorder& p, Cond c, const Atomic& a);

// The recursive forcing relation for atomic formulas: membership through
// density of conditions forcing equality with an entry, inclusion through
// density of conditions forcing membership of each entry.
class AtomicForcing {
 public:
  explicit AtomicForcing(const Preorder& p) : order_(&p) {}

  const Preorder& order() const { return *order_; }
  const ConditionSet& mem(const PName& s, const PName& t);
  const ConditionSet& sub(const PName& s, const PName& t);
  ConditionSet eq(const PName& s, const PName& t);
  ConditionSet forcing_set(const Atomic& a);
  Verdict forces(Cond p, const Atomic& a);

 private:
  using Key = std::pair<const void*, const void*>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return std::hash<const void*>{}(k.first) * 31 + std::hash<const void*>{}(k.second);
    }
  };

  const Preorder* order_;
  std::unordered_map<Key, ConditionSet, KeyHash> mem_;
  std::unordered_map<Key, ConditionSet, KeyHash> sub_;
};

Verdict syntactic_forces_atomic(const Preorder& p, Cond c, const Atomic& a);

// Conditions forcing the atom or its negation. Throws if this set is not dense.
ConditionSet decidability_frontier(const Preorder& p, const Atomic& a);

// Conditions forcing nu = mu for the names attached to f.
ConditionSet nu_mu_forcing_set(AtomicForcing& engine, const InfFormula& f);
bool forces_via_nu_mu(const Preorder& p, Cond c, const InfFormula& f);

// Subname-closed finite set of names used as the range of quantifiers.
class NamePool {
 public:
  NamePool() = default;
  // Throws if some member has a subname outside the pool.
  static NamePool closed(std::vector<PName> names);
  static NamePool closure_of(const std::vector<PName>& names);

  const std::vector<PName>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  bool contains(const PName& s) const;

 private:
  std::vector<PName> names_;
};

// Forcing for first-order formulas whose quantifiers range over a pool and
// whose class predicates A_k are interpreted by names.
class FOForcing {
 public:
  FOForcing(const Preorder& p, NamePool pool, std::vector<PName> classes = {});

  ConditionSet forcing_set(const FOFormula& f, const std::vector<PName>& assignment);
  bool forces(Cond p, const FOFormula& f, const std::vector<PName>& assignment);
  // Pool-relativized truth in one generic filter.
  bool holds_at(const ConditionSet& filter, const FOFormula& f, const std::vector<PName>& assignment);
  // Conditions for which the formula holds in every cone generic through them.
  ConditionSet semantic_forcing_set(const FOFormula& f, const std::vector<PName>& assignment);
  const NamePool& pool() const { return pool_; }
  AtomicForcing& atomic() { return atomic_; }

 private:
  ConditionSet compute(const FOFormula& f, std::vector<std::optional<PName>>& env);
  bool holds(GenericModel& model, const FOFormula& f, std::vector<std::optional<PName>>& env);

  const Preorder* order_;
  NamePool pool_;
  std::vector<PName> classes_;
  AtomicForcing atomic_;
};

struct TruthLemmaOutcome {
  bool holds = false;
  // Weakest-first member of the filter forcing the formula, when it holds.
  std::optional<Cond> witness;
  bool ok() const { return !holds || witness.has_value(); }
};

// Throws if the filter is not a cone generic.
TruthLemmaOutcome truth_lemma_check(const Preorder& p, const ConditionSet& filter, const InfFormula& f);
TruthLemmaOutcome truth_lemma_check(FOForcing& forcing, const ConditionSet& filter, const FOFormula& f,
                                    const std::vector<PName>& assignment);

// Boolean values of atomic statements in a complete Boolean algebra. Built
// from a preorder it uses the regular open algebra of the separative
// quotient and transports names through the quotient.
class BooleanValuation {
 public:
  explicit BooleanValuation(const Preorder& p, std::size_t max_size = kDefaultAlgebraBound);
  // The source must be separative and antisymmetric, and the embedding dense.
  explicit BooleanValuation(Completion completion);

  const Completion& completion() const { return completion_; }
  const FiniteBooleanAlgebra& algebra() const { return completion_.algebra; }
  // Image of a condition of the preorder the valuation was built from.
  Elem embed(Cond p) const;
  // Names are over the preorder the valuation was built from.
  Elem value(const Atomic& a);
  bool forces(Cond p, const Atomic& a) { return algebra().leq(embed(p), value(a)); }

 private:
  Elem mem(const PName& s, const PName& t);
  Elem sub(const PName& s, const PName& t);
  Elem eq(const PName& s, const PName& t);

  std::optional<QuotientMap> quotient_;
  Completion completion_;
  std::map<std::pair<const void*, const void*>, Elem> mem_;
  std::map<std::pair<const void*, const void*>, Elem> sub_;
};

// Regular open set of conditions forcing f (computed through nu/mu).
Elem formula_to_ro(const RegularOpenAlgebra& ro, AtomicForcing& engine, const InfFormula& f);

// Inclusion forcing in the form
//   for all <rho,s> in sigma, all q <= p, some r <= q: r <= s implies
//   some <pi,t> in tau with r <= t and r forcing rho = pi.
class StarForcing {
 public:
  explicit StarForcing(const Preorder& p) : order_(&p) {}
  const ConditionSet& sub(const PName& s, const PName& t);
  ConditionSet eq(const PName& s, const PName& t);
  ConditionSet forcing_set(const Atomic& a);

 private:
  const Preorder* order_;
  std::map<std::pair<const void*, const void*>, ConditionSet> sub_;
};

}  // namespace forcelab
