#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "forcelab/check.hpp"
#include "forcelab/hf.hpp"
#include "forcelab/names.hpp"
#include "forcelab/order.hpp"

namespace forcelab {

struct PoolName {
  std::string label;
  PName name;
};

// A second forcing given by names over the first: its domain, its order as a
// set of ordered pairs, its top, and the names allowed as second coordinates.
struct NamedPreorder {
  PName domain;
  PName order;
  PName top;
  std::vector<PoolName> pool;
};

// Check names of the naturals coding q's conditions. Pool labels are q's ids.
NamedPreorder check_named(const Preorder& q, Cond first_top);

// The second forcing as evaluated in one filter of the first.
struct SecondFactor {
  std::vector<HFSet> elements;
  Preorder order;
};

// Throws Error if the evaluated order is not a preorder on the evaluated
// domain with the evaluated top as greatest element.
SecondFactor second_factor(const NamedPreorder& q, const ConditionSet& filter);

// Evaluates the named preorder in every cone generic of p; throws Error naming
// the first cone where it fails.
void verify_named_preorder(const Preorder& p, const NamedPreorder& q);

// Pairs <p, k> with p forcing pool[k] into the domain, ordered by
// p0 <= p1 and p0 forcing op(pool[k0], pool[k1]) into the order.
class TwoStepIteration {
 public:
  TwoStepIteration(Preorder first, NamedPreorder second, std::size_t max_conditions = 4096);

  const Preorder& first() const { return first_; }
  const NamedPreorder& second() const { return second_; }
  const Preorder& order() const { return order_; }
  std::size_t size() const { return pairs_.size(); }
  const std::pair<Cond, std::size_t>& pair(Cond c) const { return pairs_[c]; }
  std::optional<Cond> find(Cond p, std::size_t k) const;

  // {<p, k> : p in G, pool[k]^G in H}
  ConditionSet compose(const ConditionSet& g, const std::set<HFSet>& h) const;
  // Pool entry k sent to <1, k>, or nullopt when that pair is not a condition.
  std::vector<std::optional<Cond>> lift_map() const;

 private:
  Preorder first_;
  NamedPreorder second_;
  std::vector<std::pair<Cond, std::size_t>> pairs_;
  Preorder order_;
};

// For every cone generic G of the first factor and every cone generic H of the
// second factor evaluated at G, the composition is a generic filter of the
// iteration meeting every dense set; and every cone generic of the iteration
// arises this way.
CheckOutcome check_composed_generics(const TwoStepIteration& it);

}  // namespace forcelab
