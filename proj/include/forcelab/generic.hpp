#pragma once

#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "forcelab/collapse.hpp"
#include "forcelab/error.hpp"
#include "forcelab/friedman.hpp"
#include "forcelab/order.hpp"

namespace forcelab {

// A set to be met, given by a membership test and a way to strengthen any
// condition into it.
template <class C>
struct DenseProvider {
  std::string name;
  std::function<bool(const C&)> contains;
  std::function<C(const C&, std::mt19937_64*)> extend;
};

// Descending chain start >= p_1 >= ... meeting each provider in turn. Every
// extension is checked to be stronger and inside its set.
template <class C, class Le>
std::vector<C> rasiowa_sikorski(const std::vector<DenseProvider<C>>& schedule, C start, Le le,
                                std::mt19937_64* rng = nullptr) {
  std::vector<C> chain{std::move(start)};
  for (const auto& d : schedule) {
    C next = d.extend(chain.back(), rng);
    if (!le(next, chain.back())) throw Error("extender for " + d.name + " did not strengthen the condition");
    if (!d.contains(next)) throw Error("extender for " + d.name + " left the set");
    chain.push_back(std::move(next));
  }
  return chain;
}

struct ScheduledGeneric {
  std::vector<Cond> chain;
  // Conditions above the last link of the chain.
  ConditionSet filter;
};

ScheduledGeneric rasiowa_sikorski(const Preorder& p, const std::vector<DenseProvider<Cond>>& schedule, Cond start,
                                  std::mt19937_64* rng = nullptr);

// Upward closed, directed inside itself, contains top.
bool filter_validate(const Preorder& p, const ConditionSet& s);
// The filter meets every set of the schedule.
bool meets_schedule(const Preorder& p, const ConditionSet& filter, const std::vector<DenseProvider<Cond>>& schedule);

std::vector<DenseProvider<Cond>> collapse_schedule(const CollapseForcing& c);

// "dom:n" for every index n, then "ran:x" for every x in the ground model.
// Conditions must have f defined on all of d.
std::vector<DenseProvider<FriedmanCondition>> friedman_schedule(const FriedmanForcing& f);

std::vector<FriedmanCondition> friedman_generic(const FriedmanForcing& f,
                                                const std::vector<DenseProvider<FriedmanCondition>>& schedule,
                                                std::mt19937_64* rng = nullptr);

}  // namespace forcelab
