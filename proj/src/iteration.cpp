#include "forcelab/iteration.hpp"

#include <algorithm>
#include <map>

#include "forcelab/error.hpp"
#include "forcelab/forcing.hpp"

namespace forcelab {

NamedPreorder check_named(const Preorder& q, Cond first_top) {
  NamedPreorder out;
  std::vector<NameEntry> domain;
  std::vector<PName> checks;
  for (Cond c = 0; c < q.size(); ++c) {
    checks.push_back(check_name(HFSet::natural(c), first_top));
    domain.push_back({checks.back(), first_top});
    out.pool.push_back({q.id(c), checks.back()});
  }
  std::vector<NameEntry> order;
  for (Cond c = 0; c < q.size(); ++c) {
    for (Cond d : members(q.above(c))) order.push_back({op_name(checks[c], checks[d], first_top), first_top});
  }
  out.domain = PName::of(std::move(domain));
  out.order = PName::of(std::move(order));
  out.top = checks[q.top()];
  return out;
}

SecondFactor second_factor(const NamedPreorder& q, const ConditionSet& filter) {
  NameEvaluator eval(filter);
  HFSet domain = eval(q.domain);
  HFSet relation = eval(q.order);
  HFSet top = eval(q.top);
  SecondFactor out;
  out.elements.assign(domain.elements().begin(), domain.elements().end());
  std::map<HFSet, Cond> index;
  for (Cond i = 0; i < out.elements.size(); ++i) index.emplace(out.elements[i], i);
  auto top_it = index.find(top);
  if (top_it == index.end()) throw Error("the top " + top.to_string() + " is not in the domain");
  std::vector<ConditionSet> rows(out.elements.size(), ConditionSet(out.elements.size()));
  for (const HFSet& pair : relation.elements()) {
    auto parts = kuratowski_components(pair);
    if (!parts) throw Error(pair.to_string() + " in the order is not an ordered pair");
    auto a = index.find(parts->first);
    auto b = index.find(parts->second);
    if (a == index.end() || b == index.end()) {
      throw Error("the order relates " + pair.to_string() + " outside the domain");
    }
    rows[a->second].set(b->second);
  }
  std::vector<std::string> ids;
  for (const HFSet& x : out.elements) ids.push_back(x.to_string());
  out.order = Preorder::from_relation(std::move(ids), std::move(rows), top_it->second);
  return out;
}

void verify_named_preorder(const Preorder& p, const NamedPreorder& q) {
  for (Cond m : minimal_classes(p)) {
    try {
      second_factor(q, cone(p, m));
    } catch (const Error& e) {
      throw Error("in the cone of " + p.id(m) + ": " + e.what());
    }
  }
}

TwoStepIteration::TwoStepIteration(Preorder first, NamedPreorder second, std::size_t max_conditions)
    : first_(std::move(first)), second_(std::move(second)) {
  for (const auto& entry : second_.pool) {
    validate_name(entry.name, first_);
  }
  validate_name(second_.domain, first_);
  validate_name(second_.order, first_);
  validate_name(second_.top, first_);
  // Forcing over a finite order is truth in every cone generic below the condition.
  std::vector<Cond> minimal = minimal_classes(first_);
  std::vector<SecondFactor> factors;
  std::vector<std::vector<std::optional<Cond>>> position(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    ConditionSet g = cone(first_, minimal[i]);
    try {
      factors.push_back(second_factor(second_, g));
    } catch (const Error& e) {
      throw Error("in the cone of " + first_.id(minimal[i]) + ": " + e.what());
    }
    NameEvaluator eval(g);
    for (const auto& entry : second_.pool) {
      HFSet value = eval(entry.name);
      const auto& elements = factors[i].elements;
      auto it = std::find(elements.begin(), elements.end(), value);
      position[i].push_back(it == elements.end() ? std::nullopt : std::optional<Cond>(it - elements.begin()));
    }
  }
  auto below = [&](Cond p) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      if (first_.le(minimal[i], p)) out.push_back(i);
    }
    return out;
  };
  std::vector<std::vector<std::size_t>> generics_below;
  for (Cond p = 0; p < first_.size(); ++p) generics_below.push_back(below(p));
  const std::size_t k = second_.pool.size();
  for (std::size_t j = 0; j < k; ++j) {
    for (Cond p = 0; p < first_.size(); ++p) {
      bool in_domain = true;
      for (std::size_t i : generics_below[p]) in_domain = in_domain && position[i][j].has_value();
      if (!in_domain) continue;
      if (pairs_.size() >= max_conditions) {
        throw BoundError("the iteration exceeds " + std::to_string(max_conditions) + " conditions");
      }
      pairs_.emplace_back(p, j);
    }
  }
  std::vector<std::string> ids;
  for (const auto& [p, j] : pairs_) ids.push_back("(" + first_.id(p) + "," + second_.pool[j].label + ")");
  const std::size_t n = pairs_.size();
  std::vector<ConditionSet> rows(n, ConditionSet(n));
  for (Cond x = 0; x < n; ++x) {
    const auto& [p0, q0] = pairs_[x];
    for (Cond y = 0; y < n; ++y) {
      const auto& [p1, q1] = pairs_[y];
      if (!first_.le(p0, p1)) continue;
      bool forced = true;
      for (std::size_t i : generics_below[p0]) {
        forced = forced && factors[i].order.le(*position[i][q0], *position[i][q1]);
      }
      if (forced) rows[x].set(y);
    }
  }
  std::optional<Cond> top;
  for (Cond x = 0; x < n; ++x) {
    if (pairs_[x].first == first_.top() && second_.pool[pairs_[x].second].name == second_.top) top = x;
  }
  if (!top) throw Error("the pair of both tops is not a condition; add the top name to the pool");
  order_ = Preorder::from_relation(std::move(ids), std::move(rows), *top);
}

std::optional<Cond> TwoStepIteration::find(Cond p, std::size_t k) const {
  for (Cond x = 0; x < pairs_.size(); ++x) {
    if (pairs_[x] == std::pair{p, k}) return x;
  }
  return std::nullopt;
}

ConditionSet TwoStepIteration::compose(const ConditionSet& g, const std::set<HFSet>& h) const {
  NameEvaluator eval(g);
  ConditionSet out = order_.empty_set();
  for (Cond x = 0; x < pairs_.size(); ++x) {
    const auto& [p, k] = pairs_[x];
    if (g[p] && h.contains(eval(second_.pool[k].name))) out.set(x);
  }
  return out;
}

std::vector<std::optional<Cond>> TwoStepIteration::lift_map() const {
  std::vector<std::optional<Cond>> map;
  for (std::size_t k = 0; k < second_.pool.size(); ++k) map.push_back(find(first_.top(), k));
  return map;
}

CheckOutcome check_composed_generics(const TwoStepIteration& it) {
  CheckOutcome out;
  std::set<ConditionSet> expected;
  for (const auto& g : cone_generics(it.order())) expected.insert(g);
  std::set<ConditionSet> seen;
  for (const auto& g : cone_generics(it.first())) {
    SecondFactor factor = second_factor(it.second(), g);
    for (const auto& h : cone_generics(factor.order)) {
      std::set<HFSet> values;
      for (Cond i : members(h)) values.insert(factor.elements[i]);
      ConditionSet composed = it.compose(g, values);
      ++out.checked;
      if (!expected.contains(composed)) {
        out.ok = false;
        out.failure = "composition " + format_set(it.order(), composed) + " of " + format_set(it.first(), g) +
                      " and " + format_set(factor.order, h) + " is not a cone generic";
        return out;
      }
      seen.insert(composed);
    }
  }
  if (seen != expected) {
    for (const auto& g : expected) {
      if (!seen.contains(g)) {
        out.ok = false;
        out.failure = "cone generic " + format_set(it.order(), g) + " is not a composition";
        return out;
      }
    }
  }
  return out;
}

}  // namespace forcelab
