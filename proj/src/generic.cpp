#include "forcelab/generic.hpp"

#include <algorithm>

namespace forcelab {

ScheduledGeneric rasiowa_sikorski(const Preorder& p, const std::vector<DenseProvider<Cond>>& schedule, Cond start,
                                  std::mt19937_64* rng) {
  if (start >= p.size()) throw Error("start condition out of range");
  ScheduledGeneric out;
  out.chain = rasiowa_sikorski(schedule, start, [&](Cond a, Cond b) { return p.le(a, b); }, rng);
  out.filter = p.above(out.chain.back());
  return out;
}

bool filter_validate(const Preorder& p, const ConditionSet& s) { return s.size() == p.size() && is_filter(p, s); }

bool meets_schedule(const Preorder& p, const ConditionSet& filter, const std::vector<DenseProvider<Cond>>& schedule) {
  for (const auto& d : schedule) {
    bool met = false;
    for (Cond c : members(filter)) met |= d.contains(c);
    if (!met) return false;
  }
  return p.size() == filter.size();
}

std::vector<DenseProvider<Cond>> collapse_schedule(const CollapseForcing& c) {
  std::vector<DenseProvider<Cond>> out;
  for (auto& d : collapse_dense_sets(c)) {
    ConditionSet members = d.members;
    out.push_back({d.name, [members](const Cond& p) { return static_cast<bool>(members[p]); }, d.extend});
  }
  return out;
}

namespace {

bool in_range(const FriedmanCondition& p, const HFSet& x) {
  return std::any_of(p.f.begin(), p.f.end(), [&](const auto& kv) { return kv.second == x; });
}

}  // namespace

std::vector<DenseProvider<FriedmanCondition>> friedman_schedule(const FriedmanForcing& f) {
  std::vector<DenseProvider<FriedmanCondition>> out;
  const FriedmanForcing* fp = &f;
  for (std::size_t n = 0; n < f.indices(); ++n) {
    DenseProvider<FriedmanCondition> d;
    d.name = "dom:" + std::to_string(n);
    d.contains = [n](const FriedmanCondition& p) { return p.f.count(n) > 0; };
    d.extend = [fp, n](const FriedmanCondition& p, std::mt19937_64* rng) {
      if (p.f.count(n)) return p;
      std::vector<HFSet> unused;
      for (const HFSet& x : fp->model().carrier()) {
        if (!in_range(p, x)) unused.push_back(x);
      }
      if (unused.empty()) throw BoundError("no unused set left for index " + std::to_string(n));
      std::size_t k = rng ? std::uniform_int_distribution<std::size_t>(0, unused.size() - 1)(*rng) : 0;
      return friedman_surjectivity_extension(*fp, p, unused[k], n);
    };
    out.push_back(std::move(d));
  }
  for (const HFSet& x : f.model().carrier()) {
    DenseProvider<FriedmanCondition> d;
    d.name = "ran:" + x.to_string();
    d.contains = [x](const FriedmanCondition& p) { return in_range(p, x); };
    d.extend = [fp, x](const FriedmanCondition& p, std::mt19937_64* rng) {
      if (in_range(p, x)) return p;
      std::vector<std::size_t> fresh;
      for (std::size_t k = 0; k < fp->indices(); ++k) {
        if (!p.d.count(k)) fresh.push_back(k);
      }
      if (fresh.empty()) throw BoundError("no fresh index left for " + x.to_string());
      std::size_t k = rng ? std::uniform_int_distribution<std::size_t>(0, fresh.size() - 1)(*rng) : 0;
      return friedman_surjectivity_extension(*fp, p, x, fresh[k]);
    };
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<FriedmanCondition> friedman_generic(const FriedmanForcing& f,
                                                const std::vector<DenseProvider<FriedmanCondition>>& schedule,
                                                std::mt19937_64* rng) {
  auto chain = rasiowa_sikorski(schedule, f.top(), &FriedmanForcing::le, rng);
  for (const auto& p : chain) {
    if (auto why = f.why_invalid(p); !why.empty()) throw Error("scheduler produced an invalid condition: " + why);
  }
  return chain;
}

}  // namespace forcelab
