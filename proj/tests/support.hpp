#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "forcelab/hf.hpp"
#include "forcelab/names.hpp"
#include "forcelab/order.hpp"

namespace forcelab::testing {

inline Preorder make_order(std::vector<std::string> ids, const std::vector<std::pair<std::string, std::string>>& le,
                           const std::string& top = "1") {
  std::vector<std::pair<Cond, Cond>> gens;
  auto find = [&](const std::string& id) {
    for (Cond i = 0; i < ids.size(); ++i) {
      if (ids[i] == id) return i;
    }
    return ids.size();
  };
  for (const auto& [p, q] : le) gens.emplace_back(find(p), find(q));
  for (Cond i = 0; i < ids.size(); ++i) gens.emplace_back(i, find(top));
  return Preorder::from_generators(ids, gens, find(top));
}

// {1, a, b} with a, b incompatible below 1.
inline Preorder p3() { return make_order({"1", "a", "b"}, {}); }

// 1 > a > b > ...
inline Preorder chain(std::size_t n) {
  std::vector<std::string> ids{"1"};
  std::vector<std::pair<std::string, std::string>> le;
  for (std::size_t i = 1; i < n; ++i) {
    ids.push_back(std::string(1, static_cast<char>('a' + i - 1)));
    le.emplace_back(ids[i], ids[i - 1]);
  }
  return make_order(ids, le);
}

inline ConditionSet set_of(const Preorder& p, const std::vector<std::string>& ids) {
  ConditionSet s = p.empty_set();
  for (const auto& id : ids) s.set(p.index(id));
  return s;
}

inline ConditionSet mask_set(std::size_t n, std::uint64_t mask) {
  ConditionSet s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1;
  return s;
}

// Oracle: Ackermann number of a small hereditarily finite set.
inline std::uint64_t ackermann(const HFSet& x) {
  std::uint64_t n = 0;
  for (const auto& y : x.elements()) n |= std::uint64_t{1} << ackermann(y);
  return n;
}

// Oracle: plain recursive evaluation without caching.
inline HFSet naive_value(const PName& s, const ConditionSet& g) {
  std::vector<HFSet> out;
  for (const auto& e : s.entries()) {
    if (g[e.cond]) out.push_back(naive_value(e.name, g));
  }
  return HFSet::of(out);
}

// Oracle: compatibility straight from the definition.
inline bool naive_compatible(const Preorder& p, Cond x, Cond y) {
  for (Cond r = 0; r < p.size(); ++r) {
    if (p.le(r, x) && p.le(r, y)) return true;
  }
  return false;
}

// Oracle: dense sets and filters by enumeration; generic = meets every dense set.
inline std::vector<ConditionSet> brute_generic_filters(const Preorder& p) {
  const std::size_t n = p.size();
  std::vector<ConditionSet> dense;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    auto d = mask_set(n, mask);
    bool ok = true;
    for (Cond q = 0; q < n && ok; ++q) {
      bool hit = false;
      for (Cond x = 0; x < n && !hit; ++x) hit = d[x] && p.le(x, q);
      ok = hit;
    }
    if (ok) dense.push_back(d);
  }
  std::vector<ConditionSet> generic;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    auto g = mask_set(n, mask);
    if (!g[p.top()]) continue;
    bool filter = true;
    for (Cond x = 0; x < n && filter; ++x) {
      for (Cond y = 0; y < n && filter; ++y) {
        if (g[x] && p.le(x, y) && !g[y]) filter = false;
        if (g[x] && g[y]) {
          bool common = false;
          for (Cond r = 0; r < n && !common; ++r) common = g[r] && p.le(r, x) && p.le(r, y);
          filter = common;
        }
      }
    }
    if (!filter) continue;
    bool meets = true;
    for (const auto& d : dense) meets = meets && d.intersects(g);
    if (meets) generic.push_back(g);
  }
  return generic;
}

// Oracle: regular open sets by enumerating all subsets.
inline std::vector<ConditionSet> brute_regular_open(const Preorder& p) {
  const std::size_t n = p.size();
  std::vector<ConditionSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    auto u = mask_set(n, mask);
    bool ok = true;
    for (Cond x = 0; x < n && ok; ++x) {
      for (Cond y = 0; y < n && ok; ++y) {
        if (u[x] && p.le(y, x) && !u[y]) ok = false;
      }
    }
    for (Cond x = 0; x < n && ok; ++x) {
      bool inside = true;
      for (Cond q = 0; q < n && inside; ++q) {
        if (!p.le(q, x)) continue;
        bool hit = false;
        for (Cond r = 0; r < n && !hit; ++r) hit = p.le(r, q) && u[r];
        inside = hit;
      }
      if (inside != static_cast<bool>(u[x])) ok = false;
    }
    if (ok) out.push_back(u);
  }
  return out;
}

}  // namespace forcelab::testing
