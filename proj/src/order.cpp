#include "forcelab/order.hpp"

#include <algorithm>
#include <map>

#include "forcelab/error.hpp"

namespace forcelab {

std::vector<Cond> members(const ConditionSet& s) {
  std::vector<Cond> out;
  for (auto i = s.find_first(); i != ConditionSet::npos; i = s.find_next(i)) out.push_back(i);
  return out;
}

Preorder Preorder::from_generators(std::vector<std::string> ids,
                                   std::span<const std::pair<Cond, Cond>> generators, Cond top) {
  const std::size_t n = ids.size();
  std::vector<ConditionSet> rows(n, ConditionSet(n));
  for (Cond p = 0; p < n; ++p) rows[p].set(p);
  for (auto [p, q] : generators) {
    if (p >= n || q >= n) throw Error("preorder generator refers to an unknown condition");
    rows[p].set(q);
  }
  for (Cond k = 0; k < n; ++k) {
    for (Cond i = 0; i < n; ++i) {
      if (rows[i][k]) rows[i] |= rows[k];
    }
  }
  return from_relation(std::move(ids), std::move(rows), top);
}

Preorder Preorder::from_relation(std::vector<std::string> ids, std::vector<ConditionSet> rows, Cond top) {
  const std::size_t n = ids.size();
  if (n == 0) throw Error("a preorder needs at least one condition");
  if (rows.size() != n) throw Error("relation size does not match the carrier");
  if (top >= n) throw Error("top element out of range");
  Preorder p;
  p.ids_ = std::move(ids);
  p.top_ = top;
  p.index_ids();
  for (Cond i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw Error("relation row has the wrong width");
    if (!rows[i][i]) throw Error("relation is not reflexive at " + p.ids_[i]);
    if (!rows[i][top]) throw Error("'" + p.ids_[top] + "' is not above '" + p.ids_[i] + "'");
  }
  for (Cond i = 0; i < n; ++i) {
    for (Cond j : members(rows[i])) {
      if (!rows[j].is_subset_of(rows[i])) {
        throw Error("relation is not transitive at " + p.ids_[i] + " <= " + p.ids_[j]);
      }
    }
  }
  p.above_ = std::move(rows);
  p.below_.assign(n, ConditionSet(n));
  for (Cond i = 0; i < n; ++i) {
    for (Cond j : members(p.above_[i])) p.below_[j].set(i);
  }
  return p;
}

void Preorder::index_ids() {
  lookup_.clear();
  for (Cond i = 0; i < ids_.size(); ++i) {
    if (!lookup_.emplace(ids_[i], i).second) throw Error("duplicate condition identifier '" + ids_[i] + "'");
  }
}

std::optional<Cond> Preorder::find(std::string_view id) const {
  auto it = lookup_.find(std::string(id));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Cond Preorder::index(std::string_view id) const {
  auto c = find(id);
  if (!c) throw Error("unknown condition '" + std::string(id) + "'");
  return *c;
}

ConditionSet Preorder::singleton(Cond p) const {
  ConditionSet s(size());
  s.set(p);
  return s;
}

ConditionSet Preorder::reach(const ConditionSet& d) const {
  ConditionSet out(size());
  for (auto i = d.find_first(); i != ConditionSet::npos; i = d.find_next(i)) out |= above_[i];
  return out;
}

ConditionSet Preorder::dense_below_set(const ConditionSet& d) const {
  ConditionSet r = reach(d);
  ConditionSet out(size());
  for (Cond p = 0; p < size(); ++p) {
    if (below_[p].is_subset_of(r)) out.set(p);
  }
  return out;
}

ConditionSet Preorder::avoiding_set(const ConditionSet& d) const {
  ConditionSet out(size());
  for (Cond p = 0; p < size(); ++p) {
    if (!below_[p].intersects(d)) out.set(p);
  }
  return out;
}

ConditionSet Preorder::upward_closure(const ConditionSet& s) const { return reach(s); }

ConditionSet Preorder::downward_closure(const ConditionSet& s) const {
  ConditionSet out(size());
  for (auto i = s.find_first(); i != ConditionSet::npos; i = s.find_next(i)) out |= below_[i];
  return out;
}

bool Preorder::is_antisymmetric() const {
  for (Cond p = 0; p < size(); ++p) {
    for (Cond q = p + 1; q < size(); ++q) {
      if (equivalent(p, q)) return false;
    }
  }
  return true;
}

Suborder induced_suborder(const Preorder& p, const ConditionSet& subset) {
  Suborder s;
  s.from_parent.assign(p.size(), std::nullopt);
  s.to_parent = members(subset);
  std::vector<std::string> ids;
  for (Cond i = 0; i < s.to_parent.size(); ++i) {
    s.from_parent[s.to_parent[i]] = i;
    ids.push_back(p.id(s.to_parent[i]));
  }
  if (!s.from_parent[p.top()]) throw Error("suborder must contain the top condition");
  const std::size_t n = ids.size();
  std::vector<ConditionSet> rows(n, ConditionSet(n));
  for (Cond i = 0; i < n; ++i) {
    for (Cond j = 0; j < n; ++j) {
      if (p.le(s.to_parent[i], s.to_parent[j])) rows[i].set(j);
    }
  }
  s.order = Preorder::from_relation(std::move(ids), std::move(rows), *s.from_parent[p.top()]);
  return s;
}

bool is_dense(const Preorder& p, const ConditionSet& d) { return p.dense_below_set(d).all(); }

bool is_dense_below(const Preorder& p, const ConditionSet& d, Cond q) {
  return p.below(q).is_subset_of(p.reach(d));
}

bool is_open_dense(const Preorder& p, const ConditionSet& d) {
  return is_dense(p, d) && p.downward_closure(d) == d;
}

bool is_predense_below(const Preorder& p, const ConditionSet& a, Cond q) {
  // Conditions compatible with a member of `a` are those reaching down into a's down-closure.
  ConditionSet compatible = p.reach(p.downward_closure(a));
  return p.below(q).is_subset_of(compatible);
}

bool is_antichain(const Preorder& p, const ConditionSet& a) {
  auto m = members(a);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (p.compatible(m[i], m[j])) return false;
    }
  }
  return true;
}

bool is_maximal_antichain(const Preorder& p, const ConditionSet& a) {
  return is_antichain(p, a) && is_predense_below(p, a, p.top());
}

ConditionSet zero_like(const Preorder& p) {
  ConditionSet out = p.empty_set();
  for (Cond x = 0; x < p.size(); ++x) {
    if (p.above(x).count() == p.size() && !p.le(p.top(), x)) out.set(x);
  }
  return out;
}

bool is_separative(const Preorder& p) {
  for (Cond x = 0; x < p.size(); ++x) {
    for (Cond y = 0; y < p.size(); ++y) {
      if (p.le(x, y)) continue;
      bool witness = false;
      for (Cond r : members(p.below(x))) {
        if (!p.compatible(r, y)) {
          witness = true;
          break;
        }
      }
      if (!witness) return false;
    }
  }
  return true;
}

bool is_filter(const Preorder& p, const ConditionSet& s) {
  if (!s[p.top()]) return false;
  if (p.upward_closure(s) != s) return false;
  auto m = members(s);
  for (Cond x : m) {
    for (Cond y : m) {
      if (!(p.below(x) & p.below(y)).intersects(s)) return false;
    }
  }
  return true;
}

bool is_minimal(const Preorder& p, Cond c) {
  for (Cond d : members(p.below(c))) {
    if (!p.le(c, d)) return false;
  }
  return true;
}

std::vector<Cond> minimal_classes(const Preorder& p) {
  std::vector<Cond> out;
  for (Cond c = 0; c < p.size(); ++c) {
    if (!is_minimal(p, c)) continue;
    bool fresh = std::none_of(out.begin(), out.end(), [&](Cond r) { return p.equivalent(r, c); });
    if (fresh) out.push_back(c);
  }
  return out;
}

namespace {

// Groups conditions by key; classes are ordered by their lowest member.
template <class Key>
QuotientMap quotient_by(const Preorder& p, const std::vector<Key>& key,
                        const std::function<bool(Cond, Cond)>& class_le) {
  QuotientMap q;
  q.source = p;
  q.map.assign(p.size(), 0);
  std::vector<Cond> reps;
  std::map<Key, Cond> seen;
  for (Cond c = 0; c < p.size(); ++c) {
    auto [it, inserted] = seen.emplace(key[c], reps.size());
    if (inserted) reps.push_back(c);
    q.map[c] = it->second;
  }
  std::vector<std::string> ids;
  for (Cond r : reps) ids.push_back(p.id(r));
  const std::size_t n = reps.size();
  std::vector<ConditionSet> rows(n, ConditionSet(n));
  for (Cond i = 0; i < n; ++i) {
    for (Cond j = 0; j < n; ++j) {
      if (class_le(reps[i], reps[j])) rows[i].set(j);
    }
  }
  q.target = Preorder::from_relation(std::move(ids), std::move(rows), q.map[p.top()]);
  return q;
}

std::vector<ConditionSet> compatibility_sets(const Preorder& p) {
  std::vector<ConditionSet> c;
  c.reserve(p.size());
  for (Cond x = 0; x < p.size(); ++x) c.push_back(p.reach(p.below(x)));
  return c;
}

}  // namespace

QuotientMap separative_quotient(const Preorder& p) {
  auto compat = compatibility_sets(p);
  return quotient_by<ConditionSet>(p, compat, [&](Cond x, Cond y) { return compat[x].is_subset_of(compat[y]); });
}

QuotientMap antisymmetric_quotient(const Preorder& p) {
  std::vector<ConditionSet> key;
  for (Cond x = 0; x < p.size(); ++x) key.push_back(p.above(x));
  return quotient_by<ConditionSet>(p, key, [&](Cond x, Cond y) { return p.le(x, y); });
}

namespace {

std::string fresh_id(const Preorder& p, std::string base) {
  while (p.find(base)) base += "'";
  return base;
}

void check_transitive(const std::vector<std::string>& ids, const std::vector<ConditionSet>& rows,
                      const std::string& context) {
  for (Cond i = 0; i < rows.size(); ++i) {
    for (Cond j : members(rows[i])) {
      if (rows[j].is_subset_of(rows[i])) continue;
      ConditionSet missing = rows[j] - rows[i];
      Cond k = missing.find_first();
      throw Error(context + ": relation is not transitive: " + ids[i] + " <= " + ids[j] + " <= " + ids[k] +
                  " but not " + ids[i] + " <= " + ids[k]);
    }
  }
}

}  // namespace

Extension add_supremum(const Preorder& p, const ConditionSet& a) {
  const std::size_t n = p.size();
  Extension ext;
  if (a.none()) ext.warnings.push_back("supremum of the empty set is a bottom element");
  std::string label = "sup" + format_set(p, a);
  std::vector<std::string> ids = p.ids();
  ids.push_back(fresh_id(p, label));
  std::vector<ConditionSet> rows(n + 1, ConditionSet(n + 1));
  for (Cond x = 0; x < n; ++x) {
    for (Cond y : members(p.above(x))) rows[x].set(y);
    if (is_predense_below(p, a, x)) rows[x].set(n);
  }
  rows[n].set(n);
  for (Cond y = 0; y < n; ++y) {
    bool upper = true;
    for (Cond x : members(a)) upper = upper && p.le(x, y);
    if (upper) rows[n].set(y);
  }
  check_transitive(ids, rows, "add_supremum");
  ext.order = Preorder::from_relation(std::move(ids), std::move(rows), p.top());
  ext.added = n;
  return ext;
}

Extension add_negation(const Preorder& p, Cond q) {
  if (!is_separative(p)) throw Error("add_negation requires a separative preorder");
  const std::size_t n = p.size();
  std::vector<std::string> ids = p.ids();
  ids.push_back(fresh_id(p, "not(" + p.id(q) + ")"));
  auto compatible = [&](Cond x, Cond y) { return p.compatible(x, y); };
  std::vector<ConditionSet> rows(n + 1, ConditionSet(n + 1));
  for (Cond x = 0; x < n; ++x) {
    for (Cond y : members(p.above(x))) rows[x].set(y);
    if (!compatible(x, q)) rows[x].set(n);
  }
  rows[n].set(n);
  for (Cond y = 0; y < n; ++y) {
    bool below = true;
    for (Cond r = 0; r < n && below; ++r) below = compatible(r, q) || compatible(r, y);
    if (below) rows[n].set(y);
  }
  check_transitive(ids, rows, "add_negation");
  Extension ext;
  ext.order = Preorder::from_relation(std::move(ids), std::move(rows), p.top());
  ext.added = n;
  // Negating top gives a least element; separativity is about the rest.
  if (!is_separative(induced_suborder(ext.order, ~zero_like(ext.order)).order)) {
    throw Error("add_negation: result is not separative");
  }
  return ext;
}

void for_each_maximal_antichain(const Preorder& p, const std::function<void(const ConditionSet&)>& visit) {
  const std::size_t n = p.size();
  ConditionSet chosen(n);
  // Conditions compatible with something chosen so far.
  std::function<void(Cond, const ConditionSet&)> walk = [&](Cond i, const ConditionSet& covered) {
    if (i == n) {
      if (covered.all()) visit(chosen);
      return;
    }
    if (!covered[i]) {
      chosen.set(i);
      walk(i + 1, covered | p.reach(p.below(i)));
      chosen.reset(i);
    }
    // Skipping i only leads to a maximal antichain if a later choice covers it.
    bool coverable = covered[i];
    for (Cond j = i + 1; j < n && !coverable; ++j) coverable = p.compatible(i, j);
    if (coverable) walk(i + 1, covered);
  };
  walk(0, ConditionSet(n));
}

bool is_complete_subforcing(const Preorder& sub, const Preorder& whole) {
  std::vector<Cond> image(sub.size());
  for (Cond x = 0; x < sub.size(); ++x) {
    auto w = whole.find(sub.id(x));
    if (!w) throw Error("subforcing condition '" + sub.id(x) + "' is not a condition of the ambient forcing");
    image[x] = *w;
  }
  for (Cond x = 0; x < sub.size(); ++x) {
    for (Cond y = 0; y < sub.size(); ++y) {
      if (sub.le(x, y) != whole.le(image[x], image[y])) {
        throw Error("subforcing order disagrees with the ambient order at " + sub.id(x) + ", " + sub.id(y));
      }
    }
  }
  bool complete = true;
  for_each_maximal_antichain(sub, [&](const ConditionSet& a) {
    if (!complete) return;
    ConditionSet mapped(whole.size());
    for (Cond x : members(a)) mapped.set(image[x]);
    if (!is_predense_below(whole, mapped, whole.top())) complete = false;
  });
  return complete;
}

std::string format_set(const Preorder& p, const ConditionSet& s) {
  std::string out = "{";
  bool first = true;
  for (Cond c : members(s)) {
    if (!first) out += ",";
    first = false;
    out += p.id(c);
  }
  return out + "}";
}

}  // namespace forcelab
