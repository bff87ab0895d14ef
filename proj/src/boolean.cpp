#include "forcelab/boolean.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "forcelab/error.hpp"

namespace forcelab {

namespace {

[[noreturn]] void law_failure(const std::string& law, std::initializer_list<Elem> witness) {
  std::string msg = "not a Boolean algebra: " + law + " fails at";
  for (Elem e : witness) msg += " " + std::to_string(e);
  throw Error(msg);
}

}  // namespace

FiniteBooleanAlgebra FiniteBooleanAlgebra::from_order(std::vector<std::string> labels,
                                                      const std::vector<ConditionSet>& rows) {
  const std::size_t n = labels.size();
  if (n == 0 || rows.size() != n) throw Error("Boolean algebra order has the wrong size");
  std::vector<ConditionSet> down(n, ConditionSet(n));
  for (Elem a = 0; a < n; ++a) {
    for (Elem b : members(rows[a])) down[b].set(a);
  }
  for (Elem a = 0; a < n; ++a) {
    if (!rows[a][a]) law_failure("reflexivity", {a});
    for (Elem b = a + 1; b < n; ++b) {
      if (rows[a][b] && rows[b][a]) law_failure("antisymmetry", {a, b});
    }
  }
  auto extreme = [&](const ConditionSet& candidates, const std::vector<ConditionSet>& cover) -> std::optional<Elem> {
    for (Elem g : members(candidates)) {
      if (candidates.is_subset_of(cover[g])) return g;
    }
    return std::nullopt;
  };
  FiniteBooleanAlgebra ba;
  ba.labels_ = std::move(labels);
  ba.meet_.resize(n * n);
  ba.join_.resize(n * n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      auto glb = extreme(down[a] & down[b], down);
      auto lub = extreme(rows[a] & rows[b], rows);
      if (!glb) law_failure("existence of meets", {a, b});
      if (!lub) law_failure("existence of joins", {a, b});
      ba.meet_[a * n + b] = *glb;
      ba.join_[a * n + b] = *lub;
    }
  }
  auto bottom = extreme(~ConditionSet(n), rows);
  auto top = extreme(~ConditionSet(n), down);
  if (!bottom || !top) law_failure("bounds", {});
  ba.zero_ = *bottom;
  ba.one_ = *top;
  ba.complement_.assign(n, 0);
  for (Elem a = 0; a < n; ++a) {
    bool found = false;
    for (Elem c = 0; c < n && !found; ++c) {
      if (ba.meet(a, c) == ba.zero_ && ba.join(a, c) == ba.one_) {
        ba.complement_[a] = c;
        found = true;
      }
    }
    if (!found) law_failure("existence of complements", {a});
  }
  ba.validate();
  return ba;
}

FiniteBooleanAlgebra FiniteBooleanAlgebra::from_operations(std::vector<std::string> labels, const Operations& ops) {
  const std::size_t n = labels.size();
  if (n == 0) throw Error("Boolean algebra must be nonempty");
  FiniteBooleanAlgebra ba;
  ba.labels_ = std::move(labels);
  ba.meet_.resize(n * n);
  ba.join_.resize(n * n);
  ba.complement_.resize(n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      ba.meet_[a * n + b] = ops.meet(a, b);
      ba.join_[a * n + b] = ops.join(a, b);
    }
    ba.complement_[a] = ops.complement(a);
  }
  ba.zero_ = ops.zero;
  ba.one_ = ops.one;
  ba.validate();
  return ba;
}

void FiniteBooleanAlgebra::validate() const {
  const std::size_t n = size();
  for (Elem a = 0; a < n; ++a) {
    if (complement(a) >= n) law_failure("closure of complement", {a});
    if (meet(a, one_) != a || join(a, zero_) != a) law_failure("identity", {a});
    if (meet(a, complement(a)) != zero_ || join(a, complement(a)) != one_) law_failure("complementation", {a});
    for (Elem b = 0; b < n; ++b) {
      if (meet(a, b) >= n || join(a, b) >= n) law_failure("closure", {a, b});
      if (meet(a, b) != meet(b, a) || join(a, b) != join(b, a)) law_failure("commutativity", {a, b});
      if (meet(a, join(a, b)) != a || join(a, meet(a, b)) != a) law_failure("absorption", {a, b});
    }
  }
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      for (Elem c = 0; c < n; ++c) {
        if (meet(a, meet(b, c)) != meet(meet(a, b), c)) law_failure("associativity of meet", {a, b, c});
        if (join(a, join(b, c)) != join(join(a, b), c)) law_failure("associativity of join", {a, b, c});
        if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) law_failure("distributivity", {a, b, c});
      }
    }
  }
}

Elem FiniteBooleanAlgebra::join_all(std::span<const Elem> xs) const {
  Elem acc = zero_;
  for (Elem x : xs) acc = join(acc, x);
  return acc;
}

Elem FiniteBooleanAlgebra::meet_all(std::span<const Elem> xs) const {
  Elem acc = one_;
  for (Elem x : xs) acc = meet(acc, x);
  return acc;
}

std::vector<Elem> FiniteBooleanAlgebra::atoms() const {
  std::vector<Elem> out;
  for (Elem a = 0; a < size(); ++a) {
    if (a == zero_) continue;
    bool atom = true;
    for (Elem b = 0; b < size() && atom; ++b) {
      if (b != zero_ && b != a && leq(b, a)) atom = false;
    }
    if (atom) out.push_back(a);
  }
  return out;
}

bool is_dense_embedding(const Completion& c) {
  const auto& p = c.source;
  const auto& b = c.algebra;
  if (c.embedding.size() != p.size()) return false;
  for (Cond x = 0; x < p.size(); ++x) {
    if (c.embedding[x] == b.zero()) return false;
    for (Cond y = 0; y < p.size(); ++y) {
      if (p.le(x, y) && !b.leq(c.embedding[x], c.embedding[y])) return false;
      if (!p.compatible(x, y) && b.meet(c.embedding[x], c.embedding[y]) != b.zero()) return false;
    }
  }
  for (Elem e = 0; e < b.size(); ++e) {
    if (e == b.zero()) continue;
    bool covered = false;
    for (Cond x = 0; x < p.size() && !covered; ++x) covered = b.leq(c.embedding[x], e);
    if (!covered) return false;
  }
  return true;
}

ConditionSet regularize(const Preorder& p, const ConditionSet& u) { return p.dense_below_set(u); }

bool is_regular_open(const Preorder& p, const ConditionSet& u) {
  return p.downward_closure(u) == u && regularize(p, u) == u;
}

std::optional<Elem> RegularOpenAlgebra::element_of(const ConditionSet& region) const {
  auto it = std::find(regions.begin(), regions.end(), region);
  if (it == regions.end()) return std::nullopt;
  return static_cast<Elem>(it - regions.begin());
}

RegularOpenAlgebra regular_open_algebra(const Preorder& p, std::size_t max_size) {
  const auto minimal = minimal_classes(p);
  const std::size_t m = minimal.size();
  if (m >= 63 || (std::size_t{1} << m) > max_size) {
    throw BoundError("regular open algebra would have 2^" + std::to_string(m) + " elements, above the bound " +
                     std::to_string(max_size));
  }
  // Which minimal class lies below each condition.
  std::vector<std::vector<std::size_t>> classes_below(p.size());
  for (Cond x = 0; x < p.size(); ++x) {
    for (std::size_t i = 0; i < m; ++i) {
      if (p.le(minimal[i], x)) classes_below[x].push_back(i);
    }
  }
  RegularOpenAlgebra ro;
  const std::size_t count = std::size_t{1} << m;
  std::map<ConditionSet, Elem> index;
  std::vector<std::string> labels;
  for (std::size_t mask = 0; mask < count; ++mask) {
    ConditionSet region(p.size());
    for (Cond x = 0; x < p.size(); ++x) {
      bool inside = std::all_of(classes_below[x].begin(), classes_below[x].end(),
                                [&](std::size_t i) { return (mask >> i) & 1; });
      if (inside) region.set(x);
    }
    if (!is_regular_open(p, region)) throw Error("regular_open_algebra: generated region is not regular open");
    if (!index.emplace(region, ro.regions.size()).second) throw Error("regular_open_algebra: duplicate region");
    labels.push_back(format_set(p, region));
    ro.regions.push_back(region);
  }
  auto lookup = [&](const ConditionSet& s) {
    auto it = index.find(s);
    if (it == index.end()) throw Error("regular_open_algebra: operation left the algebra");
    return it->second;
  };
  FiniteBooleanAlgebra::Operations ops;
  ops.meet = [&](Elem a, Elem b) { return lookup(ro.regions[a] & ro.regions[b]); };
  ops.join = [&](Elem a, Elem b) { return lookup(regularize(p, ro.regions[a] | ro.regions[b])); };
  ops.complement = [&](Elem a) { return lookup(p.avoiding_set(ro.regions[a])); };
  ops.zero = lookup(p.empty_set());
  ops.one = lookup(p.full_set());
  ro.completion.source = p;
  ro.completion.algebra = FiniteBooleanAlgebra::from_operations(std::move(labels), ops);
  for (Cond x = 0; x < p.size(); ++x) {
    ro.completion.embedding.push_back(lookup(regularize(p, p.below(x))));
  }
  return ro;
}

namespace {

// Working preorder during saturation. The first `base` conditions come from
// the separative quotient and are dense among the nonzero conditions, so
// compatibility is decided by common base conditions below.
struct Stage {
  std::vector<std::string> ids;
  std::vector<ConditionSet> rows;
  std::size_t base = 0;
  std::vector<Cond> minimal;

  std::size_t size() const { return ids.size(); }

  std::vector<ConditionSet> base_below() const {
    std::vector<ConditionSet> out(size(), ConditionSet(base));
    for (Cond x = 0; x < size(); ++x) {
      for (Cond p = 0; p < base; ++p) {
        if (rows[p][x]) out[x].set(p);
      }
    }
    return out;
  }
};

void check_stage_transitive(const Stage& s, const char* step) {
  for (Cond i = 0; i < s.size(); ++i) {
    for (Cond j : members(s.rows[i])) {
      if (!s.rows[j].is_subset_of(s.rows[i])) {
        throw Error(std::string("saturation: ") + step + " produced a non-transitive relation at " + s.ids[i] +
                    " <= " + s.ids[j]);
      }
    }
  }
}

Stage identify_equivalent(const Stage& s) {
  std::vector<Cond> reps;
  std::vector<Cond> cls(s.size());
  for (Cond x = 0; x < s.size(); ++x) {
    Cond found = reps.size();
    for (Cond r = 0; r < reps.size(); ++r) {
      if (s.rows[x][reps[r]] && s.rows[reps[r]][x]) {
        found = r;
        break;
      }
    }
    if (found == reps.size()) reps.push_back(x);
    cls[x] = found;
  }
  Stage out;
  out.base = s.base;
  out.minimal = s.minimal;
  for (Cond r : reps) out.ids.push_back(s.ids[r]);
  out.rows.assign(reps.size(), ConditionSet(reps.size()));
  for (Cond i = 0; i < reps.size(); ++i) {
    for (Cond j = 0; j < reps.size(); ++j) {
      if (s.rows[reps[i]][reps[j]]) out.rows[i].set(j);
    }
  }
  return out;
}

std::vector<ConditionSet> subsets_of(const std::vector<Cond>& pool, std::size_t width) {
  std::vector<ConditionSet> out;
  const std::size_t count = std::size_t{1} << pool.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    ConditionSet s(width);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if ((mask >> i) & 1) s.set(pool[i]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string stage_label(const Stage& s, const ConditionSet& a) {
  std::string out = "{";
  bool first = true;
  for (Cond c : members(a)) {
    if (!first) out += ",";
    first = false;
    out += s.ids[c];
  }
  return out + "}";
}

Stage add_suprema(const Stage& s, const SaturationOptions& options) {
  const std::size_t n = s.size();
  auto bb = s.base_below();
  std::vector<ConditionSet> compat_base(n, ConditionSet(s.base));
  for (Cond x = 0; x < n; ++x) {
    for (Cond p = 0; p < s.base; ++p) {
      if (bb[p].intersects(bb[x])) compat_base[x].set(p);
    }
  }
  auto affordable = [&](std::size_t k) { return k < 63 && (std::size_t{1} << k) <= options.subset_budget; };
  std::vector<Cond> pool;
  if (affordable(n)) {
    for (Cond x = 0; x < n; ++x) pool.push_back(x);
  } else if (affordable(s.base)) {
    for (Cond x = 0; x < s.base; ++x) pool.push_back(x);
  } else if (affordable(s.minimal.size())) {
    pool = s.minimal;
  } else {
    throw BoundError("saturation: too many candidate subsets");
  }

  struct Candidate {
    ConditionSet set;
    ConditionSet upper;
    ConditionSet predense;
  };
  std::vector<Candidate> added;
  std::set<std::pair<ConditionSet, ConditionSet>> seen;
  for (auto& a : subsets_of(pool, n)) {
    ConditionSet upper = ~ConditionSet(n);
    ConditionSet cover(s.base);
    for (Cond x : members(a)) {
      upper &= s.rows[x];
      cover |= compat_base[x];
    }
    ConditionSet predense(n);
    for (Cond y = 0; y < n; ++y) {
      if (bb[y].is_subset_of(cover)) predense.set(y);
    }
    if (!seen.emplace(upper, predense).second) continue;
    added.push_back({std::move(a), std::move(upper), std::move(predense)});
  }

  const std::size_t total = n + added.size();
  Stage out;
  out.base = s.base;
  out.minimal = s.minimal;
  out.ids = s.ids;
  out.rows.assign(total, ConditionSet(total));
  for (std::size_t k = 0; k < added.size(); ++k) out.ids.push_back("sup" + stage_label(s, added[k].set));
  for (Cond x = 0; x < n; ++x) {
    for (Cond y : members(s.rows[x])) out.rows[x].set(y);
    for (std::size_t k = 0; k < added.size(); ++k) {
      if (added[k].predense[x]) out.rows[x].set(n + k);
    }
  }
  for (std::size_t k = 0; k < added.size(); ++k) {
    Cond self = n + k;
    for (Cond y : members(added[k].upper)) out.rows[self].set(y);
    for (std::size_t l = 0; l < added.size(); ++l) {
      if (added[k].set.is_subset_of(added[l].predense)) out.rows[self].set(n + l);
    }
    out.rows[self].set(self);
  }
  check_stage_transitive(out, "adding suprema");
  return out;
}

Stage add_negations(const Stage& s) {
  const std::size_t n = s.size();
  auto bb = s.base_below();
  auto compatible = [&](Cond x, Cond y) { return bb[x].intersects(bb[y]); };
  const std::size_t total = 2 * n;
  Stage out;
  out.base = s.base;
  out.minimal = s.minimal;
  out.ids = s.ids;
  for (Cond x = 0; x < n; ++x) out.ids.push_back("not(" + s.ids[x] + ")");
  out.rows.assign(total, ConditionSet(total));
  for (Cond y = 0; y < n; ++y) {
    for (Cond z : members(s.rows[y])) out.rows[y].set(z);
    for (Cond x = 0; x < n; ++x) {
      if (!compatible(y, x)) out.rows[y].set(n + x);
    }
  }
  for (Cond x = 0; x < n; ++x) {
    Cond neg = n + x;
    for (Cond y = 0; y < n; ++y) {
      bool below = true;
      for (Cond r = 0; r < s.base && below; ++r) below = compatible(r, x) || compatible(r, y);
      if (below) out.rows[neg].set(y);
    }
    for (Cond z = 0; z < n; ++z) {
      if (s.rows[z][x]) out.rows[neg].set(n + z);
    }
  }
  check_stage_transitive(out, "adding negations");
  return out;
}

}  // namespace

Saturation saturate_to_boolean(const Preorder& p, const SaturationOptions& options) {
  QuotientMap sep = separative_quotient(p);
  const Preorder& s = sep.target;
  const std::size_t m = minimal_classes(s).size();
  const std::size_t cap = m < 63 ? (std::size_t{1} << m) : ~std::size_t{0};
  if (cap > options.max_size) {
    throw BoundError("saturation would need 2^" + std::to_string(m) + " elements, above the bound " +
                     std::to_string(options.max_size));
  }
  Stage stage;
  stage.base = s.size();
  stage.minimal = minimal_classes(s);
  stage.ids = s.ids();
  for (Cond x = 0; x < s.size(); ++x) stage.rows.push_back(s.above(x));

  Saturation result;
  while (true) {
    const std::size_t before = stage.size();
    stage = identify_equivalent(add_suprema(stage, options));
    if (stage.size() > cap) throw Error("saturation exceeded 2^m elements");
    stage = identify_equivalent(add_negations(stage));
    if (stage.size() > cap) throw Error("saturation exceeded 2^m elements");
    ++result.rounds;
    if (stage.size() == before) break;
  }
  std::vector<std::string> ids = stage.ids;
  result.saturated = Preorder::from_relation(std::move(ids), stage.rows, s.top());
  result.completion.source = p;
  result.completion.algebra = FiniteBooleanAlgebra::from_order(stage.ids, stage.rows);
  // Base conditions survive identification as their own representatives.
  for (Cond x = 0; x < p.size(); ++x) result.completion.embedding.push_back(sep.map[x]);
  return result;
}

std::variant<BooleanIsomorphism, IsomorphismFailure> completion_isomorphism(const Completion& c0,
                                                                           const Completion& c1) {
  if (!(c0.source == c1.source)) throw Error("completion_isomorphism: completions are over different forcings");
  const auto& b0 = c0.algebra;
  const auto& b1 = c1.algebra;
  const auto& p = c0.source;
  BooleanIsomorphism iso;
  iso.map.resize(b0.size());
  for (Elem b = 0; b < b0.size(); ++b) {
    std::vector<Elem> parts;
    for (Cond x = 0; x < p.size(); ++x) {
      if (b0.leq(c0.embedding[x], b)) parts.push_back(c1.embedding[x]);
    }
    iso.map[b] = b1.join_all(parts);
  }
  const auto& f = iso.map;
  for (Cond x = 0; x < p.size(); ++x) {
    if (f[c0.embedding[x]] != c1.embedding[x]) return IsomorphismFailure{"commutes with the embeddings", {c0.embedding[x]}};
  }
  if (b0.size() != b1.size()) return IsomorphismFailure{"equal cardinality", {}};
  std::vector<bool> hit(b1.size(), false);
  for (Elem b = 0; b < b0.size(); ++b) {
    if (hit[f[b]]) return IsomorphismFailure{"injectivity", {b}};
    hit[f[b]] = true;
  }
  for (Elem a = 0; a < b0.size(); ++a) {
    if (f[b0.complement(a)] != b1.complement(f[a])) return IsomorphismFailure{"preserves complements", {a}};
    for (Elem b = 0; b < b0.size(); ++b) {
      if (f[b0.meet(a, b)] != b1.meet(f[a], f[b])) return IsomorphismFailure{"preserves meets", {a, b}};
      if (f[b0.join(a, b)] != b1.join(f[a], f[b])) return IsomorphismFailure{"preserves joins", {a, b}};
    }
  }
  return iso;
}

}  // namespace forcelab
