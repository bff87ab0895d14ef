#include "forcelab/friedman.hpp"

#include <algorithm>
#include <functional>

#include "forcelab/error.hpp"
#include "forcelab/formulas.hpp"

namespace forcelab {

std::string format_friedman(const FriedmanCondition& p) {
  std::string out = "<{";
  bool first = true;
  for (std::size_t i : p.d) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(i);
  }
  out += "},{";
  first = true;
  for (const auto& [i, j] : p.e) {
    if (!first) out += ',';
    first = false;
    out += '(' + std::to_string(i) + ',' + std::to_string(j) + ')';
  }
  out += "},{";
  first = true;
  for (const auto& [i, x] : p.f) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(i) + ':' + x.to_string();
  }
  return out + "}>";
}

bool is_acyclic(const std::set<std::size_t>& d, const std::set<std::pair<std::size_t, std::size_t>>& e) {
  // Kahn's algorithm on the edges inside d.
  std::map<std::size_t, std::size_t> indegree;
  for (std::size_t i : d) indegree[i] = 0;
  for (const auto& [i, j] : e) {
    if (!indegree.count(i) || !indegree.count(j)) return false;
    ++indegree[j];
  }
  std::vector<std::size_t> ready;
  for (const auto& [i, k] : indegree) {
    if (k == 0) ready.push_back(i);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    std::size_t i = ready.back();
    ready.pop_back();
    ++removed;
    for (auto it = e.lower_bound({i, 0}); it != e.end() && it->first == i; ++it) {
      if (--indegree[it->second] == 0) ready.push_back(it->second);
    }
  }
  return removed == d.size();
}

bool membership_clause(const FriedmanCondition& p) {
  if (p.f.empty()) return true;
  for (const auto& [i, x] : p.f) {
    for (const auto& [j, y] : p.f) {
      if (p.e.count({i, j}) != static_cast<std::size_t>(y.contains(x))) return false;
    }
  }
  return true;
}

namespace {

std::string shape_error(const FriedmanCondition& p, std::size_t indices) {
  for (std::size_t i : p.d) {
    if (i >= indices) return "index " + std::to_string(i) + " is not below " + std::to_string(indices);
  }
  for (const auto& [i, j] : p.e) {
    if (!p.d.count(i) || !p.d.count(j)) return "edge (" + std::to_string(i) + "," + std::to_string(j) + ") leaves d";
  }
  if (!is_acyclic(p.d, p.e)) return "e has a cycle";
  if (!p.f.empty()) {
    if (p.f.size() != p.d.size()) return "f is neither empty nor defined on all of d";
    std::set<HFSet> range;
    for (const auto& [i, x] : p.f) {
      if (!p.d.count(i)) return "f is defined outside d";
      if (!range.insert(x).second) return "f is not injective";
    }
  }
  if (!membership_clause(p)) return "e does not match membership of the f values";
  return "";
}

}  // namespace

FriedmanForcing::FriedmanForcing(GroundModel model, std::size_t indices, std::size_t max_indices,
                                 std::size_t max_carrier)
    : model_(std::move(model)), indices_(indices) {
  if (indices > max_indices) {
    throw BoundError("Friedman index bound " + std::to_string(indices) + " exceeds " + std::to_string(max_indices));
  }
  if (model_.size() > max_carrier) {
    throw BoundError("Friedman ground carrier of size " + std::to_string(model_.size()) + " exceeds " +
                     std::to_string(max_carrier));
  }
}

std::string FriedmanForcing::why_invalid(const FriedmanCondition& p) const {
  if (auto error = shape_error(p, indices_); !error.empty()) return error;
  for (const auto& [i, x] : p.f) {
    if (!model_.contains(x)) return "f(" + std::to_string(i) + ") = " + x.to_string() + " is not in the ground model";
  }
  return "";
}

bool FriedmanForcing::le(const FriedmanCondition& p, const FriedmanCondition& q) {
  if (!std::includes(p.d.begin(), p.d.end(), q.d.begin(), q.d.end())) return false;
  for (const auto& [i, j] : p.e) {
    if (q.d.count(i) && q.d.count(j) && !q.e.count({i, j})) return false;
  }
  for (const auto& edge : q.e) {
    if (!p.e.count(edge)) return false;
  }
  for (const auto& [i, x] : q.f) {
    auto it = p.f.find(i);
    if (it == p.f.end() || it->second != x) return false;
  }
  return true;
}

std::optional<FriedmanCondition> FriedmanForcing::meet(const FriedmanCondition& p, const FriedmanCondition& q) const {
  FriedmanCondition r;
  r.d = p.d;
  r.d.insert(q.d.begin(), q.d.end());
  for (const auto& [i, j] : p.e) {
    if (q.d.count(i) && q.d.count(j) && !q.e.count({i, j})) return std::nullopt;
  }
  for (const auto& [i, j] : q.e) {
    if (p.d.count(i) && p.d.count(j) && !p.e.count({i, j})) return std::nullopt;
  }
  std::map<std::size_t, HFSet> fixed = p.f;
  for (const auto& [i, x] : q.f) {
    auto [it, inserted] = fixed.emplace(i, x);
    if (!inserted && it->second != x) return std::nullopt;
  }
  if (fixed.empty()) {
    r.e = p.e;
    r.e.insert(q.e.begin(), q.e.end());
    if (!is_acyclic(r.d, r.e)) return std::nullopt;
    return r;
  }

  std::set<HFSet> used;
  for (const auto& [i, x] : fixed) {
    if (!used.insert(x).second) return std::nullopt;
  }
  std::vector<std::size_t> order(r.d.begin(), r.d.end());
  std::map<std::size_t, HFSet> f;
  // An edge between two assigned indices must agree with every condition containing both.
  auto consistent = [&](std::size_t i, std::size_t j) {
    bool edge = f.at(j).contains(f.at(i));
    for (const FriedmanCondition* c : {&p, &q}) {
      if (c->d.count(i) && c->d.count(j) && c->e.count({i, j}) != static_cast<std::size_t>(edge)) return false;
    }
    return true;
  };
  auto place = [&](std::size_t k) {
    for (const auto& [j, y] : f) {
      if (!consistent(k, j) || !consistent(j, k)) return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> search = [&](std::size_t pos) -> bool {
    if (pos == order.size()) return true;
    std::size_t k = order[pos];
    if (auto it = fixed.find(k); it != fixed.end()) {
      f[k] = it->second;
      if (place(k) && search(pos + 1)) return true;
      f.erase(k);
      return false;
    }
    for (const HFSet& x : model_.carrier()) {
      if (used.count(x)) continue;
      f[k] = x;
      used.insert(x);
      if (place(k) && search(pos + 1)) return true;
      used.erase(x);
      f.erase(k);
    }
    return false;
  };
  if (!search(0)) return std::nullopt;
  r.f = f;
  for (const auto& [i, x] : f) {
    for (const auto& [j, y] : f) {
      if (y.contains(x)) r.e.emplace(i, j);
    }
  }
  return r;
}

ExplicitFriedman::ExplicitFriedman(const FriedmanForcing& forcing, std::size_t max_conditions) : forcing_(forcing) {
  const std::size_t n = forcing.indices();
  const auto carrier = forcing.model().carrier();
  auto add = [&](FriedmanCondition c) {
    if (lookup_.count(c)) return;
    if (conditions_.size() >= max_conditions) {
      throw BoundError("explicit Friedman order exceeds " + std::to_string(max_conditions) + " conditions");
    }
    lookup_.emplace(c, conditions_.size());
    conditions_.push_back(std::move(c));
  };
  std::vector<FriedmanCondition> forgetful;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> d;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1) d.push_back(i);
    }
    std::vector<std::size_t> pick(d.size(), 0);
    std::vector<bool> taken(carrier.size(), false);
    std::function<void(std::size_t)> assign = [&](std::size_t pos) {
      if (pos == d.size()) {
        FriedmanCondition c;
        c.d.insert(d.begin(), d.end());
        for (std::size_t a = 0; a < d.size(); ++a) c.f.emplace(d[a], carrier[pick[a]]);
        for (std::size_t a = 0; a < d.size(); ++a) {
          for (std::size_t b = 0; b < d.size(); ++b) {
            if (carrier[pick[b]].contains(carrier[pick[a]])) c.e.emplace(d[a], d[b]);
          }
        }
        FriedmanCondition bare{c.d, c.e, {}};
        add(std::move(c));
        forgetful.push_back(std::move(bare));
        return;
      }
      for (std::size_t x = 0; x < carrier.size(); ++x) {
        if (taken[x]) continue;
        taken[x] = true;
        pick[pos] = x;
        assign(pos + 1);
        taken[x] = false;
      }
    };
    assign(0);
  }
  for (auto& c : forgetful) add(std::move(c));
  const std::size_t size = conditions_.size();
  std::vector<std::string> ids;
  for (const auto& c : conditions_) ids.push_back(format_friedman(c));
  std::vector<ConditionSet> rows(size, ConditionSet(size));
  for (Cond a = 0; a < size; ++a) {
    for (Cond b = 0; b < size; ++b) {
      if (FriedmanForcing::le(conditions_[a], conditions_[b])) rows[a].set(b);
    }
  }
  order_ = Preorder::from_relation(std::move(ids), std::move(rows), 0);
}

std::optional<Cond> ExplicitFriedman::find(const FriedmanCondition& p) const {
  auto it = lookup_.find(p);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Cond ExplicitFriedman::index_of(const FriedmanCondition& p) const {
  auto c = find(p);
  if (!c) throw Error(format_friedman(p) + " is not in the explicit Friedman order");
  return *c;
}

ConditionSet ExplicitFriedman::total_set() const {
  ConditionSet out = order_.empty_set();
  for (Cond c = 0; c < size(); ++c) {
    if (conditions_[c].total()) out.set(c);
  }
  return out;
}

TotalExtension friedman_total_extension(const FriedmanForcing& forcing, const FriedmanCondition& p) {
  if (!p.f.empty()) throw Error("friedman_total_extension needs a condition with empty f");
  if (p.d.empty()) throw Error("friedman_total_extension needs a nonempty d");
  if (auto error = shape_error(p, forcing.indices()); !error.empty()) throw Error("invalid condition: " + error);
  TotalExtension out;
  out.condition = p;
  std::map<std::size_t, HFSet>& f = out.condition.f;
  while (f.size() < p.d.size()) {
    for (std::size_t j : p.d) {
      if (f.count(j)) continue;
      std::vector<HFSet> elements{HFSet::of({HFSet(), HFSet::natural(j)})};
      bool ready = true;
      for (const auto& [a, b] : p.e) {
        if (b != j) continue;
        auto it = f.find(a);
        if (it == f.end()) {
          ready = false;
          break;
        }
        elements.push_back(it->second);
      }
      if (ready) f.emplace(j, HFSet::of(std::move(elements)));
    }
  }
  if (!shape_error(out.condition, forcing.indices()).empty()) {
    throw Error("total extension broke the membership clause for " + format_friedman(p));
  }
  for (const auto& [j, x] : f) out.outside_carrier |= !forcing.model().contains(x);
  return out;
}

FriedmanCondition friedman_surjectivity_extension(const FriedmanForcing& forcing, const FriedmanCondition& p,
                                                  const HFSet& x, std::optional<std::size_t> j) {
  if (!p.total()) throw Error("friedman_surjectivity_extension needs f defined on all of d");
  for (const auto& [i, y] : p.f) {
    if (y == x) throw Error(x.to_string() + " is already in the range of f");
  }
  if (!forcing.model().contains(x)) throw Error(x.to_string() + " is not in the ground model");
  if (!j) {
    for (std::size_t k = 0; k < forcing.indices(); ++k) {
      if (!p.d.count(k)) {
        j = k;
        break;
      }
    }
    if (!j) throw BoundError("no fresh index below " + std::to_string(forcing.indices()));
  }
  if (*j >= forcing.indices() || p.d.count(*j)) throw Error("index " + std::to_string(*j) + " is not fresh");
  FriedmanCondition q = p;
  q.d.insert(*j);
  for (const auto& [i, y] : p.f) {
    if (x.contains(y)) q.e.emplace(i, *j);
    if (y.contains(x)) q.e.emplace(*j, i);
  }
  q.f.emplace(*j, x);
  return q;
}

FriedmanCondition edge_condition(std::size_t i, std::size_t j) {
  FriedmanCondition p;
  p.d = {i, j};
  p.e = {{i, j}};
  return p;
}

PName edot_name(const ExplicitFriedman& f) {
  const Cond top = f.order().top();
  std::vector<NameEntry> entries;
  for (std::size_t i = 0; i < f.forcing().indices(); ++i) {
    for (std::size_t j = 0; j < f.forcing().indices(); ++j) {
      if (i == j) continue;
      auto c = f.find(edge_condition(i, j));
      if (!c) continue;
      PName pair = op_name(check_name(HFSet::natural(i), top), check_name(HFSet::natural(j), top), top);
      entries.push_back(NameEntry{pair, *c});
    }
  }
  return PName::of(std::move(entries));
}

Decoded decode_E_F(const std::vector<FriedmanCondition>& filter) {
  Decoded out;
  for (const auto& p : filter) {
    out.relation.insert(p.e.begin(), p.e.end());
    for (const auto& [i, x] : p.f) {
      auto [it, inserted] = out.map.emplace(i, x);
      if (!inserted && it->second != x) {
        throw Error("not a filter: index " + std::to_string(i) + " is sent to " + it->second.to_string() + " and " +
                    x.to_string());
      }
    }
  }
  std::set<HFSet> range;
  for (const auto& [i, x] : out.map) {
    if (!range.insert(x).second) throw Error("not a filter: " + x.to_string() + " has two indices");
  }
  return out;
}

CheckOutcome check_decoded_isomorphism(const Decoded& decoded, const GroundModel& model, std::size_t indices) {
  CheckOutcome out;
  auto fail = [&](std::string message) {
    out.ok = false;
    out.failure = std::move(message);
    return out;
  };
  for (std::size_t i = 0; i < indices; ++i) {
    if (!decoded.map.count(i)) return fail("index " + std::to_string(i) + " has no value");
  }
  if (decoded.map.size() != indices) return fail("the map has indices beyond " + std::to_string(indices));
  std::set<HFSet> range;
  for (const auto& [i, x] : decoded.map) {
    if (!model.contains(x)) return fail(x.to_string() + " is not in the ground model");
    range.insert(x);
  }
  if (range.size() != model.size()) return fail("the map misses part of the ground model");
  for (const auto& [i, j] : decoded.relation) {
    if (!decoded.map.count(i) || !decoded.map.count(j)) {
      return fail("edge (" + std::to_string(i) + "," + std::to_string(j) + ") leaves the domain");
    }
  }
  for (const auto& [i, x] : decoded.map) {
    for (const auto& [j, y] : decoded.map) {
      if (decoded.relation.count({i, j}) != static_cast<std::size_t>(y.contains(x))) {
        return fail("edge (" + std::to_string(i) + "," + std::to_string(j) + ") disagrees with membership");
      }
    }
  }
  return out;
}

FriedmanCondition p_sequence(const std::vector<HFSet>& x, const std::vector<std::size_t>& n) {
  if (!appropriate(x, n)) throw Error("index tuple is not appropriate for the sets");
  FriedmanCondition p;
  for (std::size_t k = 0; k < x.size(); ++k) {
    p.d.insert(n[k]);
    p.f.emplace(n[k], x[k]);
    for (std::size_t i = 0; i < k; ++i) {
      if (x[i].contains(x[k])) p.e.emplace(n[k], n[i]);
      if (x[k].contains(x[i])) p.e.emplace(n[i], n[k]);
    }
  }
  return p;
}

FriedmanCondition p_lex(const std::vector<HFSet>& x) { return p_sequence(x, lex_min_appropriate(x)); }

FriedmanCondition index_swap(const FriedmanCondition& p, std::size_t i, std::size_t j) {
  auto swap = [&](std::size_t k) { return k == i ? j : k == j ? i : k; };
  FriedmanCondition q;
  for (std::size_t k : p.d) q.d.insert(swap(k));
  for (const auto& [a, b] : p.e) q.e.emplace(swap(a), swap(b));
  for (const auto& [k, x] : p.f) q.f.emplace(swap(k), x);
  return q;
}

std::vector<Cond> index_swap_map(const ExplicitFriedman& f, std::size_t i, std::size_t j) {
  if (i >= f.forcing().indices() || j >= f.forcing().indices()) throw Error("swap index out of range");
  std::vector<Cond> out(f.size());
  for (Cond c = 0; c < f.size(); ++c) out[c] = f.index_of(index_swap(f.condition(c), i, j));
  return out;
}

FriedmanCondition qn_antichain(std::size_t n) {
  if (n == 0) throw Error("q^0 would put a loop on index 1");
  FriedmanCondition q;
  for (std::size_t k = 1; k <= n + 1; ++k) q.d.insert(k);
  q.e = {{1, n + 1}};
  return q;
}

VarphiStarOutcome varphi_star_check(const ExplicitFriedman& f, SemanticOracle& oracle, const PName& edot,
                                    const FOFormula& phi, const std::vector<HFSet>& x) {
  VarphiStarOutcome out;
  out.satisfied = fo_satisfies(f.forcing().model(), phi, x);
  Cond p = f.index_of(p_lex(x));
  auto star = translate_star(phi, lex_min_appropriate(x), f.forcing().indices(), edot, f.order().top());
  auto truth = oracle.truth(star.formula);
  out.forced = oracle.verdict(p, truth).forced;
  out.negation_forced = oracle.verdict(p, ~truth).forced;
  return out;
}

}  // namespace forcelab
