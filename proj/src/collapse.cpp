#include "forcelab/collapse.hpp"

#include <algorithm>
#include <charconv>

#include "forcelab/error.hpp"
#include "forcelab/hf.hpp"

namespace forcelab {

std::string_view to_string(CollapseVariant v) {
  switch (v) {
    case CollapseVariant::Plain:
      return "plain";
    case CollapseVariant::Star:
      return "star";
    case CollapseVariant::Geq:
      return "geq";
  }
  return "plain";
}

CollapseVariant parse_collapse_variant(std::string_view text) {
  if (text == "plain") return CollapseVariant::Plain;
  if (text == "star") return CollapseVariant::Star;
  if (text == "geq") return CollapseVariant::Geq;
  throw Error("unknown collapse variant '" + std::string(text) + "'");
}

std::string format_partial_function(const PartialFunction& f) {
  std::string out = "{";
  bool first = true;
  for (std::size_t n = 0; n < f.size(); ++n) {
    if (!f[n]) continue;
    if (!first) out += ',';
    first = false;
    out += std::to_string(n) + ':';
    if (f[n]->at_least) out += ">=";
    out += std::to_string(f[n]->value);
  }
  return out + "}";
}

namespace {

std::size_t read_number(std::string_view text, std::size_t& pos) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
  if (ec != std::errc{}) throw Error("expected a number in '" + std::string(text) + "'");
  pos = static_cast<std::size_t>(ptr - text.data());
  return value;
}

void skip_spaces(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && text[pos] == ' ') ++pos;
}

}  // namespace

PartialFunction parse_partial_function(std::string_view text, std::size_t slots) {
  PartialFunction f(slots);
  std::size_t pos = 0;
  skip_spaces(text, pos);
  if (pos >= text.size() || text[pos] != '{') throw Error("expected '{' in '" + std::string(text) + "'");
  ++pos;
  skip_spaces(text, pos);
  if (pos < text.size() && text[pos] == '}') return f;
  while (true) {
    skip_spaces(text, pos);
    std::size_t n = read_number(text, pos);
    skip_spaces(text, pos);
    if (pos >= text.size() || text[pos] != ':') throw Error("expected ':' in '" + std::string(text) + "'");
    ++pos;
    skip_spaces(text, pos);
    SlotValue v;
    if (text.substr(pos, 2) == ">=") {
      v.at_least = true;
      pos += 2;
    }
    v.value = read_number(text, pos);
    if (n >= slots) throw Error("slot " + std::to_string(n) + " is out of range");
    if (f[n]) throw Error("slot " + std::to_string(n) + " is given twice");
    f[n] = v;
    skip_spaces(text, pos);
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < text.size() && text[pos] == '}') break;
    throw Error("expected ',' or '}' in '" + std::string(text) + "'");
  }
  return f;
}

std::size_t domain_size(const PartialFunction& f) {
  return static_cast<std::size_t>(std::count_if(f.begin(), f.end(), [](const auto& v) { return v.has_value(); }));
}

bool CollapseForcing::extends(const PartialFunction& p, const PartialFunction& q) {
  if (p.size() != q.size()) throw Error("partial functions over different slot counts");
  for (std::size_t n = 0; n < q.size(); ++n) {
    if (!q[n]) continue;
    if (!p[n]) return false;
    if (*p[n] == *q[n]) continue;
    if (q[n]->at_least && p[n]->value >= q[n]->value) continue;
    return false;
  }
  return true;
}

CollapseForcing::CollapseForcing(std::size_t slots, std::size_t height, CollapseVariant variant,
                                 std::size_t max_conditions)
    : slots_(slots), height_(height), variant_(variant) {
  std::vector<std::optional<SlotValue>> options{std::nullopt};
  for (std::size_t v = 0; v < height; ++v) options.push_back(SlotValue{v, false});
  if (variant == CollapseVariant::Geq) {
    for (std::size_t v = 0; v < height; ++v) options.push_back(SlotValue{v, true});
  }
  std::size_t total = 1;
  for (std::size_t n = 0; n < slots; ++n) {
    if (total > max_conditions / options.size() + 1) {
      throw BoundError("collapse carrier exceeds the bound of " + std::to_string(max_conditions));
    }
    total *= options.size();
  }
  if (total > max_conditions) {
    throw BoundError("collapse carrier exceeds the bound of " + std::to_string(max_conditions));
  }

  std::vector<std::size_t> digits(slots, 0);
  for (std::size_t k = 0; k < total; ++k) {
    PartialFunction f(slots);
    for (std::size_t n = 0; n < slots; ++n) f[n] = options[digits[n]];
    bool keep = true;
    if (variant == CollapseVariant::Star) {
      for (std::size_t n = 1; n < slots; ++n) {
        if (f[n] && !f[n - 1]) keep = false;
      }
    }
    if (keep) conditions_.push_back(std::move(f));
    for (std::size_t n = slots; n-- > 0;) {
      if (++digits[n] < options.size()) break;
      digits[n] = 0;
    }
  }

  const std::size_t size = conditions_.size();
  std::vector<std::string> ids;
  ids.reserve(size);
  for (const auto& f : conditions_) ids.push_back(format_partial_function(f));
  std::vector<ConditionSet> rows(size, ConditionSet(size));
  for (Cond p = 0; p < size; ++p) {
    for (Cond q = 0; q < size; ++q) {
      if (extends(conditions_[p], conditions_[q])) rows[p].set(q);
    }
  }
  order_ = Preorder::from_relation(std::move(ids), std::move(rows), 0);
}

std::optional<Cond> CollapseForcing::find(const PartialFunction& f) const {
  if (f.size() != slots_) return std::nullopt;
  return order_.find(format_partial_function(f));
}

Cond CollapseForcing::index_of(const PartialFunction& f) const {
  auto c = find(f);
  if (!c) throw Error("'" + format_partial_function(f) + "' is not a condition of this collapse");
  return *c;
}

namespace {

void require_not_geq(const CollapseForcing& c, const char* what) {
  if (c.variant() == CollapseVariant::Geq) throw Error(std::string(what) + " needs the plain or star variant");
}

std::vector<std::size_t> free_slots(const CollapseForcing& c, const PartialFunction& f) {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < f.size(); ++n) {
    if (f[n]) continue;
    out.push_back(n);
    // star conditions can only grow at the end of their domain
    if (c.variant() == CollapseVariant::Star) break;
  }
  return out;
}

std::size_t pick(std::size_t bound, std::mt19937_64* rng) {
  if (!rng) return 0;
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(*rng);
}

}  // namespace

std::vector<CollapseDenseSet> collapse_dense_sets(const CollapseForcing& c) {
  require_not_geq(c, "collapse_dense_sets");
  std::vector<CollapseDenseSet> out;
  const CollapseForcing* cp = &c;
  for (std::size_t alpha = 0; alpha < c.height(); ++alpha) {
    CollapseDenseSet d;
    d.name = "ran:" + std::to_string(alpha);
    d.members = c.order().empty_set();
    for (Cond p = 0; p < c.size(); ++p) {
      for (const auto& v : c.condition(p)) {
        if (v && v->value == alpha) d.members.set(p);
      }
    }
    ConditionSet members = d.members;
    d.extend = [cp, alpha, members](Cond p, std::mt19937_64* rng) -> Cond {
      if (members[p]) return p;
      PartialFunction f = cp->condition(p);
      auto slots = free_slots(*cp, f);
      if (slots.empty()) {
        throw BoundError("no free slot in " + format_partial_function(f) + " to take value " + std::to_string(alpha));
      }
      f[slots[pick(slots.size(), rng)]] = SlotValue{alpha, false};
      return cp->index_of(f);
    };
    out.push_back(std::move(d));
  }
  for (std::size_t n = 0; n < c.slots(); ++n) {
    CollapseDenseSet d;
    d.name = "dom:" + std::to_string(n);
    d.members = c.order().empty_set();
    for (Cond p = 0; p < c.size(); ++p) {
      if (c.condition(p)[n]) d.members.set(p);
    }
    d.extend = [cp, n](Cond p, std::mt19937_64* rng) -> Cond {
      PartialFunction f = cp->condition(p);
      if (f[n]) return p;
      if (cp->height() == 0) throw BoundError("no values to place in slot " + std::to_string(n));
      std::size_t from = cp->variant() == CollapseVariant::Star ? domain_size(f) : n;
      for (std::size_t k = from; k <= n; ++k) f[k] = SlotValue{pick(cp->height(), rng), false};
      return cp->index_of(f);
    };
    out.push_back(std::move(d));
  }
  return out;
}

PName surjection_name(const CollapseForcing& c) {
  if (c.variant() != CollapseVariant::Plain) throw Error("surjection_name needs the plain variant");
  const Cond top = c.order().top();
  std::vector<NameEntry> entries;
  for (std::size_t n = 0; n < c.slots(); ++n) {
    for (std::size_t alpha = 0; alpha < c.height(); ++alpha) {
      PartialFunction f(c.slots());
      f[n] = SlotValue{alpha, false};
      PName pair = op_name(check_name(HFSet::natural(n), top), check_name(HFSet::natural(alpha), top), top);
      entries.push_back(NameEntry{pair, c.index_of(f)});
    }
  }
  return PName::of(std::move(entries));
}

Cond antichain_defeater(const CollapseForcing& c, const ConditionSet& a) {
  require_not_geq(c, "antichain_defeater");
  const Preorder& order = c.order();
  if (a.size() != order.size()) throw Error("antichain is over a different carrier");
  if (a.none()) throw Error("antichain_defeater needs a nonempty antichain");
  if (!is_antichain(order, a)) throw Error("antichain_defeater input is not an antichain");
  if (a.count() == 1 && a[order.top()]) throw Error("the trivial antichain {1} cannot be defeated");
  const Cond first = a.find_first();
  PartialFunction out(c.slots());
  for (std::size_t n = 0; n < c.slots(); ++n) {
    if (!c.condition(first)[n]) continue;
    std::size_t sup = 0;
    for (Cond b : members(a)) {
      const auto& v = c.condition(b)[n];
      if (v) sup = std::max(sup, v->value);
    }
    if (sup + 1 >= c.height()) {
      throw HeightOverflow("slot " + std::to_string(n) + " needs value " + std::to_string(sup + 1) +
                           " but the height is " + std::to_string(c.height()));
    }
    out[n] = SlotValue{sup + 1, false};
  }
  return c.index_of(out);
}

ConditionSet collapse_stratum(const CollapseForcing& c, std::size_t alpha) {
  if (alpha > c.height()) throw Error("stratum index above the height");
  ConditionSet out = c.order().empty_set();
  for (Cond p = 0; p < c.size(); ++p) {
    bool inside = true;
    for (const auto& v : c.condition(p)) {
      if (!v) continue;
      if (v->at_least ? v->value > alpha : v->value >= alpha) inside = false;
    }
    if (inside) out.set(p);
  }
  return out;
}

namespace {

PartialFunction reduce(const PartialFunction& f, std::size_t alpha) {
  PartialFunction out = f;
  for (auto& v : out) {
    if (v && v->value >= alpha && (!v->at_least || v->value > alpha)) v = SlotValue{alpha, true};
  }
  return out;
}

}  // namespace

Cond geq_reduction(const CollapseForcing& c, Cond p, std::size_t alpha) {
  if (c.variant() != CollapseVariant::Geq) throw Error("geq_reduction needs the geq variant");
  if (alpha > c.height()) throw Error("geq_reduction parameter above the height");
  return c.index_of(reduce(c.condition(p), alpha));
}

std::vector<Cond> collapse_projection(const CollapseForcing& c, std::size_t alpha) {
  if (alpha >= c.height()) throw Error("projection index must be below the height");
  std::vector<Cond> out(c.size());
  for (Cond p = 0; p < c.size(); ++p) {
    if (c.variant() == CollapseVariant::Geq) {
      out[p] = geq_reduction(c, p, alpha + 1);
      continue;
    }
    PartialFunction f = c.condition(p);
    for (auto& v : f) {
      if (v && v->value > alpha) v->value = alpha;
    }
    out[p] = c.index_of(f);
  }
  return out;
}

bool star_dense_in_plain(std::size_t slots, std::size_t height) {
  CollapseForcing plain(slots, height, CollapseVariant::Plain);
  CollapseForcing star(slots, height, CollapseVariant::Star);
  ConditionSet embedded = plain.order().empty_set();
  for (const auto& f : star.conditions()) embedded.set(plain.index_of(f));
  return is_dense(plain.order(), embedded);
}

namespace {

ProjectionFamily strata_of(const CollapseForcing& c) {
  ProjectionFamily family;
  family.whole = c.order();
  for (std::size_t beta = 0; beta <= c.height(); ++beta) family.strata.push_back(collapse_stratum(c, beta));
  return family;
}

}  // namespace

ProjectionFamily approachability_instance(const CollapseForcing& c) {
  ProjectionFamily family = strata_of(c);
  for (std::size_t alpha = 0; alpha < c.height(); ++alpha) family.projections.push_back(collapse_projection(c, alpha));
  return family;
}

ProjectionFamily constant_projection_family(const CollapseForcing& c) {
  ProjectionFamily family = strata_of(c);
  family.projections.assign(c.height(), std::vector<Cond>(c.size(), c.order().top()));
  return family;
}

CheckOutcome check_approachability(const ProjectionFamily& family) {
  CheckOutcome out;
  const Preorder& p = family.whole;
  const std::size_t levels = family.levels();
  auto fail = [&](std::string message) {
    out.ok = false;
    out.failure = std::move(message);
    return out;
  };
  if (family.strata.size() != levels + 1) return fail("expected one more stratum than projections");
  for (std::size_t beta = 0; beta <= levels; ++beta) {
    if (family.strata[beta].size() != p.size()) return fail("stratum " + std::to_string(beta) + " has the wrong width");
    if (!family.strata[beta][p.top()]) return fail("stratum " + std::to_string(beta) + " misses top");
    if (beta > 0 && !family.strata[beta - 1].is_subset_of(family.strata[beta])) {
      return fail("strata " + std::to_string(beta - 1) + " and " + std::to_string(beta) + " are not increasing");
    }
  }
  if (!family.strata[levels].all()) return fail("the last stratum is not the whole carrier");

  for (std::size_t alpha = 0; alpha < levels; ++alpha) {
    const auto& pi = family.projections[alpha];
    const ConditionSet& lower = family.strata[alpha];
    const ConditionSet& upper = family.strata[alpha + 1];
    const std::string tag = "alpha=" + std::to_string(alpha) + ": ";
    if (pi.size() != p.size()) return fail(tag + "projection has the wrong length");
    for (Cond x = 0; x < p.size(); ++x) {
      if (pi[x] >= p.size() || !upper[pi[x]]) return fail(tag + "image of " + p.id(x) + " leaves its stratum");
    }
    ++out.checked;
    if (pi[p.top()] != p.top()) return fail(tag + "clause (1) fails: top maps to " + p.id(pi[p.top()]));
    for (Cond x = 0; x < p.size(); ++x) {
      for (Cond y : members(p.above(x))) {
        ++out.checked;
        if (!p.le(pi[x], pi[y])) return fail(tag + "clause (2) fails at " + p.id(x) + " <= " + p.id(y));
      }
    }
    // preimage[q] = {r : pi(r) <= q}
    std::vector<ConditionSet> preimage(p.size(), p.empty_set());
    for (Cond r = 0; r < p.size(); ++r) {
      for (Cond q : members(p.above(pi[r]))) preimage[q].set(r);
    }
    for (Cond x = 0; x < p.size(); ++x) {
      for (Cond q : members(p.below(pi[x]) & upper)) {
        ++out.checked;
        if (!p.below(x).intersects(preimage[q])) {
          return fail(tag + "clause (3) fails at p=" + p.id(x) + " q=" + p.id(q));
        }
      }
    }
    for (Cond x : members(lower)) {
      for (Cond q = 0; q < p.size(); ++q) {
        ++out.checked;
        if (p.le(pi[q], x) && !p.le(q, x)) return fail(tag + "clause (4) fails at p=" + p.id(x) + " q=" + p.id(q));
      }
      ++out.checked;
      if (pi[x] != x) return fail(tag + "clause (5) fails at " + p.id(x));
    }
  }
  return out;
}

void require_stratum_name(const ProjectionFamily& family, std::size_t alpha, const PName& sigma) {
  if (alpha >= family.strata.size()) throw Error("stratum index out of range");
  validate_name(sigma, family.whole);
  for (const PName& s : subnames(sigma)) {
    for (const NameEntry& e : s.entries()) {
      if (!family.strata[alpha][e.cond]) {
        throw Error("name mentions " + family.whole.id(e.cond) + " outside stratum " + std::to_string(alpha));
      }
    }
  }
}

RestrictedForcing::RestrictedForcing(const ProjectionFamily& family, std::size_t alpha)
    : family_(&family),
      alpha_(alpha),
      stratum_(alpha < family.levels() ? induced_suborder(family.whole, family.strata[alpha + 1])
                                       : throw Error("projection index out of range")),
      engine_(stratum_.order) {}

PName RestrictedForcing::localize(const PName& s) const {
  require_stratum_name(*family_, alpha_, s);
  std::vector<Cond> map(family_->whole.size(), 0);
  for (Cond c = 0; c < map.size(); ++c) {
    if (stratum_.from_parent[c]) map[c] = *stratum_.from_parent[c];
  }
  return retag(s, map);
}

Cond RestrictedForcing::project(Cond p) const {
  Cond image = family_->projections[alpha_][p];
  auto local = stratum_.from_parent.at(image);
  if (!local) throw Error("projection of " + family_->whole.id(p) + " leaves stratum " + std::to_string(alpha_ + 1));
  return *local;
}

bool RestrictedForcing::sub(Cond p, const PName& s, const PName& t) {
  return engine_.sub(localize(s), localize(t))[project(p)];
}

bool RestrictedForcing::eq(Cond p, const PName& s, const PName& t) {
  return engine_.eq(localize(s), localize(t))[project(p)];
}

std::vector<PName> stratum_names(const ProjectionFamily& family, std::size_t alpha, const NamePoolSpec& spec,
                                 std::mt19937_64& rng) {
  Suborder sub = induced_suborder(family.whole, family.strata.at(alpha));
  std::vector<PName> out;
  for (const PName& s : sample_names(sub.order, spec, rng)) out.push_back(retag(s, sub.to_parent));
  return out;
}

CheckOutcome check_restricted_equivalence(const ProjectionFamily& family, std::size_t alpha,
                                         const std::vector<PName>& names) {
  CheckOutcome out;
  RestrictedForcing restricted(family, alpha);
  StarForcing whole(family.whole);
  for (const PName& s : names) {
    for (const PName& t : names) {
      const ConditionSet& full = whole.sub(s, t);
      for (Cond p = 0; p < family.whole.size(); ++p) {
        ++out.checked;
        if (full[p] != restricted.sub(p, s, t)) {
          out.ok = false;
          out.failure = "p=" + family.whole.id(p) + " s=" + to_string(s, family.whole) +
                        " t=" + to_string(t, family.whole) + (full[p] ? " forced only in the whole order"
                                                                      : " forced only in the restriction");
          return out;
        }
      }
    }
  }
  return out;
}

CheckOutcome proj_gen_ext_check(const ProjectionFamily& family, std::size_t alpha, const ConditionSet& generic,
                               const std::vector<PName>& names) {
  CheckOutcome out;
  if (alpha >= family.levels()) throw Error("projection index out of range");
  const Preorder& p = family.whole;
  if (!cone_root(p, generic)) throw Error("proj_gen_ext_check needs a cone generic of the whole order");
  ConditionSet image = p.empty_set();
  for (Cond g : members(generic)) image.set(family.projections[alpha][g]);
  ConditionSet projected = p.upward_closure(image) & family.strata[alpha + 1];
  for (const PName& s : names) {
    require_stratum_name(family, alpha, s);
    ++out.checked;
    HFSet left = evaluate(s, generic);
    HFSet right = evaluate(s, projected);
    if (left != right) {
      out.ok = false;
      out.failure = to_string(s, p) + " has value " + left.to_string() + " under G but " + right.to_string() +
                    " under the projected filter";
      return out;
    }
  }
  return out;
}

}  // namespace forcelab
