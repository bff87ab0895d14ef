#include "forcelab/forcing.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "forcelab/error.hpp"

namespace forcelab {

ConditionSet cone(const Preorder& p, Cond m) { return p.above(m); }

std::vector<ConditionSet> cone_generics(const Preorder& p) {
  std::vector<ConditionSet> out;
  for (Cond m : minimal_classes(p)) out.push_back(cone(p, m));
  return out;
}

std::optional<Cond> cone_root(const Preorder& p, const ConditionSet& filter) {
  if (filter.size() != p.size()) return std::nullopt;
  for (Cond m : minimal_classes(p)) {
    if (cone(p, m) == filter) return m;
  }
  return std::nullopt;
}

namespace {

bool holds_in(NameEvaluator& eval, const InfFormula& f, std::unordered_map<const void*, bool>& memo) {
  if (auto it = memo.find(f.identity()); it != memo.end()) return it->second;
  bool result = false;
  switch (f.kind()) {
    case InfFormula::Kind::InGeneric:
      if (f.condition() >= eval.filter().size()) throw Error("formula refers to a condition outside the forcing");
      result = eval.filter()[f.condition()];
      break;
    case InfFormula::Kind::Eq:
      result = eval(f.lhs()) == eval(f.rhs());
      break;
    case InfFormula::Kind::Mem:
      result = eval(f.rhs()).contains(eval(f.lhs()));
      break;
    case InfFormula::Kind::Not:
      result = !holds_in(eval, f.operand(), memo);
      break;
    case InfFormula::Kind::Or:
      result = std::any_of(f.operands().begin(), f.operands().end(),
                           [&](const InfFormula& g) { return holds_in(eval, g, memo); });
      break;
    case InfFormula::Kind::And:
      result = std::all_of(f.operands().begin(), f.operands().end(),
                           [&](const InfFormula& g) { return holds_in(eval, g, memo); });
      break;
  }
  memo.emplace(f.identity(), result);
  return result;
}

}  // namespace

bool GenericModel::holds(const InfFormula& f) {
  // Formula nodes are not interned, so truth is only cached within one call.
  std::unordered_map<const void*, bool> memo;
  return holds_in(eval_, f, memo);
}

bool GenericModel::holds(const Atomic& a) {
  HFSet s = eval_(a.lhs);
  HFSet t = eval_(a.rhs);
  switch (a.kind) {
    case AtomKind::Eq:
      return s == t;
    case AtomKind::Mem:
      return t.contains(s);
    case AtomKind::Sub:
      return std::all_of(s.elements().begin(), s.elements().end(), [&](const HFSet& x) { return t.contains(x); });
  }
  return false;
}

SemanticOracle::SemanticOracle(const Preorder& p) : order_(&p), minimal_(minimal_classes(p)) {
  for (Cond m : minimal_) models_.emplace_back(cone(p, m));
}

boost::dynamic_bitset<> SemanticOracle::truth(const InfFormula& f) {
  boost::dynamic_bitset<> out(minimal_.size());
  for (std::size_t i = 0; i < minimal_.size(); ++i) out[i] = models_[i].holds(f);
  return out;
}

boost::dynamic_bitset<> SemanticOracle::truth(const Atomic& a) {
  boost::dynamic_bitset<> out(minimal_.size());
  for (std::size_t i = 0; i < minimal_.size(); ++i) out[i] = models_[i].holds(a);
  return out;
}

ConditionSet SemanticOracle::forcing_set(const boost::dynamic_bitset<>& truth) const {
  ConditionSet refuted(order_->size());
  for (std::size_t i = 0; i < minimal_.size(); ++i) {
    if (!truth[i]) refuted |= order_->above(minimal_[i]);
  }
  return ~refuted;
}

Verdict SemanticOracle::verdict(Cond p, const boost::dynamic_bitset<>& truth) const {
  for (std::size_t i = 0; i < minimal_.size(); ++i) {
    if (order_->le(minimal_[i], p) && !truth[i]) return {false, minimal_[i]};
  }
  return {true, std::nullopt};
}

Verdict semantic_forces(const Preorder& p, Cond c, const InfFormula& f) { return SemanticOracle(p).forces(c, f); }
Verdict semantic_forces(const Preorder& p, Cond c, const Atomic& a) { return SemanticOracle(p).forces(c, a); }

const ConditionSet& AtomicForcing::mem(const PName& s, const PName& t) {
  Key key{s.identity(), t.identity()};
  if (auto it = mem_.find(key); it != mem_.end()) return it->second;
  const Preorder& p = *order_;
  // E = {q : some <rho,r> in t with q <= r and q forcing s = rho}
  ConditionSet e = p.empty_set();
  for (const auto& entry : t.entries()) {
    if (entry.cond >= p.size()) throw Error("name refers to a condition outside the forcing");
    if (p.below(entry.cond).is_subset_of(e)) continue;
    e |= entry.name == s ? p.below(entry.cond) : p.below(entry.cond) & eq(s, entry.name);
  }
  return mem_.emplace(key, p.dense_below_set(e)).first->second;
}

const ConditionSet& AtomicForcing::sub(const PName& s, const PName& t) {
  Key key{s.identity(), t.identity()};
  if (auto it = sub_.find(key); it != sub_.end()) return it->second;
  const Preorder& p = *order_;
  ConditionSet result = p.full_set();
  for (const auto& entry : s.entries()) {
    if (s == t) break;
    if (entry.cond >= p.size()) throw Error("name refers to a condition outside the forcing");
    // Every q <= p, r must see conditions forcing rho in t densely below it.
    // mem() is already closed under density.
    ConditionSet bad = p.below(entry.cond) - mem(entry.name, t);
    result &= p.avoiding_set(bad);
    if (result.none()) break;
  }
  return sub_.emplace(key, std::move(result)).first->second;
}

ConditionSet AtomicForcing::eq(const PName& s, const PName& t) {
  ConditionSet out = sub(s, t);
  out &= sub(t, s);
  return out;
}

ConditionSet AtomicForcing::forcing_set(const Atomic& a) {
  switch (a.kind) {
    case AtomKind::Eq:
      return eq(a.lhs, a.rhs);
    case AtomKind::Mem:
      return mem(a.lhs, a.rhs);
    case AtomKind::Sub:
      return sub(a.lhs, a.rhs);
  }
  return order_->empty_set();
}

Verdict AtomicForcing::forces(Cond c, const Atomic& a) {
  ConditionSet f = forcing_set(a);
  if (f[c]) return {true, std::nullopt};
  for (Cond m : minimal_classes(*order_)) {
    if (order_->le(m, c) && !f[m]) return {false, m};
  }
  return {false, std::nullopt};
}

Verdict syntactic_forces_atomic(const Preorder& p, Cond c, const Atomic& a) { return AtomicForcing(p).forces(c, a); }

ConditionSet decidability_frontier(const Preorder& p, const Atomic& a) {
  AtomicForcing engine(p);
  ConditionSet yes = engine.forcing_set(a);
  ConditionSet frontier = yes | p.avoiding_set(yes);
  if (!is_dense(p, frontier)) throw Error("decidability frontier is not dense");
  return frontier;
}

ConditionSet nu_mu_forcing_set(AtomicForcing& engine, const InfFormula& f) {
  NuMu names = nu_mu(f, engine.order().top());
  return engine.eq(names.nu, names.mu);
}

bool forces_via_nu_mu(const Preorder& p, Cond c, const InfFormula& f) {
  AtomicForcing engine(p);
  return nu_mu_forcing_set(engine, f)[c];
}

NamePool NamePool::closed(std::vector<PName> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  NamePool pool;
  pool.names_ = std::move(names);
  for (const auto& s : pool.names_) {
    for (const auto& e : s.entries()) {
      if (!pool.contains(e.name)) throw Error("name pool is not closed under subnames");
    }
  }
  return pool;
}

NamePool NamePool::closure_of(const std::vector<PName>& names) {
  std::vector<PName> all;
  for (const auto& s : names) {
    auto sub = subnames(s);
    all.insert(all.end(), sub.begin(), sub.end());
  }
  return closed(std::move(all));
}

bool NamePool::contains(const PName& s) const { return std::binary_search(names_.begin(), names_.end(), s); }

FOForcing::FOForcing(const Preorder& p, NamePool pool, std::vector<PName> classes)
    : order_(&p), pool_(std::move(pool)), classes_(std::move(classes)), atomic_(p) {
  if (pool_.size() == 0) throw Error("quantifier pool is empty");
}

namespace {

const PName& assigned(const std::vector<std::optional<PName>>& env, std::size_t i) {
  if (i >= env.size() || !env[i]) throw Error("variable v" + std::to_string(i) + " is unassigned");
  return *env[i];
}

}  // namespace

ConditionSet FOForcing::compute(const FOFormula& f, std::vector<std::optional<PName>>& env) {
  const Preorder& p = *order_;
  switch (f.kind()) {
    case FOFormula::Kind::Eq:
      return atomic_.eq(assigned(env, f.left()), assigned(env, f.right()));
    case FOFormula::Kind::Mem:
      return atomic_.mem(assigned(env, f.left()), assigned(env, f.right()));
    case FOFormula::Kind::InClass: {
      if (f.right() >= classes_.size()) throw Error("class predicate A" + std::to_string(f.right()) + " has no name");
      const PName& s = assigned(env, f.left());
      ConditionSet d = p.empty_set();
      for (const auto& e : classes_[f.right()].entries()) d |= p.below(e.cond) & atomic_.eq(s, e.name);
      return p.dense_below_set(d);
    }
    case FOFormula::Kind::Not:
      return p.avoiding_set(compute(f.operands()[0], env));
    case FOFormula::Kind::And: {
      ConditionSet out = p.full_set();
      for (const auto& g : f.operands()) out &= compute(g, env);
      return out;
    }
    case FOFormula::Kind::Or: {
      ConditionSet any = p.empty_set();
      for (const auto& g : f.operands()) any |= compute(g, env);
      return p.dense_below_set(any);
    }
    case FOFormula::Kind::Exists:
    case FOFormula::Kind::Forall: {
      const std::size_t k = f.variable();
      if (env.size() <= k) env.resize(k + 1);
      auto saved = env[k];
      std::vector<ConditionSet> parts;
      for (const auto& tau : pool_.names()) {
        env[k] = tau;
        parts.push_back(compute(f.body(), env));
      }
      env[k] = saved;
      if (f.kind() == FOFormula::Kind::Forall) {
        ConditionSet out = p.full_set();
        for (const auto& s : parts) out &= s;
        return out;
      }
      // Direct clause: conditions forcing some instance are dense below p.
      ConditionSet any = p.empty_set();
      for (const auto& s : parts) any |= s;
      ConditionSet direct = p.dense_below_set(any);
      // Dual clause: p forces "not for all tau, not phi(tau)".
      ConditionSet none = p.full_set();
      for (const auto& s : parts) none &= p.avoiding_set(s);
      ConditionSet dual = p.avoiding_set(none);
      if (direct != dual) throw Error("existential forcing clauses disagree on " + to_string(f));
      return direct;
    }
  }
  return p.empty_set();
}

ConditionSet FOForcing::forcing_set(const FOFormula& f, const std::vector<PName>& assignment) {
  std::vector<std::optional<PName>> env(assignment.begin(), assignment.end());
  return compute(f, env);
}

bool FOForcing::forces(Cond c, const FOFormula& f, const std::vector<PName>& assignment) {
  return forcing_set(f, assignment)[c];
}

bool FOForcing::holds(GenericModel& model, const FOFormula& f, std::vector<std::optional<PName>>& env) {
  switch (f.kind()) {
    case FOFormula::Kind::Eq:
      return model.value(assigned(env, f.left())) == model.value(assigned(env, f.right()));
    case FOFormula::Kind::Mem:
      return model.value(assigned(env, f.right())).contains(model.value(assigned(env, f.left())));
    case FOFormula::Kind::InClass:
      if (f.right() >= classes_.size()) throw Error("class predicate A" + std::to_string(f.right()) + " has no name");
      return model.value(classes_[f.right()]).contains(model.value(assigned(env, f.left())));
    case FOFormula::Kind::Not:
      return !holds(model, f.operands()[0], env);
    case FOFormula::Kind::And:
      for (const auto& g : f.operands()) {
        if (!holds(model, g, env)) return false;
      }
      return true;
    case FOFormula::Kind::Or:
      for (const auto& g : f.operands()) {
        if (holds(model, g, env)) return true;
      }
      return false;
    case FOFormula::Kind::Exists:
    case FOFormula::Kind::Forall: {
      const bool existential = f.kind() == FOFormula::Kind::Exists;
      const std::size_t k = f.variable();
      if (env.size() <= k) env.resize(k + 1);
      auto saved = env[k];
      bool result = !existential;
      for (const auto& tau : pool_.names()) {
        env[k] = tau;
        if (holds(model, f.body(), env) == existential) {
          result = existential;
          break;
        }
      }
      env[k] = saved;
      return result;
    }
  }
  return false;
}

bool FOForcing::holds_at(const ConditionSet& filter, const FOFormula& f, const std::vector<PName>& assignment) {
  GenericModel model(filter);
  std::vector<std::optional<PName>> env(assignment.begin(), assignment.end());
  return holds(model, f, env);
}

ConditionSet FOForcing::semantic_forcing_set(const FOFormula& f, const std::vector<PName>& assignment) {
  const Preorder& p = *order_;
  ConditionSet refuted = p.empty_set();
  for (Cond m : minimal_classes(p)) {
    if (!holds_at(cone(p, m), f, assignment)) refuted |= p.above(m);
  }
  return ~refuted;
}

namespace {

std::vector<Cond> weakest_first(const Preorder& p, const ConditionSet& filter) {
  auto out = members(filter);
  std::stable_sort(out.begin(), out.end(), [&](Cond a, Cond b) { return p.above(a).count() < p.above(b).count(); });
  return out;
}

}  // namespace

TruthLemmaOutcome truth_lemma_check(const Preorder& p, const ConditionSet& filter, const InfFormula& f) {
  if (!cone_root(p, filter)) throw Error("truth_lemma_check: filter is not generic");
  TruthLemmaOutcome out;
  out.holds = GenericModel(filter).holds(f);
  if (!out.holds) return out;
  ConditionSet forced = SemanticOracle(p).forcing_set(f);
  for (Cond c : weakest_first(p, filter)) {
    if (forced[c]) {
      out.witness = c;
      break;
    }
  }
  return out;
}

TruthLemmaOutcome truth_lemma_check(FOForcing& forcing, const ConditionSet& filter, const FOFormula& f,
                                    const std::vector<PName>& assignment) {
  const Preorder& p = forcing.atomic().order();
  if (!cone_root(p, filter)) throw Error("truth_lemma_check: filter is not generic");
  TruthLemmaOutcome out;
  out.holds = forcing.holds_at(filter, f, assignment);
  if (!out.holds) return out;
  ConditionSet forced = forcing.forcing_set(f, assignment);
  for (Cond c : weakest_first(p, filter)) {
    if (forced[c]) {
      out.witness = c;
      break;
    }
  }
  return out;
}

BooleanValuation::BooleanValuation(const Preorder& p, std::size_t max_size) {
  quotient_ = separative_quotient(p);
  completion_ = regular_open_algebra(quotient_->target, max_size).completion;
}

BooleanValuation::BooleanValuation(Completion completion) : completion_(std::move(completion)) {
  const auto& src = completion_.source;
  if (!src.is_antisymmetric() || !is_separative(src) || !is_dense_embedding(completion_)) {
    throw Error("boolean values need a verified completion of a separative antisymmetric forcing");
  }
}

Elem BooleanValuation::embed(Cond p) const {
  return completion_.embedding[quotient_ ? quotient_->map[p] : p];
}

Elem BooleanValuation::value(const Atomic& a) {
  PName s = quotient_ ? transport_quotient(a.lhs, *quotient_) : a.lhs;
  PName t = quotient_ ? transport_quotient(a.rhs, *quotient_) : a.rhs;
  switch (a.kind) {
    case AtomKind::Eq:
      return eq(s, t);
    case AtomKind::Mem:
      return mem(s, t);
    case AtomKind::Sub:
      return sub(s, t);
  }
  return algebra().zero();
}

Elem BooleanValuation::mem(const PName& s, const PName& t) {
  auto key = std::make_pair(s.identity(), t.identity());
  if (auto it = mem_.find(key); it != mem_.end()) return it->second;
  const auto& b = algebra();
  Elem acc = b.zero();
  for (const auto& e : t.entries()) acc = b.join(acc, b.meet(eq(s, e.name), completion_.embedding.at(e.cond)));
  mem_.emplace(key, acc);
  return acc;
}

Elem BooleanValuation::sub(const PName& s, const PName& t) {
  auto key = std::make_pair(s.identity(), t.identity());
  if (auto it = sub_.find(key); it != sub_.end()) return it->second;
  const auto& b = algebra();
  Elem acc = b.one();
  for (const auto& pi : s.domain()) acc = b.meet(acc, b.join(b.complement(mem(pi, s)), mem(pi, t)));
  sub_.emplace(key, acc);
  return acc;
}

Elem BooleanValuation::eq(const PName& s, const PName& t) { return algebra().meet(sub(s, t), sub(t, s)); }

Elem formula_to_ro(const RegularOpenAlgebra& ro, AtomicForcing& engine, const InfFormula& f) {
  auto e = ro.element_of(nu_mu_forcing_set(engine, f));
  if (!e) throw Error("formula_to_ro: forcing set is not a regular open set");
  return *e;
}

const ConditionSet& StarForcing::sub(const PName& s, const PName& t) {
  auto key = std::make_pair(s.identity(), t.identity());
  if (auto it = sub_.find(key); it != sub_.end()) return it->second;
  const Preorder& p = *order_;
  ConditionSet result = p.full_set();
  for (const auto& rs : s.entries()) {
    ConditionSet good = ~p.below(rs.cond);
    for (const auto& pt : t.entries()) good |= p.below(pt.cond) & eq(rs.name, pt.name);
    result &= p.dense_below_set(good);
  }
  return sub_.emplace(key, std::move(result)).first->second;
}

ConditionSet StarForcing::eq(const PName& s, const PName& t) {
  ConditionSet out = sub(s, t);
  out &= sub(t, s);
  return out;
}

ConditionSet StarForcing::forcing_set(const Atomic& a) {
  switch (a.kind) {
    case AtomKind::Sub:
      return sub(a.lhs, a.rhs);
    case AtomKind::Eq:
      return eq(a.lhs, a.rhs);
    case AtomKind::Mem:
      break;
  }
  throw Error("the inclusion-form forcing relation covers only inclusion and equality");
}

}  // namespace forcelab
