#include "forcelab/suites.hpp"

#include <algorithm>
#include <numeric>
#include <variant>

#include "forcelab/boolean.hpp"
#include "forcelab/error.hpp"
#include "forcelab/forcing.hpp"
#include "forcelab/generators.hpp"
#include "forcelab/generic.hpp"

namespace forcelab {

namespace {

constexpr AtomKind kAtomKinds[] = {AtomKind::Eq, AtomKind::Mem, AtomKind::Sub};

CheckOutcome fail(CheckOutcome out, std::string message) {
  out.ok = false;
  out.failure = std::move(message);
  return out;
}

std::string at(const Preorder& p, Cond c) { return " at " + p.id(c); }

}  // namespace

CheckOutcome check_atomic_equivalence(const Preorder& p, const std::vector<PName>& names) {
  CheckOutcome out;
  AtomicForcing engine(p);
  SemanticOracle oracle(p);
  for (const auto& s : names) {
    for (const auto& t : names) {
      for (AtomKind k : kAtomKinds) {
        Atomic a{k, s, t};
        ConditionSet syntactic = engine.forcing_set(a);
        ConditionSet semantic = oracle.forcing_set(a);
        out.checked += p.size();
        if (syntactic != semantic) {
          Cond c = (syntactic ^ semantic).find_first();
          return fail(out, to_string(a, p) + at(p, c) + ": recursive " + (syntactic[c] ? "forces" : "does not force"));
        }
      }
    }
  }
  return out;
}

CheckOutcome check_truth_lemma(const Preorder& p, const std::vector<PName>& names) {
  CheckOutcome out;
  AtomicForcing engine(p);
  auto generics = cone_generics(p);
  std::vector<GenericModel> models;
  for (const auto& g : generics) models.emplace_back(g);
  auto forced_somewhere = [&](const ConditionSet& forced, std::size_t i) { return forced.intersects(generics[i]); };
  for (const auto& s : names) {
    for (const auto& t : names) {
      for (AtomKind k : {AtomKind::Eq, AtomKind::Mem}) {
        Atomic a{k, s, t};
        const ConditionSet forced = engine.forcing_set(a);
        for (std::size_t i = 0; i < generics.size(); ++i) {
          ++out.checked;
          if (models[i].holds(a) && !forced_somewhere(forced, i)) {
            return fail(out, to_string(a, p) + " holds in " + format_set(p, generics[i]) + " but nothing there forces it");
          }
        }
      }
    }
  }
  for (Cond c = 0; c < p.size(); ++c) {
    for (std::size_t i = 0; i < generics.size(); ++i) {
      ++out.checked;
      if (!generics[i][c]) continue;
      auto lemma = truth_lemma_check(p, generics[i], InfFormula::in_generic(c));
      if (!lemma.ok()) return fail(out, p.id(c) + " is in " + format_set(p, generics[i]) + " but nothing forces it");
    }
  }
  return out;
}

CheckOutcome check_nu_mu(const Preorder& p, const std::vector<PName>& names, std::size_t count,
                         std::mt19937_64& rng) {
  CheckOutcome out;
  AtomicForcing engine(p);
  SemanticOracle oracle(p);
  auto generics = cone_generics(p);
  for (std::size_t n = 0; n < count; ++n) {
    InfFormula f = random_inf_formula(p, names, {}, rng);
    NuMu pair = nu_mu(f, p.top());
    for (std::size_t i = 0; i < generics.size(); ++i) {
      ++out.checked;
      bool holds = oracle.model(i).holds(f);
      bool equal = oracle.model(i).value(pair.nu) == oracle.model(i).value(pair.mu);
      if (holds != equal) {
        return fail(out, to_string(f, p) + " in " + format_set(p, generics[i]) + ": formula " +
                             (holds ? "holds" : "fails") + " but nu and mu " + (equal ? "agree" : "differ"));
      }
    }
    ConditionSet through = nu_mu_forcing_set(engine, f);
    ConditionSet semantic = oracle.forcing_set(f);
    out.checked += p.size();
    if (through != semantic) {
      Cond c = (through ^ semantic).find_first();
      return fail(out, to_string(f, p) + at(p, c) + ": forcing nu = mu disagrees with semantic forcing");
    }
  }
  return out;
}

CheckOutcome check_boolean_values(const Preorder& p, const std::vector<PName>& names) {
  CheckOutcome out;
  BooleanValuation valuation(p);
  SemanticOracle oracle(p);
  for (const auto& s : names) {
    for (const auto& t : names) {
      for (AtomKind k : kAtomKinds) {
        Atomic a{k, s, t};
        ConditionSet semantic = oracle.forcing_set(a);
        for (Cond c = 0; c < p.size(); ++c) {
          ++out.checked;
          if (valuation.forces(c, a) != static_cast<bool>(semantic[c])) {
            return fail(out, to_string(a, p) + at(p, c) + ": Boolean value and forcing disagree");
          }
        }
      }
    }
  }
  return out;
}

CheckOutcome check_completion_isomorphism(const Preorder& p) {
  CheckOutcome out;
  auto saturated = saturate_to_boolean(p);
  auto ro = regular_open_algebra(p);
  ++out.checked;
  if (!(saturated.completion.source == ro.completion.source)) return fail(out, "completions are over different forcings");
  if (!is_dense_embedding(saturated.completion)) return fail(out, "saturation is not a dense embedding");
  auto iso = completion_isomorphism(saturated.completion, ro.completion);
  if (auto* failure = std::get_if<IsomorphismFailure>(&iso)) return fail(out, "no isomorphism: " + failure->law);
  std::size_t expected = std::size_t{1} << minimal_classes(p).size();
  if (ro.completion.algebra.size() != expected) {
    return fail(out, "regular open algebra has " + std::to_string(ro.completion.algebra.size()) + " elements, not " +
                         std::to_string(expected));
  }
  return out;
}

CheckOutcome check_quotient_transfer(const Preorder& p, const std::vector<PName>& names) {
  CheckOutcome out;
  QuotientMap q = separative_quotient(p);
  AtomicForcing source(q.source);
  AtomicForcing target(q.target);
  std::vector<PName> moved;
  for (const auto& s : names) moved.push_back(transport_quotient(s, q));
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = 0; j < names.size(); ++j) {
      for (AtomKind k : kAtomKinds) {
        Atomic a{k, names[i], names[j]};
        ConditionSet before = source.forcing_set(a);
        ConditionSet after = target.forcing_set({k, moved[i], moved[j]});
        for (Cond c = 0; c < p.size(); ++c) {
          ++out.checked;
          if (static_cast<bool>(before[c]) != static_cast<bool>(after[q.map[c]])) {
            return fail(out, to_string(a, p) + at(p, c) + ": forcing changes in the separative quotient");
          }
        }
      }
    }
  }
  return out;
}

CheckOutcome check_projection_family(const ProjectionFamily& family, const NamePoolSpec& spec, std::size_t max_names,
                                     std::mt19937_64& rng) {
  CheckOutcome out = check_approachability(family);
  if (!out.ok) return out;
  auto generics = cone_generics(family.whole);
  for (std::size_t alpha = 0; alpha < family.levels(); ++alpha) {
    auto names = stratum_names(family, alpha, spec, rng);
    if (names.size() > max_names) {
      std::shuffle(names.begin(), names.end(), rng);
      names.resize(max_names);
    }
    CheckOutcome restricted = check_restricted_equivalence(family, alpha, names);
    out.checked += restricted.checked;
    if (!restricted.ok) return fail(out, "level " + std::to_string(alpha) + ": " + restricted.failure);
    for (const auto& g : generics) {
      CheckOutcome transfer = proj_gen_ext_check(family, alpha, g, names);
      out.checked += transfer.checked;
      if (!transfer.ok) return fail(out, "level " + std::to_string(alpha) + ": " + transfer.failure);
    }
  }
  return out;
}

CheckOutcome check_friedman_decoding(const FriedmanForcing& f, const std::vector<std::uint64_t>& seeds) {
  CheckOutcome out;
  ExplicitFriedman explicit_order(f);
  auto schedule = friedman_schedule(f);
  for (std::uint64_t seed : seeds) {
    std::mt19937_64 rng(seed);
    auto order = schedule;
    std::shuffle(order.begin(), order.end(), rng);
    auto chain = friedman_generic(f, order, &rng);
    ++out.checked;
    auto last = explicit_order.find(chain.back());
    if (!last) return fail(out, "seed " + std::to_string(seed) + ": final condition is not in the explicit order");
    ConditionSet filter = cone(explicit_order.order(), *last);
    if (!filter_validate(explicit_order.order(), filter)) {
      return fail(out, "seed " + std::to_string(seed) + ": not a filter");
    }
    std::vector<FriedmanCondition> conditions;
    for (Cond c : members(filter)) conditions.push_back(explicit_order.condition(c));
    CheckOutcome iso = check_decoded_isomorphism(decode_E_F(conditions), f.model(), f.indices());
    if (!iso.ok) return fail(out, "seed " + std::to_string(seed) + ": " + iso.failure);
  }
  return out;
}

namespace {

std::size_t assignment_length(const FOFormula& phi) {
  auto free = free_variables(phi);
  return free.empty() ? 0 : *free.rbegin() + 1;
}

struct VarphiContext {
  explicit VarphiContext(const FriedmanForcing& f) : order(f), oracle(order.order()), edot(edot_name(order)) {}
  ExplicitFriedman order;
  SemanticOracle oracle;
  PName edot;

  std::optional<std::string> failure(const FOFormula& phi, const std::vector<HFSet>& x) {
    auto outcome = varphi_star_check(order, oracle, edot, phi, x);
    if (outcome.ok()) return std::nullopt;
    std::string where;
    for (const auto& v : x) where += (where.empty() ? "" : ",") + v.to_string();
    return to_string(phi) + " at (" + where + "): " + (outcome.satisfied ? "true" : "false") + " in the ground model, " +
           (outcome.forced ? "forced" : "not forced") + ", negation " +
           (outcome.negation_forced ? "forced" : "not forced");
  }
};

}  // namespace

CheckOutcome check_varphi_star(const FriedmanForcing& f, const std::vector<FOFormula>& formulas) {
  CheckOutcome out;
  VarphiContext context(f);
  auto carrier = f.model().carrier();
  for (const auto& phi : formulas) {
    std::size_t length = assignment_length(phi);
    std::vector<std::size_t> digits(length, 0);
    while (true) {
      std::vector<HFSet> x;
      for (std::size_t d : digits) x.push_back(carrier[d]);
      ++out.checked;
      if (auto failure = context.failure(phi, x)) return fail(out, *failure);
      std::size_t i = 0;
      while (i < length && ++digits[i] == carrier.size()) digits[i++] = 0;
      if (i == length) break;
    }
  }
  return out;
}

CheckOutcome check_varphi_star_sampled(const FriedmanForcing& f, std::size_t count, std::size_t free,
                                       std::size_t quantifiers, std::mt19937_64& rng) {
  CheckOutcome out;
  VarphiContext context(f);
  auto carrier = f.model().carrier();
  for (std::size_t n = 0; n < count; ++n) {
    FOFormula phi = random_bounded_fo_formula(free, quantifiers, rng);
    std::vector<HFSet> x;
    for (std::size_t i = 0; i < assignment_length(phi); ++i) x.push_back(carrier[rng() % carrier.size()]);
    ++out.checked;
    if (auto failure = context.failure(phi, x)) return fail(out, *failure);
  }
  return out;
}

}  // namespace forcelab
