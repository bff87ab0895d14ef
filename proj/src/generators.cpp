#include "forcelab/generators.hpp"

#include <algorithm>
#include <set>

#include "forcelab/hf.hpp"

namespace forcelab {

namespace {

std::vector<std::string> default_ids(std::size_t n) {
  std::vector<std::string> ids{"1"};
  for (std::size_t i = 1; i < n; ++i) ids.push_back(std::string(1, static_cast<char>('a' + i - 1)));
  return ids;
}

std::size_t below(std::size_t bound, std::mt19937_64& rng) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

bool coin(double p, std::mt19937_64& rng) { return std::bernoulli_distribution(p)(rng); }

}  // namespace

std::vector<Preorder> small_preorders(std::size_t max_size) {
  std::vector<Preorder> out;
  std::set<std::vector<ConditionSet>> seen;
  for (std::size_t n = 1; n <= max_size; ++n) {
    std::vector<std::pair<Cond, Cond>> optional;
    for (Cond i = 0; i < n; ++i) {
      for (Cond j = 1; j < n; ++j) {
        if (i != j) optional.emplace_back(i, j);
      }
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << optional.size()); ++mask) {
      std::vector<std::pair<Cond, Cond>> gens;
      for (Cond i = 0; i < n; ++i) gens.emplace_back(i, 0);
      for (std::size_t k = 0; k < optional.size(); ++k) {
        if ((mask >> k) & 1) gens.push_back(optional[k]);
      }
      Preorder p = Preorder::from_generators(default_ids(n), gens, 0);
      std::vector<ConditionSet> rows;
      for (Cond i = 0; i < n; ++i) rows.push_back(p.above(i));
      if (seen.insert(rows).second) out.push_back(std::move(p));
    }
  }
  return out;
}

Preorder random_preorder(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::pair<Cond, Cond>> gens;
  for (Cond i = 0; i < n; ++i) gens.emplace_back(i, 0);
  for (Cond i = 0; i < n; ++i) {
    for (Cond j = 1; j < n; ++j) {
      if (i == j) continue;
      double p = i == 0 ? 0.05 : 0.25;
      if (coin(p, rng)) gens.emplace_back(i, j);
    }
  }
  return Preorder::from_generators(default_ids(n), gens, 0);
}

std::vector<Preorder> preorder_suite(std::size_t count, std::uint64_t seed, std::size_t max_conditions) {
  std::vector<Preorder> out = small_preorders(std::min<std::size_t>(3, max_conditions));
  std::mt19937_64 rng(seed);
  while (out.size() < count && max_conditions >= 4) {
    std::size_t n = 4 + below(max_conditions - 3, rng);
    out.push_back(random_preorder(n, rng));
  }
  return out;
}

std::vector<PName> sample_names(const Preorder& p, const NamePoolSpec& spec, std::mt19937_64& rng) {
  std::vector<PName> pool{PName()};
  std::vector<PName> previous = pool;
  if (spec.max_rank >= 1) {
    std::vector<PName> level;
    for (Cond x = 0; x < p.size(); ++x) {
      level.push_back(PName::of({{PName(), x}}));
      for (Cond y = x + 1; y < p.size(); ++y) level.push_back(PName::of({{PName(), x}, {PName(), y}}));
    }
    pool.insert(pool.end(), level.begin(), level.end());
    previous.insert(previous.end(), level.begin(), level.end());
  }
  for (const auto& x : vstage(std::min<std::size_t>(spec.max_rank + 1, 3))) pool.push_back(check_name(x, p.top()));
  for (std::size_t rank = 2; rank <= spec.max_rank; ++rank) {
    std::vector<PName> level;
    for (std::size_t k = 0; k < spec.per_rank; ++k) {
      std::size_t entries = 1 + below(spec.max_entries, rng);
      std::vector<NameEntry> es;
      for (std::size_t e = 0; e < entries; ++e) es.push_back({previous[below(previous.size(), rng)], below(p.size(), rng)});
      level.push_back(PName::of(std::move(es)));
    }
    pool.insert(pool.end(), level.begin(), level.end());
    previous.insert(previous.end(), level.begin(), level.end());
  }
  std::vector<PName> closed;
  for (const auto& s : pool) {
    auto sub = subnames(s);
    closed.insert(closed.end(), sub.begin(), sub.end());
  }
  std::sort(closed.begin(), closed.end());
  closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
  return closed;
}

InfFormula random_inf_formula(const Preorder& p, const std::vector<PName>& names, const FormulaSpec& spec,
                              std::mt19937_64& rng) {
  auto name = [&] { return names[below(names.size(), rng)]; };
  if (spec.depth == 0 || coin(0.25, rng)) {
    switch (below(3, rng)) {
      case 0:
        return InfFormula::in_generic(below(p.size(), rng));
      case 1:
        return InfFormula::eq(name(), name());
      default:
        return InfFormula::mem(name(), name());
    }
  }
  FormulaSpec inner{spec.depth - 1, spec.max_width};
  switch (below(3, rng)) {
    case 0:
      return InfFormula::negation(random_inf_formula(p, names, inner, rng));
    default: {
      std::size_t width = 1 + below(spec.max_width, rng);
      std::vector<InfFormula> parts;
      for (std::size_t i = 0; i < width; ++i) parts.push_back(random_inf_formula(p, names, inner, rng));
      return coin(0.5, rng) ? InfFormula::disjunction(std::move(parts)) : InfFormula::conjunction(std::move(parts));
    }
  }
}

namespace {

std::vector<FOFormula> literals(std::size_t vars) {
  std::vector<FOFormula> out;
  for (std::size_t i = 0; i < vars; ++i) {
    for (std::size_t j = 0; j < vars; ++j) {
      for (auto atom : {FOFormula::eq(i, j), FOFormula::mem(i, j)}) {
        out.push_back(atom);
        out.push_back(FOFormula::negation(atom));
      }
    }
  }
  return out;
}

FOFormula quantify(FOFormula matrix, std::size_t free, std::size_t kinds, std::size_t depth) {
  for (std::size_t q = depth; q-- > 0;) {
    bool exists = (kinds >> q) & 1;
    matrix = exists ? FOFormula::exists(free + q, std::move(matrix)) : FOFormula::forall(free + q, std::move(matrix));
  }
  return matrix;
}

}  // namespace

std::vector<FOFormula> bounded_fo_formulas(std::size_t free, std::size_t quantifiers) {
  std::vector<FOFormula> out;
  for (std::size_t depth = 0; depth <= quantifiers; ++depth) {
    auto lits = literals(free + depth);
    std::vector<FOFormula> matrices = lits;
    for (std::size_t a = 0; a < lits.size(); ++a) {
      for (std::size_t b = a + 1; b < lits.size(); ++b) {
        matrices.push_back(FOFormula::conjunction({lits[a], lits[b]}));
        matrices.push_back(FOFormula::disjunction({lits[a], lits[b]}));
      }
    }
    for (std::size_t kinds = 0; kinds < (std::size_t{1} << depth); ++kinds) {
      for (const auto& m : matrices) out.push_back(quantify(m, free, kinds, depth));
    }
  }
  return out;
}

FOFormula random_bounded_fo_formula(std::size_t free, std::size_t quantifiers, std::mt19937_64& rng) {
  std::size_t depth = below(quantifiers + 1, rng);
  auto lits = literals(free + depth);
  FOFormula matrix = lits[below(lits.size(), rng)];
  if (coin(0.6, rng)) {
    FOFormula other = lits[below(lits.size(), rng)];
    matrix = coin(0.5, rng) ? FOFormula::conjunction({matrix, other}) : FOFormula::disjunction({matrix, other});
  }
  return quantify(matrix, free, below(std::size_t{1} << depth, rng), depth);
}

}  // namespace forcelab
