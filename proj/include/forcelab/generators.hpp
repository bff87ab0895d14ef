#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "forcelab/formulas.hpp"
#include "forcelab/names.hpp"
#include "forcelab/order.hpp"

namespace forcelab {

// Every preorder on up to `max_size` labeled conditions whose top is
// condition 0, without repeats. Identifiers are 1, a, b, ...
std::vector<Preorder> small_preorders(std::size_t max_size = 3);

Preorder random_preorder(std::size_t n, std::mt19937_64& rng);

// small_preorders() followed by random preorders on 4 and 5 conditions.
std::vector<Preorder> preorder_suite(std::size_t count, std::uint64_t seed, std::size_t max_conditions = 5);

struct NamePoolSpec {
  std::size_t max_rank = 2;
  // Random names per rank from 2 upward.
  std::size_t per_rank = 8;
  std::size_t max_entries = 3;
};

// The empty name, every rank-1 name with at most two entries, check names of
// small sets, and random names of higher rank; closed under subnames.
std::vector<PName> sample_names(const Preorder& p, const NamePoolSpec& spec, std::mt19937_64& rng);

struct FormulaSpec {
  std::size_t depth = 3;
  std::size_t max_width = 3;
};

InfFormula random_inf_formula(const Preorder& p, const std::vector<PName>& names, const FormulaSpec& spec,
                              std::mt19937_64& rng);

// Normal-form formulas with free variables among v0..v_{free-1}: up to
// `quantifiers` quantifiers binding v_free, v_free+1, ... in front of a literal
// or a conjunction or disjunction of two distinct literals.
std::vector<FOFormula> bounded_fo_formulas(std::size_t free, std::size_t quantifiers);
FOFormula random_bounded_fo_formula(std::size_t free, std::size_t quantifiers, std::mt19937_64& rng);

}  // namespace forcelab
