#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "forcelab/check.hpp"
#include "forcelab/collapse.hpp"
#include "forcelab/friedman.hpp"
#include "forcelab/hf.hpp"
#include "forcelab/iteration.hpp"
#include "forcelab/names.hpp"
#include "forcelab/order.hpp"

namespace forcelab {

// Each check below is exhaustive over its inputs and stops at the first
// failure. `checked` counts the individual comparisons made.

// The recursive atomic forcing relation against truth in cone generics, for
// =, in and subset over every pair of names.
CheckOutcome check_atomic_equivalence(const Preorder& p, const std::vector<PName>& names);

// Every atomic statement true in a cone generic (equality and membership of
// two names, membership of a condition in the generic) is forced by a member.
CheckOutcome check_truth_lemma(const Preorder& p, const std::vector<PName>& names);

// For `count` random formulas: truth in every cone generic matches equality
// of the values of nu and mu, and forcing through nu = mu matches semantics.
CheckOutcome check_nu_mu(const Preorder& p, const std::vector<PName>& names, std::size_t count,
                         std::mt19937_64& rng);

// p forces an atom iff its image lies below the atom's Boolean value in the
// regular open algebra of the separative quotient.
CheckOutcome check_boolean_values(const Preorder& p, const std::vector<PName>& names);

// Saturation and the regular open algebra are isomorphic over p, with
// 2^(number of minimal classes) elements.
CheckOutcome check_completion_isomorphism(const Preorder& p);

// Atomic forcing at p equals atomic forcing of the transported names at the
// class of p in the separative quotient.
CheckOutcome check_quotient_transfer(const Preorder& p, const std::vector<PName>& names);

// The clauses of the family, restricted forcing for names over each stratum,
// and value transfer to the projected filter in every cone generic. Each level
// uses at most `max_names` of its sampled names, chosen at random.
CheckOutcome check_projection_family(const ProjectionFamily& family, const NamePoolSpec& spec, std::size_t max_names,
                                     std::mt19937_64& rng);

// Scheduled generics from the given seeds decode to isomorphisms onto the
// ground model. Seed k shuffles the schedule and randomizes the extenders.
CheckOutcome check_friedman_decoding(const FriedmanForcing& f, const std::vector<std::uint64_t>& seeds);

// Every formula at every assignment from the carrier. Assignments cover the
// free variables of each formula.
CheckOutcome check_varphi_star(const FriedmanForcing& f, const std::vector<FOFormula>& formulas);
// `count` random formulas with up to `free` free variables and `quantifiers`
// quantifiers, each at a random assignment.
CheckOutcome check_varphi_star_sampled(const FriedmanForcing& f, std::size_t count, std::size_t free,
                                       std::size_t quantifiers, std::mt19937_64& rng);

}  // namespace forcelab
