#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "forcelab/check.hpp"
#include "forcelab/forcing.hpp"
#include "forcelab/generators.hpp"
#include "forcelab/names.hpp"
#include "forcelab/order.hpp"

namespace forcelab {

inline constexpr std::size_t kDefaultCarrierBound = 4096;

enum class CollapseVariant { Plain, Star, Geq };

std::string_view to_string(CollapseVariant v);
CollapseVariant parse_collapse_variant(std::string_view text);

// Either an ordinal value or the marker ">=value" (geq variant only).
struct SlotValue {
  std::size_t value = 0;
  bool at_least = false;
  friend bool operator==(const SlotValue&, const SlotValue&) = default;
};

// Finite partial function from slots to values; slots[n] is empty when n is
// outside the domain.
using PartialFunction = std::vector<std::optional<SlotValue>>;

// Finite collapse: partial functions {0..n-1} -> {0..height-1} ordered by
// reverse inclusion (plain), restricted to initial-segment domains (star), or
// with markers ">=b" that may be strengthened to any value or marker above b
// (geq). All conditions are enumerated.
class CollapseForcing {
 public:
  CollapseForcing(std::size_t slots, std::size_t height, CollapseVariant variant,
                  std::size_t max_conditions = kDefaultCarrierBound);

  std::size_t slots() const { return slots_; }
  std::size_t height() const { return height_; }
  CollapseVariant variant() const { return variant_; }
  const Preorder& order() const { return order_; }
  std::size_t size() const { return conditions_.size(); }
  const PartialFunction& condition(Cond c) const { return conditions_[c]; }
  const std::vector<PartialFunction>& conditions() const { return conditions_; }
  std::optional<Cond> find(const PartialFunction& f) const;
  // Throws if f is not a condition of this forcing.
  Cond index_of(const PartialFunction& f) const;
  // The definition of the ordering, applied to arbitrary partial functions.
  static bool extends(const PartialFunction& p, const PartialFunction& q);

 private:
  std::size_t slots_;
  std::size_t height_;
  CollapseVariant variant_;
  std::vector<PartialFunction> conditions_;
  Preorder order_;
};

std::string format_partial_function(const PartialFunction& f);
// "{0:2,1:>=1}" with `slots` slots.
PartialFunction parse_partial_function(std::string_view text, std::size_t slots);

std::size_t domain_size(const PartialFunction& f);

struct CollapseDenseSet {
  std::string name;
  ConditionSet members;
  // Returns a condition below c inside the set; c itself when already inside.
  // Picks the lowest free slot, or a random one when rng is given. Throws when
  // the finite truncation has no room.
  std::function<Cond(Cond, std::mt19937_64*)> extend;
};

// "ran:alpha" = {p : alpha in ran p} for alpha < height, then "dom:n" = {p : n in dom p}
// for n < slots. Plain and star variants only.
std::vector<CollapseDenseSet> collapse_dense_sets(const CollapseForcing& c);

// {< op(n, alpha), {<n,alpha>} >}; plain variant only.
PName surjection_name(const CollapseForcing& c);

// A condition incompatible with every member of the antichain `a`: same
// domain as its first member, value at each slot one above every value used
// there. Throws HeightOverflow when that value is not below the height.
Cond antichain_defeater(const CollapseForcing& c, const ConditionSet& a);

// Conditions with values below alpha and markers at most alpha (geq), or
// values below alpha (plain, star).
ConditionSet collapse_stratum(const CollapseForcing& c, std::size_t alpha);

// Replaces every value >= alpha and every marker >=b with b > alpha by >=alpha.
Cond geq_reduction(const CollapseForcing& c, Cond p, std::size_t alpha);

// pi_{alpha+1}: values above alpha become alpha; for geq, geq_reduction at alpha+1.
std::vector<Cond> collapse_projection(const CollapseForcing& c, std::size_t alpha);

// Star conditions form a dense suborder of the plain collapse of the same size.
bool star_dense_in_plain(std::size_t slots, std::size_t height);

// Increasing strata P_0 <= ... <= P_K of `whole` (P_K the whole carrier) with
// projections[alpha] = pi_{alpha+1} : whole -> P_{alpha+1} for alpha < K.
struct ProjectionFamily {
  Preorder whole;
  std::vector<ConditionSet> strata;
  std::vector<std::vector<Cond>> projections;

  std::size_t levels() const { return projections.size(); }
};

// Strata collapse_stratum(c, beta) for beta <= height, projections collapse_projection.
ProjectionFamily approachability_instance(const CollapseForcing& c);
// Same strata; every projection sends everything to top.
ProjectionFamily constant_projection_family(const CollapseForcing& c);

// Strata increasing and exhausting, projections landing in their stratum, and
// for every alpha: top fixed, order preserved, the density clause, the
// reflection clause for P_alpha and identity on P_alpha.
CheckOutcome check_approachability(const ProjectionFamily& family);

// The inclusion recursion with conditions restricted to P_{alpha+1}, queried at
// the projection of a condition. Names must mention only P_alpha conditions.
class RestrictedForcing {
 public:
  RestrictedForcing(const ProjectionFamily& family, std::size_t alpha);

  bool sub(Cond p, const PName& s, const PName& t);
  bool eq(Cond p, const PName& s, const PName& t);
  const Suborder& stratum() const { return stratum_; }

 private:
  PName localize(const PName& s) const;
  Cond project(Cond p) const;

  const ProjectionFamily* family_;
  std::size_t alpha_;
  Suborder stratum_;
  StarForcing engine_;
};

// Throws if some condition mentioned by sigma lies outside P_alpha.
void require_stratum_name(const ProjectionFamily& family, std::size_t alpha, const PName& sigma);

// sample_names over the suborder P_alpha, carried back to the whole order.
std::vector<PName> stratum_names(const ProjectionFamily& family, std::size_t alpha, const NamePoolSpec& spec,
                                 std::mt19937_64& rng);

// p forces s subset t over the whole order iff its projection does in the
// restricted recursion, for every condition p and every pair of names.
CheckOutcome check_restricted_equivalence(const ProjectionFamily& family, std::size_t alpha,
                                         const std::vector<PName>& names);

// Every name over P_alpha has the same value under G as under the filter of
// P_{alpha+1} generated by the projection of G.
CheckOutcome proj_gen_ext_check(const ProjectionFamily& family, std::size_t alpha, const ConditionSet& generic,
                               const std::vector<PName>& names);

}  // namespace forcelab
