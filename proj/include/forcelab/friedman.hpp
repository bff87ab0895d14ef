#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "forcelab/check.hpp"
#include "forcelab/forcing.hpp"
#include "forcelab/formulas.hpp"
#include "forcelab/hf.hpp"
#include "forcelab/names.hpp"
#include "forcelab/order.hpp"

namespace forcelab {

inline constexpr std::size_t kDefaultFriedmanIndexBound = 4;
inline constexpr std::size_t kDefaultFriedmanCarrierBound = 16;

// Triple <d, e, f>: finite index set, relation on it, and an injection that
// is either empty or defined on all of d.
struct FriedmanCondition {
  std::set<std::size_t> d;
  std::set<std::pair<std::size_t, std::size_t>> e;
  std::map<std::size_t, HFSet> f;

  bool total() const { return f.size() == d.size(); }
  friend bool operator==(const FriedmanCondition&, const FriedmanCondition&) = default;
  friend auto operator<=>(const FriedmanCondition&, const FriedmanCondition&) = default;
};

// <{0,1},{(0,1)},{0:{},1:{{}}}>
std::string format_friedman(const FriedmanCondition& p);

bool is_acyclic(const std::set<std::size_t>& d, const std::set<std::pair<std::size_t, std::size_t>>& e);
// i e j iff f(i) in f(j), for i, j in d; vacuous when f is empty.
bool membership_clause(const FriedmanCondition& p);

// Friedman's forcing over a finite ground model with indices below `indices`.
class FriedmanForcing {
 public:
  FriedmanForcing(GroundModel model, std::size_t indices, std::size_t max_indices = kDefaultFriedmanIndexBound,
                  std::size_t max_carrier = kDefaultFriedmanCarrierBound);

  const GroundModel& model() const { return model_; }
  std::size_t indices() const { return indices_; }

  // Empty string when valid, otherwise the first violated requirement.
  std::string why_invalid(const FriedmanCondition& p) const;
  bool valid(const FriedmanCondition& p) const { return why_invalid(p).empty(); }
  static bool le(const FriedmanCondition& p, const FriedmanCondition& q);
  // Searches for a common extension with range inside the ground model.
  std::optional<FriedmanCondition> meet(const FriedmanCondition& p, const FriedmanCondition& q) const;
  bool compatible(const FriedmanCondition& p, const FriedmanCondition& q) const { return meet(p, q).has_value(); }
  FriedmanCondition top() const { return {}; }

 private:
  GroundModel model_;
  std::size_t indices_;
};

// Conditions whose f is defined on all of d, together with the f-free
// conditions <d, e, {}> obtained from them by forgetting f.
class ExplicitFriedman {
 public:
  explicit ExplicitFriedman(const FriedmanForcing& forcing, std::size_t max_conditions = 4096);

  const FriedmanForcing& forcing() const { return forcing_; }
  const Preorder& order() const { return order_; }
  std::size_t size() const { return conditions_.size(); }
  const FriedmanCondition& condition(Cond c) const { return conditions_[c]; }
  std::optional<Cond> find(const FriedmanCondition& p) const;
  Cond index_of(const FriedmanCondition& p) const;
  // Total conditions only.
  ConditionSet total_set() const;

 private:
  FriedmanForcing forcing_;
  std::vector<FriedmanCondition> conditions_;
  std::map<FriedmanCondition, Cond> lookup_;
  Preorder order_;
};

struct TotalExtension {
  FriedmanCondition condition;
  // Some constructed value is not in the ground model.
  bool outside_carrier = false;
};

// f(j) = {f(i) : i e j} + {{0, j}} along e, with j the von Neumann natural.
TotalExtension friedman_total_extension(const FriedmanForcing& forcing, const FriedmanCondition& p);

// Adds x at index j (the lowest unused index by default) with the edges its
// memberships require. Throws when x is already in the range or no index is left.
FriedmanCondition friedman_surjectivity_extension(const FriedmanForcing& forcing, const FriedmanCondition& p,
                                                  const HFSet& x, std::optional<std::size_t> j = std::nullopt);

// <{i,j},{(i,j)},{}>
FriedmanCondition edge_condition(std::size_t i, std::size_t j);

// {< op(i, j), <{i,j},{(i,j)},{}> > : i != j}, skipping edges with no
// realization in the explicit order.
PName edot_name(const ExplicitFriedman& f);

struct Decoded {
  std::set<std::pair<std::size_t, std::size_t>> relation;
  std::map<std::size_t, HFSet> map;
};

// Unions of e and f over the filter. Throws when two conditions send an index
// to different sets, or two indices to the same set.
Decoded decode_E_F(const std::vector<FriedmanCondition>& filter);

// map is a bijection from {0..indices-1} onto the ground model and
// i E j iff map(i) in map(j).
CheckOutcome check_decoded_isomorphism(const Decoded& decoded, const GroundModel& model, std::size_t indices);

// Adds x_k at index n_k in turn, with the membership edges to earlier entries.
FriedmanCondition p_sequence(const std::vector<HFSet>& x, const std::vector<std::size_t>& n);
// p_sequence at the lexicographically least appropriate index tuple.
FriedmanCondition p_lex(const std::vector<HFSet>& x);

// Exchanges indices i and j everywhere in d, e and dom f.
FriedmanCondition index_swap(const FriedmanCondition& p, std::size_t i, std::size_t j);
// Image of every condition of the explicit order under index_swap.
std::vector<Cond> index_swap_map(const ExplicitFriedman& f, std::size_t i, std::size_t j);

// <{1,...,n+1},{(1,n+1)},{}>; n = 0 would be a loop, so n >= 1.
FriedmanCondition qn_antichain(std::size_t n);

struct VarphiStarOutcome {
  bool satisfied = false;
  bool forced = false;
  bool negation_forced = false;
  bool ok() const { return satisfied ? forced && !negation_forced : negation_forced && !forced; }
};

// Compares truth of phi(x) in the ground model with forcing of its translation
// (indices from p_lex(x), quantifiers truncated at the index bound) and of its
// negation at p_lex(x). The oracle must be over f.order().
VarphiStarOutcome varphi_star_check(const ExplicitFriedman& f, SemanticOracle& oracle, const PName& edot,
                                    const FOFormula& phi, const std::vector<HFSet>& x);

}  // namespace forcelab
