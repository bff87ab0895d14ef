#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "forcelab/order.hpp"

namespace forcelab {

inline constexpr std::size_t kDefaultAlgebraBound = 256;

// Finite Boolean algebra stored as operation tables. Every constructor checks
// the Boolean algebra laws exhaustively over the whole carrier.
class FiniteBooleanAlgebra {
 public:
  using Elem = std::size_t;

  struct Operations {
    std::function<Elem(Elem, Elem)> meet;
    std::function<Elem(Elem, Elem)> join;
    std::function<Elem(Elem)> complement;
    Elem zero = 0;
    Elem one = 0;
  };

  FiniteBooleanAlgebra() = default;

  // rows[a] = {b : a <= b}. Throws unless this is a Boolean lattice.
  static FiniteBooleanAlgebra from_order(std::vector<std::string> labels, const std::vector<ConditionSet>& rows);
  static FiniteBooleanAlgebra from_operations(std::vector<std::string> labels, const Operations& ops);

  std::size_t size() const { return labels_.size(); }
  Elem zero() const { return zero_; }
  Elem one() const { return one_; }
  Elem meet(Elem a, Elem b) const { return meet_[a * size() + b]; }
  Elem join(Elem a, Elem b) const { return join_[a * size() + b]; }
  Elem complement(Elem a) const { return complement_[a]; }
  bool leq(Elem a, Elem b) const { return meet(a, b) == a; }
  Elem join_all(std::span<const Elem> xs) const;
  Elem meet_all(std::span<const Elem> xs) const;
  std::vector<Elem> atoms() const;
  const std::string& label(Elem a) const { return labels_[a]; }

 private:
  void validate() const;

  std::vector<std::string> labels_;
  std::vector<Elem> meet_;
  std::vector<Elem> join_;
  std::vector<Elem> complement_;
  Elem zero_ = 0;
  Elem one_ = 0;
};

using Elem = FiniteBooleanAlgebra::Elem;

// A Boolean algebra together with a map from the conditions of `source`.
struct Completion {
  Preorder source;
  FiniteBooleanAlgebra algebra;
  std::vector<Elem> embedding;
};

// Order-preserving, incompatibility-preserving, with nonzero image that is
// dense in the nonzero elements.
bool is_dense_embedding(const Completion& c);

struct RegularOpenAlgebra {
  Completion completion;
  std::vector<ConditionSet> regions;

  std::optional<Elem> element_of(const ConditionSet& region) const;
};

// {p : every q <= p has some r <= q in u}
ConditionSet regularize(const Preorder& p, const ConditionSet& u);
bool is_regular_open(const Preorder& p, const ConditionSet& u);

RegularOpenAlgebra regular_open_algebra(const Preorder& p, std::size_t max_size = kDefaultAlgebraBound);

struct SaturationOptions {
  std::size_t max_size = kDefaultAlgebraBound;
  // Above this many candidate subsets, suprema are taken over subsets of the
  // original (dense) conditions instead of the whole current carrier.
  std::size_t subset_budget = 4096;
};

struct Saturation {
  Completion completion;
  Preorder saturated;
  std::size_t rounds = 0;
};

// Alternately adjoins suprema and negations, identifying equivalent
// conditions, until nothing new appears. Non-separative input is first
// replaced by its separative quotient.
Saturation saturate_to_boolean(const Preorder& p, const SaturationOptions& options = {});

struct BooleanIsomorphism {
  std::vector<Elem> map;
};

struct IsomorphismFailure {
  std::string law;
  std::vector<Elem> witness;
};

// Candidate map b -> sup{ e1(p) : e0(p) <= b }. Throws if the completions are
// over different forcings.
std::variant<BooleanIsomorphism, IsomorphismFailure> completion_isomorphism(const Completion& c0,
                                                                           const Completion& c1);

}  // namespace forcelab
