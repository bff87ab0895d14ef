#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "forcelab/hf.hpp"
#include "forcelab/names.hpp"
#include "forcelab/order.hpp"

namespace forcelab {

// First-order formula over variables v0, v1, ... with membership, equality
// and class predicates A0, A1, ...
class FOFormula {
 public:
  enum class Kind { Eq, Mem, InClass, Not, Or, And, Exists, Forall };

  static FOFormula eq(std::size_t i, std::size_t j);
  static FOFormula mem(std::size_t i, std::size_t j);
  static FOFormula in_class(std::size_t i, std::size_t k);
  static FOFormula negation(FOFormula f);
  static FOFormula disjunction(std::vector<FOFormula> fs);
  static FOFormula conjunction(std::vector<FOFormula> fs);
  static FOFormula exists(std::size_t k, FOFormula body);
  static FOFormula forall(std::size_t k, FOFormula body);
  static FOFormula implies(FOFormula a, FOFormula b);

  Kind kind() const;
  // Variable indices of atoms (right() is the class index for InClass).
  std::size_t left() const;
  std::size_t right() const;
  // Bound variable of a quantifier.
  std::size_t variable() const;
  const FOFormula& body() const;
  std::span<const FOFormula> operands() const;

  friend bool operator==(const FOFormula& a, const FOFormula& b);

 private:
  struct Node;
  explicit FOFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::set<std::size_t> free_variables(const FOFormula& f);
// Each quantified subformula over v_k has its free variables among v0..v_k.
bool is_normal_form(const FOFormula& f);
std::size_t quantifier_depth(const FOFormula& f);
bool uses_class_predicates(const FOFormula& f);
// Renames every variable v_i (free or bound) to v_{i+offset}.
FOFormula shift_variables(const FOFormula& f, std::size_t offset);
// phi(v0) and for all v1 (phi(v1) -> v1 = v0). phi must have free variables among {v0}.
FOFormula psi_unique(const FOFormula& phi);
std::string to_string(const FOFormula& f);

// Truth in <M, in> with class predicates; assignment[i] interprets v_i.
bool fo_satisfies(const GroundModel& model, const FOFormula& f, const std::vector<HFSet>& assignment,
                  const std::vector<std::vector<HFSet>>& classes = {});

// Infinitary formula over names: atoms are (check p in G-dot), s = t, s in t;
// connectives are negation and finite conjunction and disjunction.
class InfFormula {
 public:
  enum class Kind { InGeneric, Eq, Mem, Not, Or, And };

  static InfFormula in_generic(Cond p);
  static InfFormula eq(PName s, PName t);
  static InfFormula mem(PName s, PName t);
  static InfFormula negation(InfFormula f);
  static InfFormula disjunction(std::vector<InfFormula> fs);
  static InfFormula conjunction(std::vector<InfFormula> fs);
  static InfFormula truth() { return conjunction({}); }
  static InfFormula falsity() { return disjunction({}); }

  Kind kind() const;
  Cond condition() const;
  const PName& lhs() const;
  const PName& rhs() const;
  const InfFormula& operand() const;
  std::span<const InfFormula> operands() const;
  const void* identity() const { return node_.get(); }

  friend bool operator==(const InfFormula& a, const InfFormula& b);

 private:
  struct Node;
  explicit InfFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::size_t formula_depth(const InfFormula& f);
std::size_t formula_size(const InfFormula& f);
void validate_formula(const InfFormula& f, const Preorder& p);
std::string to_string(const InfFormula& f, const Preorder& p);
// Negations only in front of generic-membership atoms.
bool is_negation_normal(const InfFormula& f);
InfFormula nnf(const InfFormula& f);

enum class AtomKind { Eq, Mem, Sub };

struct Atomic {
  AtomKind kind;
  PName lhs;
  PName rhs;

  friend bool operator==(const Atomic&, const Atomic&) = default;
};

std::string to_string(const Atomic& a, const Preorder& p);

// Tagged nested tuples of naturals, names and conditions.
class GodelCode {
 public:
  enum class Kind { Nat, Name, Condition, Tuple };

  static GodelCode nat(std::size_t n);
  static GodelCode name(PName s);
  static GodelCode condition(Cond p);
  static GodelCode tuple(std::vector<GodelCode> items);

  Kind kind() const { return kind_; }
  std::size_t number() const { return number_; }
  const PName& name_value() const { return name_; }
  std::span<const GodelCode> items() const { return items_; }

  friend bool operator==(const GodelCode&, const GodelCode&) = default;

 private:
  Kind kind_ = Kind::Nat;
  std::size_t number_ = 0;
  PName name_;
  std::vector<GodelCode> items_;
};

GodelCode encode(const InfFormula& f);
// Throws Error on anything that is not the code of a formula.
InfFormula decode(const GodelCode& code);
std::string to_string(const GodelCode& code, const Preorder& p);

struct NuMu {
  PName nu;
  PName mu;
};

// Names whose equality in every generic extension matches the truth of f.
// Applied to the negation normal form of f.
NuMu nu_mu(const InfFormula& f, Cond top);

struct StarTranslation {
  InfFormula formula;
  std::size_t truncation = 0;
};

// Translation of a first-order formula at index tuple n into an infinitary
// formula over the Friedman forcing, with quantifiers truncated to indices < N.
// `edot` is the canonical name of the added relation.
StarTranslation translate_star(const FOFormula& f, const std::vector<std::size_t>& n, std::size_t truncation,
                               const PName& edot, Cond top);

// x_i = x_j iff n_i = n_j
bool appropriate(const std::vector<HFSet>& x, const std::vector<std::size_t>& n);
// First occurrences numbered 0, 1, 2, ...
std::vector<std::size_t> lex_min_appropriate(const std::vector<HFSet>& x);

// Replaces each condition c (in atoms and inside names) by map[c].
// Throws if some occurring condition has no image.
InfFormula star_star_lift(const InfFormula& f, const std::vector<std::optional<Cond>>& map);

}  // namespace forcelab
