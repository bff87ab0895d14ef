#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "forcelab/collapse.hpp"
#include "forcelab/formulas.hpp"
#include "forcelab/friedman.hpp"
#include "forcelab/hf.hpp"
#include "forcelab/iteration.hpp"
#include "forcelab/names.hpp"
#include "forcelab/order.hpp"
#include "forcelab/sexpr.hpp"

namespace forcelab {

// Top-level forms in source order. Two scenarios are equal when their forms
// are structurally equal.
struct Scenario {
  std::vector<SExpr> forms;

  friend bool operator==(const Scenario& a, const Scenario& b) { return a.forms == b.forms; }
};

// Reads the forms and checks their shape: known heads, identifiers present
// and unique, queries and suites well formed. References are resolved by
// load_scenario.
Scenario parse_scenario(std::string_view text);
// One form per line.
std::string serialize(const Scenario& s);

struct LoadOptions {
  std::size_t max_carrier = 4096;
  // Maximum rank of sampled names for suites without a declared pool.
  std::size_t pool_rank = 2;
};

enum class ForcingKind { Explicit, Collapse, Friedman, Iteration };

struct ForcingEntry {
  ForcingKind kind = ForcingKind::Explicit;
  // Explicit order of the forcing; for Friedman forcing the explicit suborder.
  Preorder order;
  std::shared_ptr<const CollapseForcing> collapse;
  std::shared_ptr<const FriedmanForcing> friedman;
  std::shared_ptr<const ExplicitFriedman> friedman_order;
  std::shared_ptr<const TwoStepIteration> iteration;
};

struct NameEntryDecl {
  std::string forcing;
  PName name;
};

struct FormulaDecl {
  // Empty for first-order formulas over the ground model.
  std::string forcing;
  std::variant<InfFormula, FOFormula> formula;
};

struct PoolDecl {
  std::string forcing;
  std::vector<PName> names;
};

struct GenericDecl {
  std::string forcing;
  ConditionSet filter;
  // Last condition of the construction chain.
  Cond last = 0;
};

// Declarations resolved into objects. Queries and suites stay as forms.
struct Environment {
  std::optional<GroundModel> ground;
  std::map<std::string, ForcingEntry> forcings;
  std::vector<std::string> forcing_order;
  std::map<std::string, NameEntryDecl> names;
  std::map<std::string, FormulaDecl> formulas;
  std::map<std::string, PoolDecl> pools;
  std::map<std::string, GenericDecl> generics;
  std::vector<SExpr> items;
};

// Throws ParseError at the offending form for unresolved references and for
// declarations rejected by their module.
Environment load_scenario(const Scenario& s, const LoadOptions& options = {});

// Condition of the forcing by identifier; `top` names the top condition when
// no condition has that identifier.
Cond resolve_condition(const ForcingEntry& f, const SExpr& e);
PName resolve_name(const Environment& env, const std::string& forcing, const SExpr& e);
InfFormula resolve_inf_formula(const Environment& env, const std::string& forcing, const SExpr& e);
FOFormula resolve_fo_formula(const SExpr& e);

// Throws ParseError located at e.
[[noreturn]] void fail_at(const SExpr& e, const std::string& message);

}  // namespace forcelab
