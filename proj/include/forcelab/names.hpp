#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "forcelab/hf.hpp"
#include "forcelab/order.hpp"

namespace forcelab {

namespace detail {
struct NameNode;
}

struct NameEntry;

// Name over a finite preorder: a set of (name, condition) pairs, conditions
// given by index. Values are hash-consed, so equality is a pointer comparison;
// entries are sorted by a structural order that does not depend on creation
// order.
class PName {
 public:
  PName();

  static PName of(std::vector<NameEntry> entries);

  std::span<const NameEntry> entries() const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  // sup of (rank of tau) + 1 over entries
  std::size_t rank() const;
  std::size_t hash() const;
  const void* identity() const { return node_; }
  // Distinct names occurring as first components, in entry order.
  std::vector<PName> domain() const;

  friend bool operator==(const PName& a, const PName& b) { return a.node_ == b.node_; }
  friend std::strong_ordering operator<=>(const PName& a, const PName& b);

 private:
  explicit PName(const detail::NameNode* node) : node_(node) {}
  const detail::NameNode* node_;
};

struct NameEntry {
  PName name;
  Cond cond = 0;

  friend bool operator==(const NameEntry&, const NameEntry&) = default;
  friend std::strong_ordering operator<=>(const NameEntry& a, const NameEntry& b) {
    if (auto c = a.name <=> b.name; c != 0) return c;
    return a.cond <=> b.cond;
  }
};

// Throws if some condition index is outside p.
void validate_name(const PName& sigma, const Preorder& p);
// sigma and every name occurring in it hereditarily, sorted.
std::vector<PName> subnames(const PName& sigma);

// Evaluates names against a fixed set of conditions, caching shared subnames.
class NameEvaluator {
 public:
  explicit NameEvaluator(ConditionSet filter) : filter_(std::move(filter)) {}
  HFSet operator()(const PName& sigma);
  const ConditionSet& filter() const { return filter_; }

 private:
  ConditionSet filter_;
  std::unordered_map<const void*, HFSet> memo_;
};

HFSet evaluate(const PName& sigma, const ConditionSet& filter);

// {<check y, top> : y in x}
PName check_name(const HFSet& x, Cond top);
// {< {<a,1>}, 1>, < {<a,1>,<b,1>}, 1>}
PName op_name(const PName& a, const PName& b, Cond top);
// {tau^p : <tau,q> in sigma with p <= q}
HFSet p_evaluation(const PName& sigma, Cond p, const Preorder& order);
// Replaces every condition c by map[c], hereditarily.
PName retag(const PName& sigma, const std::vector<Cond>& map);
PName transport_quotient(const PName& sigma, const QuotientMap& q);
// For a name over P plus an adjoined supremum `sup`: replace sup by `top`.
PName plus_transform(const PName& sigma, Cond sup, Cond top);
// Drop every pair whose condition is `sup`, hereditarily.
PName minus_transform(const PName& sigma, Cond sup);
// {<check of n_p, p>} where n_p is the von Neumann natural coding p's index.
PName gdot_name(const Preorder& p);

std::string to_string(const PName& sigma, const Preorder& p);

}  // namespace forcelab

template <>
struct std::hash<forcelab::PName> {
  std::size_t operator()(const forcelab::PName& x) const noexcept { return x.hash(); }
};
