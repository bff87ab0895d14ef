#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace forcelab {

namespace detail {
struct HFNode;
}

inline constexpr std::size_t kDefaultStageBound = 5;

// Hereditarily finite set. Values are hash-consed, so equality is a pointer
// comparison. Elements are kept sorted by code length, then elementwise.
class HFSet {
 public:
  HFSet();

  static HFSet of(std::vector<HFSet> elements);
  static HFSet natural(std::size_t n);

  std::span<const HFSet> elements() const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::size_t rank() const;
  bool contains(const HFSet& x) const;
  bool is_transitive() const;
  std::optional<std::size_t> as_natural() const;

  // Canonical bracket code, e.g. "{{}}" for {0}.
  const std::string& code() const;
  std::size_t hash() const;
  std::string to_string() const;

  friend bool operator==(const HFSet& a, const HFSet& b) { return a.node_ == b.node_; }
  friend std::strong_ordering operator<=>(const HFSet& a, const HFSet& b);
  const detail::HFNode* node_ptr() const { return node_; }

 private:
  explicit HFSet(const detail::HFNode* node) : node_(node) {}
  const detail::HFNode* node_;
};

// Membership graph, possibly cyclic; node `root` is the set being described.
struct RawSetGraph {
  std::vector<std::vector<std::size_t>> children;
  std::size_t root = 0;
};

// Throws Error on a cycle or a dangling child index.
HFSet canonicalize(const RawSetGraph& graph);

HFSet set_union(const HFSet& a, const HFSet& b);
HFSet kuratowski(const HFSet& x, const HFSet& y);
// (x, y) when p = {{x},{x,y}}.
std::optional<std::pair<HFSet, HFSet>> kuratowski_components(const HFSet& p);
HFSet transitive_closure(const HFSet& x);

// All sets of rank < k, sorted. k must not exceed `bound`.
std::vector<HFSet> vstage(std::size_t k, std::size_t bound = kDefaultStageBound);

// Literal forms: {} , {a,b,...} , nat:n
HFSet parse_hf_literal(std::string_view text);

// Transitive carrier containing the empty set; either a stage or user-declared.
class GroundModel {
 public:
  static GroundModel stage(std::size_t k, std::size_t bound = kDefaultStageBound);
  static GroundModel from_sets(std::vector<HFSet> sets);

  std::span<const HFSet> carrier() const { return carrier_; }
  std::size_t size() const { return carrier_.size(); }
  const HFSet& operator[](std::size_t i) const { return carrier_[i]; }
  bool contains(const HFSet& x) const;
  std::optional<std::size_t> index_of(const HFSet& x) const;
  std::optional<std::size_t> stage_index() const { return stage_; }
  bool member(std::size_t i, std::size_t j) const { return carrier_[j].contains(carrier_[i]); }

  friend bool operator==(const GroundModel&, const GroundModel&) = default;

 private:
  std::vector<HFSet> carrier_;
  std::optional<std::size_t> stage_;
};

}  // namespace forcelab

template <>
struct std::hash<forcelab::HFSet> {
  std::size_t operator()(const forcelab::HFSet& x) const noexcept { return x.hash(); }
};
