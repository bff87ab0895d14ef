#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace forcelab {

using Cond = std::size_t;
using ConditionSet = boost::dynamic_bitset<>;

std::vector<Cond> members(const ConditionSet& s);

// Finite preorder with a top element. Conditions are indices 0..size()-1 and
// carry string identifiers. Down-sets and up-sets are cached as bitsets.
class Preorder {
 public:
  Preorder() = default;

  // Closes `generators` (pairs p <= q) reflexively and transitively.
  static Preorder from_generators(std::vector<std::string> ids,
                                  std::span<const std::pair<Cond, Cond>> generators, Cond top);
  // rows[p] = {q : p <= q}; must already be reflexive and transitive.
  static Preorder from_relation(std::vector<std::string> ids, std::vector<ConditionSet> rows, Cond top);

  std::size_t size() const { return ids_.size(); }
  Cond top() const { return top_; }
  const std::string& id(Cond p) const { return ids_[p]; }
  const std::vector<std::string>& ids() const { return ids_; }
  std::optional<Cond> find(std::string_view id) const;
  Cond index(std::string_view id) const;

  bool le(Cond p, Cond q) const { return above_[p][q]; }
  bool equivalent(Cond p, Cond q) const { return le(p, q) && le(q, p); }
  bool compatible(Cond p, Cond q) const { return below_[p].intersects(below_[q]); }
  const ConditionSet& below(Cond p) const { return below_[p]; }
  const ConditionSet& above(Cond p) const { return above_[p]; }

  ConditionSet empty_set() const { return ConditionSet(size()); }
  ConditionSet full_set() const { return ~ConditionSet(size()); }
  ConditionSet singleton(Cond p) const;

  // {q : some d in D lies below q}
  ConditionSet reach(const ConditionSet& d) const;
  // {p : D is dense below p}
  ConditionSet dense_below_set(const ConditionSet& d) const;
  // {p : no condition below p lies in D}
  ConditionSet avoiding_set(const ConditionSet& d) const;
  ConditionSet upward_closure(const ConditionSet& s) const;
  ConditionSet downward_closure(const ConditionSet& s) const;

  bool is_antisymmetric() const;

  friend bool operator==(const Preorder& a, const Preorder& b) {
    return a.top_ == b.top_ && a.ids_ == b.ids_ && a.above_ == b.above_;
  }

 private:
  void index_ids();

  std::vector<std::string> ids_;
  std::vector<ConditionSet> above_;
  std::vector<ConditionSet> below_;
  std::unordered_map<std::string, Cond> lookup_;
  Cond top_ = 0;
};

// Sub-preorder on a subset of conditions, with the induced order.
struct Suborder {
  Preorder order;
  std::vector<Cond> to_parent;
  std::vector<std::optional<Cond>> from_parent;
};
Suborder induced_suborder(const Preorder& p, const ConditionSet& subset);

bool is_dense(const Preorder& p, const ConditionSet& d);
bool is_dense_below(const Preorder& p, const ConditionSet& d, Cond q);
bool is_open_dense(const Preorder& p, const ConditionSet& d);
bool is_predense_below(const Preorder& p, const ConditionSet& a, Cond q);
bool is_antichain(const Preorder& p, const ConditionSet& a);
bool is_maximal_antichain(const Preorder& p, const ConditionSet& a);
bool is_separative(const Preorder& p);
// Least elements strictly below top, such as the negation of top.
ConditionSet zero_like(const Preorder& p);
bool is_filter(const Preorder& p, const ConditionSet& s);

// p is minimal when every d <= p satisfies p <= d.
bool is_minimal(const Preorder& p, Cond c);
// One representative per equivalence class of minimal conditions, lowest index first.
std::vector<Cond> minimal_classes(const Preorder& p);

struct QuotientMap {
  Preorder source;
  Preorder target;
  std::vector<Cond> map;
};

// Classes of p ~ q iff p and q have the same compatible conditions; each class
// is represented by its lowest-index member, whose id names the class.
QuotientMap separative_quotient(const Preorder& p);
// Classes of p <= q <= p.
QuotientMap antisymmetric_quotient(const Preorder& p);

struct Extension {
  Preorder order;
  Cond added = 0;
  std::vector<std::string> warnings;
};

// Adjoins a least upper bound for `a`. Throws if the resulting relation is not
// transitive, which can only happen for non-separative input.
Extension add_supremum(const Preorder& p, const ConditionSet& a);
// Adjoins a complement of q. Requires separative input.
Extension add_negation(const Preorder& p, Cond q);

// Every maximal antichain of `sub` is predense in `whole`. Conditions are
// matched by identifier; throws if they are missing or ordered differently.
bool is_complete_subforcing(const Preorder& sub, const Preorder& whole);

// Calls `visit` on every maximal antichain of p.
void for_each_maximal_antichain(const Preorder& p, const std::function<void(const ConditionSet&)>& visit);

std::string format_set(const Preorder& p, const ConditionSet& s);

}  // namespace forcelab
