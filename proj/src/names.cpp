#include "forcelab/names.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>

#include "forcelab/error.hpp"

namespace forcelab {

namespace detail {

struct NameNode {
  std::vector<NameEntry> entries;
  std::size_t rank = 0;
  std::size_t hash = 0;
};

}  // namespace detail

namespace {

using NameKey = std::vector<std::pair<const void*, Cond>>;

struct NameKeyHash {
  std::size_t operator()(const NameKey& key) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& [ptr, cond] : key) {
      h ^= std::hash<const void*>{}(ptr) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h ^= std::hash<Cond>{}(cond) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

class NameInterner {
 public:
  const detail::NameNode* intern(std::vector<NameEntry> entries) {
    NameKey key;
    key.reserve(entries.size());
    std::size_t rank = 0;
    std::size_t hash = 0xcbf29ce484222325ULL;
    for (const auto& e : entries) {
      key.emplace_back(e.name.identity(), e.cond);
      rank = std::max(rank, e.name.rank() + 1);
      hash = (hash ^ e.name.hash()) * 0x100000001b3ULL;
      hash = (hash ^ (e.cond + 0x51)) * 0x100000001b3ULL;
    }
    std::lock_guard lock(mutex_);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second.get();
    auto node = std::make_unique<detail::NameNode>();
    node->entries = std::move(entries);
    node->rank = rank;
    node->hash = hash;
    const detail::NameNode* raw = node.get();
    table_.emplace(std::move(key), std::move(node));
    return raw;
  }

 private:
  std::mutex mutex_;
  std::unordered_map<NameKey, std::unique_ptr<detail::NameNode>, NameKeyHash> table_;
};

NameInterner& name_interner() {
  static NameInterner instance;
  return instance;
}

const detail::NameNode* empty_name_node() {
  static const detail::NameNode* node = name_interner().intern({});
  return node;
}

template <class Fn>
PName transform(const PName& sigma, std::unordered_map<const void*, PName>& memo, Fn&& rebuild) {
  auto it = memo.find(sigma.identity());
  if (it != memo.end()) return it->second;
  PName result = rebuild(sigma);
  memo.emplace(sigma.identity(), result);
  return result;
}

}  // namespace

PName::PName() : node_(empty_name_node()) {}

PName PName::of(std::vector<NameEntry> entries) {
  std::sort(entries.begin(), entries.end());
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  return PName(name_interner().intern(std::move(entries)));
}

std::span<const NameEntry> PName::entries() const { return node_->entries; }
std::size_t PName::size() const { return node_->entries.size(); }
std::size_t PName::rank() const { return node_->rank; }
std::size_t PName::hash() const { return node_->hash; }

std::vector<PName> PName::domain() const {
  std::vector<PName> out;
  for (const auto& e : entries()) {
    if (out.empty() || out.back() != e.name) out.push_back(e.name);
  }
  return out;
}

std::strong_ordering operator<=>(const PName& a, const PName& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.rank() <=> b.rank(); c != 0) return c;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (auto c = ea[i] <=> eb[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

void validate_name(const PName& sigma, const Preorder& p) {
  for (const auto& s : subnames(sigma)) {
    for (const auto& e : s.entries()) {
      if (e.cond >= p.size()) throw Error("name refers to condition " + std::to_string(e.cond) + " outside the forcing");
    }
  }
}

std::vector<PName> subnames(const PName& sigma) {
  std::set<const void*> seen;
  std::vector<PName> out;
  std::vector<PName> stack{sigma};
  while (!stack.empty()) {
    PName x = stack.back();
    stack.pop_back();
    if (!seen.insert(x.identity()).second) continue;
    out.push_back(x);
    for (const auto& e : x.entries()) stack.push_back(e.name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

HFSet NameEvaluator::operator()(const PName& sigma) {
  auto it = memo_.find(sigma.identity());
  if (it != memo_.end()) return it->second;
  std::vector<HFSet> out;
  for (const auto& e : sigma.entries()) {
    if (e.cond >= filter_.size()) throw Error("name refers to a condition outside the filter's forcing");
    if (filter_[e.cond]) out.push_back((*this)(e.name));
  }
  HFSet value = HFSet::of(std::move(out));
  memo_.emplace(sigma.identity(), value);
  return value;
}

HFSet evaluate(const PName& sigma, const ConditionSet& filter) { return NameEvaluator(filter)(sigma); }

PName check_name(const HFSet& x, Cond top) {
  std::map<HFSet, PName> memo;
  std::function<PName(const HFSet&)> go = [&](const HFSet& s) {
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    std::vector<NameEntry> entries;
    for (const auto& y : s.elements()) entries.push_back({go(y), top});
    PName out = PName::of(std::move(entries));
    memo.emplace(s, out);
    return out;
  };
  return go(x);
}

PName op_name(const PName& a, const PName& b, Cond top) {
  PName single = PName::of({{a, top}});
  PName both = PName::of({{a, top}, {b, top}});
  return PName::of({{single, top}, {both, top}});
}

HFSet p_evaluation(const PName& sigma, Cond p, const Preorder& order) {
  std::unordered_map<const void*, HFSet> memo;
  std::function<HFSet(const PName&)> go = [&](const PName& s) -> HFSet {
    auto it = memo.find(s.identity());
    if (it != memo.end()) return it->second;
    std::vector<HFSet> out;
    for (const auto& e : s.entries()) {
      if (order.le(p, e.cond)) out.push_back(go(e.name));
    }
    HFSet v = HFSet::of(std::move(out));
    memo.emplace(s.identity(), v);
    return v;
  };
  return go(sigma);
}

PName retag(const PName& sigma, const std::vector<Cond>& map) {
  std::unordered_map<const void*, PName> memo;
  std::function<PName(const PName&)> go = [&](const PName& s) {
    return transform(s, memo, [&](const PName& x) {
      std::vector<NameEntry> entries;
      for (const auto& e : x.entries()) {
        if (e.cond >= map.size()) throw Error("retag: condition outside the mapped forcing");
        entries.push_back({go(e.name), map[e.cond]});
      }
      return PName::of(std::move(entries));
    });
  };
  return go(sigma);
}

PName transport_quotient(const PName& sigma, const QuotientMap& q) { return retag(sigma, q.map); }

PName plus_transform(const PName& sigma, Cond sup, Cond top) {
  std::unordered_map<const void*, PName> memo;
  std::function<PName(const PName&)> go = [&](const PName& s) {
    return transform(s, memo, [&](const PName& x) {
      std::vector<NameEntry> entries;
      for (const auto& e : x.entries()) entries.push_back({go(e.name), e.cond == sup ? top : e.cond});
      return PName::of(std::move(entries));
    });
  };
  return go(sigma);
}

PName minus_transform(const PName& sigma, Cond sup) {
  std::unordered_map<const void*, PName> memo;
  std::function<PName(const PName&)> go = [&](const PName& s) {
    return transform(s, memo, [&](const PName& x) {
      std::vector<NameEntry> entries;
      for (const auto& e : x.entries()) {
        if (e.cond != sup) entries.push_back({go(e.name), e.cond});
      }
      return PName::of(std::move(entries));
    });
  };
  return go(sigma);
}

PName gdot_name(const Preorder& p) {
  std::vector<NameEntry> entries;
  for (Cond c = 0; c < p.size(); ++c) entries.push_back({check_name(HFSet::natural(c), p.top()), c});
  return PName::of(std::move(entries));
}

std::string to_string(const PName& sigma, const Preorder& p) {
  std::string out = "{";
  bool first = true;
  for (const auto& e : sigma.entries()) {
    if (!first) out += ",";
    first = false;
    out += "<" + to_string(e.name, p) + "," + (e.cond < p.size() ? p.id(e.cond) : "?" + std::to_string(e.cond)) + ">";
  }
  return out + "}";
}

}  // namespace forcelab
