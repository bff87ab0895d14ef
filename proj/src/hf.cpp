#include "forcelab/hf.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "forcelab/error.hpp"

namespace forcelab {

namespace detail {

struct HFNode {
  std::vector<HFSet> elements;
  std::size_t rank = 0;
  std::size_t hash = 0;
  // Length of the bracket code, saturating.
  std::uint64_t code_length = 2;
  mutable std::once_flag code_once;
  mutable std::string code;
};

}  // namespace detail

namespace {

struct NodeKeyHash {
  std::size_t operator()(const std::vector<const detail::HFNode*>& key) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto* n : key) h = (h ^ n->hash) * 0x100000001b3ull;
    return h;
  }
};

class HFInterner {
 public:
  // `elements` must already be sorted and free of duplicates.
  const detail::HFNode* intern(std::vector<HFSet> elements) {
    std::vector<const detail::HFNode*> key;
    key.reserve(elements.size());
    std::size_t rank = 0;
    std::uint64_t length = 2;
    for (const auto& x : elements) {
      key.push_back(x.node_ptr());
      rank = std::max(rank, x.rank() + 1);
      std::uint64_t l = x.node_ptr()->code_length;
      length = length > UINT64_MAX - l ? UINT64_MAX : length + l;
    }
    std::lock_guard lock(mutex_);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second.get();
    auto node = std::make_unique<detail::HFNode>();
    node->elements = std::move(elements);
    node->rank = rank;
    node->code_length = length;
    node->hash = NodeKeyHash{}(key) + rank;
    const detail::HFNode* raw = node.get();
    table_.emplace(std::move(key), std::move(node));
    return raw;
  }

 private:
  std::mutex mutex_;
  std::unordered_map<std::vector<const detail::HFNode*>, std::unique_ptr<detail::HFNode>, NodeKeyHash> table_;
};

HFInterner& interner() {
  static HFInterner instance;
  return instance;
}

const detail::HFNode* empty_node() {
  static const detail::HFNode* node = interner().intern({});
  return node;
}

}  // namespace

HFSet::HFSet() : node_(empty_node()) {}

HFSet HFSet::of(std::vector<HFSet> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return HFSet(interner().intern(std::move(elements)));
}

HFSet HFSet::natural(std::size_t n) {
  std::vector<HFSet> members;
  HFSet current;
  for (std::size_t i = 0; i < n; ++i) {
    members.push_back(current);
    current = HFSet::of(members);
  }
  return current;
}

std::span<const HFSet> HFSet::elements() const { return node_->elements; }
std::size_t HFSet::size() const { return node_->elements.size(); }
std::size_t HFSet::rank() const { return node_->rank; }
const std::string& HFSet::code() const {
  std::call_once(node_->code_once, [this] {
    std::string out = "{";
    for (const auto& x : elements()) out += x.code();
    out += "}";
    node_->code = std::move(out);
  });
  return node_->code;
}
std::size_t HFSet::hash() const { return node_->hash; }

bool HFSet::contains(const HFSet& x) const {
  return std::binary_search(node_->elements.begin(), node_->elements.end(), x);
}

bool HFSet::is_transitive() const {
  for (const auto& y : elements()) {
    for (const auto& z : y.elements()) {
      if (!contains(z)) return false;
    }
  }
  return true;
}

std::optional<std::size_t> HFSet::as_natural() const {
  std::size_t n = size();
  if (*this == natural(n)) return n;
  return std::nullopt;
}

std::string HFSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& x : elements()) {
    if (!first) out += ",";
    first = false;
    out += x.to_string();
  }
  out += "}";
  return out;
}

// Shorter code first, then elementwise.
std::strong_ordering operator<=>(const HFSet& a, const HFSet& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->code_length <=> b.node_->code_length; c != 0) return c;
  return std::lexicographical_compare_three_way(a.elements().begin(), a.elements().end(), b.elements().begin(),
                                                b.elements().end());
}

HFSet canonicalize(const RawSetGraph& graph) {
  const std::size_t n = graph.children.size();
  if (graph.root >= n) throw Error("canonicalize: root index out of range");
  enum class Mark { Unseen, Active, Done };
  std::vector<Mark> mark(n, Mark::Unseen);
  std::vector<std::optional<HFSet>> value(n);

  std::function<HFSet(std::size_t)> visit = [&](std::size_t v) -> HFSet {
    if (mark[v] == Mark::Done) return *value[v];
    if (mark[v] == Mark::Active) throw Error("canonicalize: membership cycle through node " + std::to_string(v));
    mark[v] = Mark::Active;
    std::vector<HFSet> members;
    for (std::size_t c : graph.children[v]) {
      if (c >= n) throw Error("canonicalize: dangling child index " + std::to_string(c));
      members.push_back(visit(c));
    }
    value[v] = HFSet::of(std::move(members));
    mark[v] = Mark::Done;
    return *value[v];
  };
  return visit(graph.root);
}

HFSet set_union(const HFSet& a, const HFSet& b) {
  std::vector<HFSet> members(a.elements().begin(), a.elements().end());
  members.insert(members.end(), b.elements().begin(), b.elements().end());
  return HFSet::of(std::move(members));
}

HFSet kuratowski(const HFSet& x, const HFSet& y) {
  return HFSet::of({HFSet::of({x}), HFSet::of({x, y})});
}

std::optional<std::pair<HFSet, HFSet>> kuratowski_components(const HFSet& p) {
  auto e = p.elements();
  if (e.size() == 1) {
    if (e[0].size() != 1) return std::nullopt;
    return std::pair{e[0].elements()[0], e[0].elements()[0]};
  }
  if (e.size() != 2) return std::nullopt;
  for (std::size_t i = 0; i < 2; ++i) {
    const HFSet& small = e[i];
    const HFSet& big = e[1 - i];
    if (small.size() != 1 || big.size() != 2) continue;
    const HFSet& x = small.elements()[0];
    if (!big.contains(x)) continue;
    const HFSet& y = big.elements()[0] == x ? big.elements()[1] : big.elements()[0];
    return std::pair{x, y};
  }
  return std::nullopt;
}

HFSet transitive_closure(const HFSet& x) {
  std::vector<HFSet> members;
  std::vector<HFSet> stack(x.elements().begin(), x.elements().end());
  while (!stack.empty()) {
    HFSet y = stack.back();
    stack.pop_back();
    members.push_back(y);
    for (const auto& z : y.elements()) stack.push_back(z);
  }
  return HFSet::of(std::move(members));
}

std::vector<HFSet> vstage(std::size_t k, std::size_t bound) {
  if (k > bound) {
    throw BoundError("vstage(" + std::to_string(k) + ") exceeds the stage bound " + std::to_string(bound));
  }
  std::vector<HFSet> stage;
  for (std::size_t level = 0; level < k; ++level) {
    if (stage.size() >= 64) throw BoundError("vstage: stage too large to enumerate");
    std::vector<HFSet> next;
    const std::size_t count = std::size_t{1} << stage.size();
    next.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
      std::vector<HFSet> members;
      for (std::size_t i = 0; i < stage.size(); ++i) {
        if (mask & (std::size_t{1} << i)) members.push_back(stage[i]);
      }
      next.push_back(HFSet::of(std::move(members)));
    }
    std::sort(next.begin(), next.end());
    stage = std::move(next);
  }
  return stage;
}

namespace {

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  HFSet parse() {
    HFSet value = parse_value();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("set literal: " + what, 1, pos_ + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n')) ++pos_;
  }

  HFSet parse_value() {
    skip_space();
    if (text_.substr(pos_, 4) == "nat:") {
      pos_ += 4;
      std::size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
      if (start == pos_) fail("expected digits after nat:");
      std::size_t n = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (n > 64) fail("natural too large");
      return HFSet::natural(n);
    }
    if (pos_ >= text_.size() || text_[pos_] != '{') fail("expected '{' or nat:");
    ++pos_;
    std::vector<HFSet> members;
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '}') {
      ++pos_;
      return HFSet();
    }
    while (true) {
      members.push_back(parse_value());
      skip_space();
      if (pos_ >= text_.size()) fail("unterminated set");
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (text_[pos_] == '}') {
        ++pos_;
        break;
      }
      fail("expected ',' or '}'");
    }
    return HFSet::of(std::move(members));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

HFSet parse_hf_literal(std::string_view text) { return LiteralParser(text).parse(); }

GroundModel GroundModel::stage(std::size_t k, std::size_t bound) {
  GroundModel m;
  m.carrier_ = vstage(k, bound);
  m.stage_ = k;
  return m;
}

GroundModel GroundModel::from_sets(std::vector<HFSet> sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  GroundModel m;
  m.carrier_ = std::move(sets);
  if (!m.contains(HFSet())) throw Error("ground model must contain the empty set");
  for (const auto& x : m.carrier_) {
    for (const auto& y : x.elements()) {
      if (!m.contains(y)) throw Error("ground model is not transitive: " + x.to_string() + " has element " + y.to_string() + " outside the carrier");
    }
  }
  return m;
}

bool GroundModel::contains(const HFSet& x) const {
  return std::binary_search(carrier_.begin(), carrier_.end(), x);
}

std::optional<std::size_t> GroundModel::index_of(const HFSet& x) const {
  auto it = std::lower_bound(carrier_.begin(), carrier_.end(), x);
  if (it == carrier_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - carrier_.begin());
}

}  // namespace forcelab
