#include "forcelab/formulas.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "forcelab/error.hpp"

namespace forcelab {

struct FOFormula::Node {
  Kind kind;
  std::size_t a = 0;
  std::size_t b = 0;
  std::vector<FOFormula> children;
};

FOFormula FOFormula::eq(std::size_t i, std::size_t j) {
  return FOFormula(std::make_shared<const Node>(Node{Kind::Eq, i, j, {}}));
}
FOFormula FOFormula::mem(std::size_t i, std::size_t j) {
  return FOFormula(std::make_shared<const Node>(Node{Kind::Mem, i, j, {}}));
}
FOFormula FOFormula::in_class(std::size_t i, std::size_t k) {
  return FOFormula(std::make_shared<const Node>(Node{Kind::InClass, i, k, {}}));
}
FOFormula FOFormula::negation(FOFormula f) {
  return FOFormula(std::make_shared<const Node>(Node{Kind::Not, 0, 0, {std::move(f)}}));
}
FOFormula FOFormula::disjunction(std::vector<FOFormula> fs) {
  return FOFormula(std::make_shared<const Node>(Node{Kind::Or, 0, 0, std::move(fs)}));
}
FOFormula FOFormula::conjunction(std::vector<FOFormula> fs) {
  return FOFormula(std::make_shared<const Node>(Node{Kind::And, 0, 0, std::move(fs)}));
}
FOFormula FOFormula::exists(std::size_t k, FOFormula body) {
  return FOFormula(std::make_shared<const Node>(Node{Kind::Exists, k, 0, {std::move(body)}}));
}
FOFormula FOFormula::forall(std::size_t k, FOFormula body) {
  return FOFormula(std::make_shared<const Node>(Node{Kind::Forall, k, 0, {std::move(body)}}));
}
FOFormula FOFormula::implies(FOFormula a, FOFormula b) { return disjunction({negation(std::move(a)), std::move(b)}); }

FOFormula::Kind FOFormula::kind() const { return node_->kind; }
std::size_t FOFormula::left() const { return node_->a; }
std::size_t FOFormula::right() const { return node_->b; }
std::size_t FOFormula::variable() const { return node_->a; }
const FOFormula& FOFormula::body() const { return node_->children.front(); }
std::span<const FOFormula> FOFormula::operands() const { return node_->children; }

bool operator==(const FOFormula& x, const FOFormula& y) {
  if (x.node_ == y.node_) return true;
  return x.node_->kind == y.node_->kind && x.node_->a == y.node_->a && x.node_->b == y.node_->b &&
         x.node_->children == y.node_->children;
}

std::set<std::size_t> free_variables(const FOFormula& f) {
  switch (f.kind()) {
    case FOFormula::Kind::Eq:
    case FOFormula::Kind::Mem:
      return {f.left(), f.right()};
    case FOFormula::Kind::InClass:
      return {f.left()};
    case FOFormula::Kind::Not:
    case FOFormula::Kind::Or:
    case FOFormula::Kind::And: {
      std::set<std::size_t> out;
      for (const auto& g : f.operands()) {
        auto s = free_variables(g);
        out.insert(s.begin(), s.end());
      }
      return out;
    }
    case FOFormula::Kind::Exists:
    case FOFormula::Kind::Forall: {
      auto s = free_variables(f.body());
      s.erase(f.variable());
      return s;
    }
  }
  return {};
}

bool is_normal_form(const FOFormula& f) {
  switch (f.kind()) {
    case FOFormula::Kind::Eq:
    case FOFormula::Kind::Mem:
    case FOFormula::Kind::InClass:
      return true;
    case FOFormula::Kind::Not:
    case FOFormula::Kind::Or:
    case FOFormula::Kind::And:
      return std::all_of(f.operands().begin(), f.operands().end(), [](const FOFormula& g) { return is_normal_form(g); });
    case FOFormula::Kind::Exists:
    case FOFormula::Kind::Forall: {
      auto s = free_variables(f.body());
      if (!s.empty() && *s.rbegin() > f.variable()) return false;
      return is_normal_form(f.body());
    }
  }
  return false;
}

std::size_t quantifier_depth(const FOFormula& f) {
  std::size_t d = 0;
  for (const auto& g : f.operands()) d = std::max(d, quantifier_depth(g));
  if (f.kind() == FOFormula::Kind::Exists || f.kind() == FOFormula::Kind::Forall) ++d;
  return d;
}

bool uses_class_predicates(const FOFormula& f) {
  if (f.kind() == FOFormula::Kind::InClass) return true;
  return std::any_of(f.operands().begin(), f.operands().end(), [](const FOFormula& g) { return uses_class_predicates(g); });
}

FOFormula shift_variables(const FOFormula& f, std::size_t offset) {
  std::vector<FOFormula> kids;
  for (const auto& g : f.operands()) kids.push_back(shift_variables(g, offset));
  switch (f.kind()) {
    case FOFormula::Kind::Eq:
      return FOFormula::eq(f.left() + offset, f.right() + offset);
    case FOFormula::Kind::Mem:
      return FOFormula::mem(f.left() + offset, f.right() + offset);
    case FOFormula::Kind::InClass:
      return FOFormula::in_class(f.left() + offset, f.right());
    case FOFormula::Kind::Not:
      return FOFormula::negation(kids.front());
    case FOFormula::Kind::Or:
      return FOFormula::disjunction(std::move(kids));
    case FOFormula::Kind::And:
      return FOFormula::conjunction(std::move(kids));
    case FOFormula::Kind::Exists:
      return FOFormula::exists(f.variable() + offset, kids.front());
    case FOFormula::Kind::Forall:
      return FOFormula::forall(f.variable() + offset, kids.front());
  }
  return f;
}

FOFormula psi_unique(const FOFormula& phi) {
  auto fv = free_variables(phi);
  if (!fv.empty() && *fv.rbegin() > 0) throw Error("psi_unique: formula may only have v0 free");
  FOFormula at_v1 = shift_variables(phi, 1);
  return FOFormula::conjunction(
      {phi, FOFormula::forall(1, FOFormula::implies(at_v1, FOFormula::eq(1, 0)))});
}

std::string to_string(const FOFormula& f) {
  auto v = [](std::size_t i) { return "v" + std::to_string(i); };
  auto list = [&](const char* head) {
    std::string out = std::string("(") + head;
    for (const auto& g : f.operands()) out += " " + to_string(g);
    return out + ")";
  };
  switch (f.kind()) {
    case FOFormula::Kind::Eq:
      return "(eq " + v(f.left()) + " " + v(f.right()) + ")";
    case FOFormula::Kind::Mem:
      return "(mem " + v(f.left()) + " " + v(f.right()) + ")";
    case FOFormula::Kind::InClass:
      return "(mem " + v(f.left()) + " A" + std::to_string(f.right()) + ")";
    case FOFormula::Kind::Not:
      return list("not");
    case FOFormula::Kind::Or:
      return list("or");
    case FOFormula::Kind::And:
      return list("and");
    case FOFormula::Kind::Exists:
      return "(ex " + std::to_string(f.variable()) + " " + to_string(f.body()) + ")";
    case FOFormula::Kind::Forall:
      return "(all " + std::to_string(f.variable()) + " " + to_string(f.body()) + ")";
  }
  return "";
}

namespace {

bool satisfies(const GroundModel& model, const FOFormula& f, std::vector<std::optional<HFSet>>& env,
               const std::vector<std::vector<HFSet>>& classes) {
  auto value = [&](std::size_t i) -> const HFSet& {
    if (i >= env.size() || !env[i]) throw Error("fo_satisfies: variable v" + std::to_string(i) + " is unassigned");
    return *env[i];
  };
  switch (f.kind()) {
    case FOFormula::Kind::Eq:
      return value(f.left()) == value(f.right());
    case FOFormula::Kind::Mem:
      return value(f.right()).contains(value(f.left()));
    case FOFormula::Kind::InClass: {
      if (f.right() >= classes.size()) throw Error("fo_satisfies: class predicate A" + std::to_string(f.right()) + " is not supplied");
      const auto& cls = classes[f.right()];
      return std::find(cls.begin(), cls.end(), value(f.left())) != cls.end();
    }
    case FOFormula::Kind::Not:
      return !satisfies(model, f.operands()[0], env, classes);
    case FOFormula::Kind::Or:
      for (const auto& g : f.operands()) {
        if (satisfies(model, g, env, classes)) return true;
      }
      return false;
    case FOFormula::Kind::And:
      for (const auto& g : f.operands()) {
        if (!satisfies(model, g, env, classes)) return false;
      }
      return true;
    case FOFormula::Kind::Exists:
    case FOFormula::Kind::Forall: {
      const bool existential = f.kind() == FOFormula::Kind::Exists;
      const std::size_t k = f.variable();
      if (env.size() <= k) env.resize(k + 1);
      auto saved = env[k];
      bool result = !existential;
      for (const auto& x : model.carrier()) {
        env[k] = x;
        bool holds = satisfies(model, f.body(), env, classes);
        if (existential && holds) {
          result = true;
          break;
        }
        if (!existential && !holds) {
          result = false;
          break;
        }
      }
      env[k] = saved;
      return result;
    }
  }
  return false;
}

}  // namespace

bool fo_satisfies(const GroundModel& model, const FOFormula& f, const std::vector<HFSet>& assignment,
                  const std::vector<std::vector<HFSet>>& classes) {
  std::vector<std::optional<HFSet>> env(assignment.begin(), assignment.end());
  return satisfies(model, f, env, classes);
}

struct InfFormula::Node {
  Kind kind;
  Cond cond = 0;
  PName lhs;
  PName rhs;
  std::vector<InfFormula> children;
};

InfFormula InfFormula::in_generic(Cond p) {
  return InfFormula(std::make_shared<const Node>(Node{Kind::InGeneric, p, {}, {}, {}}));
}
InfFormula InfFormula::eq(PName s, PName t) {
  return InfFormula(std::make_shared<const Node>(Node{Kind::Eq, 0, s, t, {}}));
}
InfFormula InfFormula::mem(PName s, PName t) {
  return InfFormula(std::make_shared<const Node>(Node{Kind::Mem, 0, s, t, {}}));
}
InfFormula InfFormula::negation(InfFormula f) {
  return InfFormula(std::make_shared<const Node>(Node{Kind::Not, 0, {}, {}, {std::move(f)}}));
}
InfFormula InfFormula::disjunction(std::vector<InfFormula> fs) {
  return InfFormula(std::make_shared<const Node>(Node{Kind::Or, 0, {}, {}, std::move(fs)}));
}
InfFormula InfFormula::conjunction(std::vector<InfFormula> fs) {
  return InfFormula(std::make_shared<const Node>(Node{Kind::And, 0, {}, {}, std::move(fs)}));
}

InfFormula::Kind InfFormula::kind() const { return node_->kind; }
Cond InfFormula::condition() const { return node_->cond; }
const PName& InfFormula::lhs() const { return node_->lhs; }
const PName& InfFormula::rhs() const { return node_->rhs; }
const InfFormula& InfFormula::operand() const { return node_->children.front(); }
std::span<const InfFormula> InfFormula::operands() const { return node_->children; }

bool operator==(const InfFormula& x, const InfFormula& y) {
  if (x.node_ == y.node_) return true;
  return x.node_->kind == y.node_->kind && x.node_->cond == y.node_->cond && x.node_->lhs == y.node_->lhs &&
         x.node_->rhs == y.node_->rhs && x.node_->children == y.node_->children;
}

std::size_t formula_depth(const InfFormula& f) {
  std::size_t d = 0;
  for (const auto& g : f.operands()) d = std::max(d, formula_depth(g) + 1);
  return d;
}

std::size_t formula_size(const InfFormula& f) {
  std::unordered_map<const void*, std::size_t> memo;
  std::function<std::size_t(const InfFormula&)> go = [&](const InfFormula& g) -> std::size_t {
    auto it = memo.find(g.identity());
    if (it != memo.end()) return it->second;
    std::size_t s = 1;
    for (const auto& h : g.operands()) s += go(h);
    memo.emplace(g.identity(), s);
    return s;
  };
  return go(f);
}

void validate_formula(const InfFormula& f, const Preorder& p) {
  switch (f.kind()) {
    case InfFormula::Kind::InGeneric:
      if (f.condition() >= p.size()) throw Error("formula refers to a condition outside the forcing");
      return;
    case InfFormula::Kind::Eq:
    case InfFormula::Kind::Mem:
      validate_name(f.lhs(), p);
      validate_name(f.rhs(), p);
      return;
    default:
      for (const auto& g : f.operands()) validate_formula(g, p);
  }
}

std::string to_string(const InfFormula& f, const Preorder& p) {
  auto list = [&](const char* head) {
    std::string out = std::string("(") + head;
    for (const auto& g : f.operands()) out += " " + to_string(g, p);
    return out + ")";
  };
  switch (f.kind()) {
    case InfFormula::Kind::InGeneric:
      return "(ing " + p.id(f.condition()) + ")";
    case InfFormula::Kind::Eq:
      return "(eq " + to_string(f.lhs(), p) + " " + to_string(f.rhs(), p) + ")";
    case InfFormula::Kind::Mem:
      return "(mem " + to_string(f.lhs(), p) + " " + to_string(f.rhs(), p) + ")";
    case InfFormula::Kind::Not:
      return list("not");
    case InfFormula::Kind::Or:
      return list("or");
    case InfFormula::Kind::And:
      return list("and");
  }
  return "";
}

std::string to_string(const Atomic& a, const Preorder& p) {
  const char* head = a.kind == AtomKind::Eq ? "eq" : a.kind == AtomKind::Mem ? "mem" : "sub";
  return std::string("(") + head + " " + to_string(a.lhs, p) + " " + to_string(a.rhs, p) + ")";
}

bool is_negation_normal(const InfFormula& f) {
  if (f.kind() == InfFormula::Kind::Not) return f.operand().kind() == InfFormula::Kind::InGeneric;
  return std::all_of(f.operands().begin(), f.operands().end(), [](const InfFormula& g) { return is_negation_normal(g); });
}

namespace {

// Pushes negations to generic-membership atoms, unfolding negated equality
// and membership over the entries of the names involved.
class NegationNormalizer {
 public:
  InfFormula positive(const InfFormula& f) {
    switch (f.kind()) {
      case InfFormula::Kind::InGeneric:
      case InfFormula::Kind::Eq:
      case InfFormula::Kind::Mem:
        return f;
      case InfFormula::Kind::Not:
        return negative(f.operand());
      case InfFormula::Kind::Or:
        return InfFormula::disjunction(map_all(f, true));
      case InfFormula::Kind::And:
        return InfFormula::conjunction(map_all(f, true));
    }
    return f;
  }

  InfFormula negative(const InfFormula& f) {
    switch (f.kind()) {
      case InfFormula::Kind::InGeneric:
        return InfFormula::negation(f);
      case InfFormula::Kind::Eq:
        return not_equal(f.lhs(), f.rhs());
      case InfFormula::Kind::Mem:
        return not_member(f.lhs(), f.rhs());
      case InfFormula::Kind::Not:
        return positive(f.operand());
      case InfFormula::Kind::Or:
        return InfFormula::conjunction(map_all(f, false));
      case InfFormula::Kind::And:
        return InfFormula::disjunction(map_all(f, false));
    }
    return f;
  }

 private:
  using Key = std::pair<const void*, const void*>;

  std::vector<InfFormula> map_all(const InfFormula& f, bool pos) {
    std::vector<InfFormula> out;
    for (const auto& g : f.operands()) out.push_back(pos ? positive(g) : negative(g));
    return out;
  }

  InfFormula not_equal(const PName& s, const PName& t) {
    Key key{s.identity(), t.identity()};
    if (auto it = neq_.find(key); it != neq_.end()) return it->second;
    InfFormula out = InfFormula::disjunction({not_subset(s, t), not_subset(t, s)});
    neq_.emplace(key, out);
    return out;
  }

  InfFormula not_subset(const PName& s, const PName& t) {
    std::vector<InfFormula> parts;
    for (const auto& e : s.entries()) {
      parts.push_back(InfFormula::conjunction({not_member(e.name, t), InfFormula::in_generic(e.cond)}));
    }
    return InfFormula::disjunction(std::move(parts));
  }

  InfFormula not_member(const PName& s, const PName& t) {
    Key key{s.identity(), t.identity()};
    if (auto it = nmem_.find(key); it != nmem_.end()) return it->second;
    std::vector<InfFormula> parts;
    for (const auto& e : t.entries()) {
      parts.push_back(InfFormula::disjunction(
          {not_equal(s, e.name), InfFormula::negation(InfFormula::in_generic(e.cond))}));
    }
    InfFormula out = InfFormula::conjunction(std::move(parts));
    nmem_.emplace(key, out);
    return out;
  }

  std::map<Key, InfFormula> neq_;
  std::map<Key, InfFormula> nmem_;
};

}  // namespace

InfFormula nnf(const InfFormula& f) { return NegationNormalizer().positive(f); }

GodelCode GodelCode::nat(std::size_t n) {
  GodelCode c;
  c.kind_ = Kind::Nat;
  c.number_ = n;
  return c;
}
GodelCode GodelCode::name(PName s) {
  GodelCode c;
  c.kind_ = Kind::Name;
  c.name_ = std::move(s);
  return c;
}
GodelCode GodelCode::condition(Cond p) {
  GodelCode c;
  c.kind_ = Kind::Condition;
  c.number_ = p;
  return c;
}
GodelCode GodelCode::tuple(std::vector<GodelCode> items) {
  GodelCode c;
  c.kind_ = Kind::Tuple;
  c.items_ = std::move(items);
  return c;
}

GodelCode encode(const InfFormula& f) {
  using G = GodelCode;
  auto indexed = [&](std::size_t tag) {
    std::vector<G> pairs;
    for (std::size_t i = 0; i < f.operands().size(); ++i) pairs.push_back(G::tuple({G::nat(i), encode(f.operands()[i])}));
    return G::tuple({G::nat(tag), G::nat(f.operands().size()), G::tuple(std::move(pairs))});
  };
  switch (f.kind()) {
    case InfFormula::Kind::InGeneric:
      return G::tuple({G::nat(0), G::condition(f.condition())});
    case InfFormula::Kind::Eq:
      return G::tuple({G::nat(1), G::name(f.lhs()), G::name(f.rhs())});
    case InfFormula::Kind::Mem:
      return G::tuple({G::nat(2), G::name(f.lhs()), G::name(f.rhs())});
    case InfFormula::Kind::Not:
      return G::tuple({G::nat(3), encode(f.operand())});
    case InfFormula::Kind::Or:
      return indexed(4);
    case InfFormula::Kind::And:
      return indexed(5);
  }
  throw Error("encode: unknown formula kind");
}

InfFormula decode(const GodelCode& code) {
  using K = GodelCode::Kind;
  auto bad = [](const std::string& why) -> InfFormula { throw Error("malformed formula code: " + why); };
  if (code.kind() != K::Tuple || code.items().empty() || code.items()[0].kind() != K::Nat) return bad("expected a tagged tuple");
  auto items = code.items();
  switch (items[0].number()) {
    case 0:
      if (items.size() != 2 || items[1].kind() != K::Condition) return bad("tag 0 takes one condition");
      return InfFormula::in_generic(items[1].number());
    case 1:
    case 2:
      if (items.size() != 3 || items[1].kind() != K::Name || items[2].kind() != K::Name) return bad("tags 1 and 2 take two names");
      return items[0].number() == 1 ? InfFormula::eq(items[1].name_value(), items[2].name_value())
                                    : InfFormula::mem(items[1].name_value(), items[2].name_value());
    case 3:
      if (items.size() != 2) return bad("tag 3 takes one code");
      return InfFormula::negation(decode(items[1]));
    case 4:
    case 5: {
      if (items.size() != 3 || items[1].kind() != K::Nat || items[2].kind() != K::Tuple) return bad("tags 4 and 5 take an index bound and a family");
      auto family = items[2].items();
      if (family.size() != items[1].number()) return bad("family size does not match the index bound");
      std::vector<InfFormula> parts;
      for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& pair = family[i];
        if (pair.kind() != K::Tuple || pair.items().size() != 2 || pair.items()[0].kind() != K::Nat || pair.items()[0].number() != i) {
          return bad("family entries must be <i, code> in index order");
        }
        parts.push_back(decode(pair.items()[1]));
      }
      return items[0].number() == 4 ? InfFormula::disjunction(std::move(parts)) : InfFormula::conjunction(std::move(parts));
    }
    default:
      return bad("unknown tag " + std::to_string(items[0].number()));
  }
}

std::string to_string(const GodelCode& code, const Preorder& p) {
  switch (code.kind()) {
    case GodelCode::Kind::Nat:
      return std::to_string(code.number());
    case GodelCode::Kind::Condition:
      return "@" + (code.number() < p.size() ? p.id(code.number()) : std::to_string(code.number()));
    case GodelCode::Kind::Name:
      return to_string(code.name_value(), p);
    case GodelCode::Kind::Tuple: {
      std::string out = "<";
      for (std::size_t i = 0; i < code.items().size(); ++i) {
        if (i) out += ",";
        out += to_string(code.items()[i], p);
      }
      return out + ">";
    }
  }
  return "";
}

namespace {

class NuMuBuilder {
 public:
  explicit NuMuBuilder(Cond top) : top_(top) {}

  NuMu build(const InfFormula& f) {
    if (auto it = memo_.find(f.identity()); it != memo_.end()) return it->second;
    NuMu out = compute(f);
    memo_.emplace(f.identity(), out);
    return out;
  }

 private:
  PName index_name(std::size_t i) { return check_name(HFSet::natural(i), top_); }

  NuMu compute(const InfFormula& f) {
    const PName zero = index_name(0);
    switch (f.kind()) {
      case InfFormula::Kind::InGeneric:
        return {PName::of({{zero, f.condition()}}), index_name(1)};
      case InfFormula::Kind::Eq:
        return {f.lhs(), f.rhs()};
      case InfFormula::Kind::Mem: {
        std::vector<NameEntry> entries(f.rhs().entries().begin(), f.rhs().entries().end());
        entries.push_back({f.lhs(), top_});
        return {f.rhs(), PName::of(std::move(entries))};
      }
      case InfFormula::Kind::Not:
        if (f.operand().kind() != InfFormula::Kind::InGeneric) throw Error("nu_mu: formula is not in negation normal form");
        return {PName(), PName::of({{zero, f.operand().condition()}})};
      case InfFormula::Kind::And: {
        std::vector<NameEntry> nu;
        std::vector<NameEntry> mu;
        for (std::size_t i = 0; i < f.operands().size(); ++i) {
          NuMu part = build(f.operands()[i]);
          nu.push_back({op_name(part.nu, index_name(i), top_), top_});
          mu.push_back({op_name(part.mu, index_name(i), top_), top_});
        }
        return {PName::of(std::move(nu)), PName::of(std::move(mu))};
      }
      case InfFormula::Kind::Or: {
        const std::size_t k = f.operands().size();
        std::vector<PName> nu_bar;
        std::vector<PName> mu_bar;
        for (std::size_t i = 0; i < k; ++i) {
          NuMu part = build(f.operands()[i]);
          nu_bar.push_back(op_name(part.nu, index_name(i), top_));
          mu_bar.push_back(op_name(part.mu, index_name(i), top_));
        }
        std::vector<NameEntry> pi_entries;
        std::vector<NameEntry> mixed;
        for (std::size_t i = 0; i < k; ++i) {
          mixed.push_back({op_name(nu_bar[i], mu_bar[i], top_), top_});
          pi_entries.push_back(mixed.back());
          pi_entries.push_back({op_name(nu_bar[i], nu_bar[i], top_), top_});
        }
        PName pi = PName::of(pi_entries);
        std::vector<NameEntry> nu;
        for (std::size_t i = 0; i < k; ++i) {
          // When nu_bar and mu_bar coincide the mixed pair is also a filler pair and stays.
          std::vector<NameEntry> without;
          for (const auto& e : pi.entries()) {
            if (!(e == mixed[i]) || nu_bar[i] == mu_bar[i]) without.push_back(e);
          }
          nu.push_back({PName::of(std::move(without)), top_});
        }
        std::vector<NameEntry> mu = nu;
        mu.push_back({pi, top_});
        return {PName::of(std::move(nu)), PName::of(std::move(mu))};
      }
    }
    throw Error("nu_mu: unknown formula kind");
  }

  Cond top_;
  std::unordered_map<const void*, NuMu> memo_;
};

}  // namespace

NuMu nu_mu(const InfFormula& f, Cond top) {
  InfFormula normal = is_negation_normal(f) ? f : nnf(f);
  return NuMuBuilder(top).build(normal);
}

StarTranslation translate_star(const FOFormula& f, const std::vector<std::size_t>& n, std::size_t truncation,
                               const PName& edot, Cond top) {
  if (!is_normal_form(f)) throw Error("translate_star: formula is not in normal form");
  if (uses_class_predicates(f)) throw Error("translate_star: class predicates have no translation");
  for (std::size_t x : n) {
    if (x >= truncation) throw Error("translate_star: index " + std::to_string(x) + " is not below the truncation");
  }
  auto numeral = [&](std::size_t i) { return check_name(HFSet::natural(i), top); };
  std::function<InfFormula(const FOFormula&, const std::vector<std::size_t>&)> go =
      [&](const FOFormula& g, const std::vector<std::size_t>& idx) -> InfFormula {
    auto at = [&](std::size_t v) {
      if (v >= idx.size()) throw Error("translate_star: variable v" + std::to_string(v) + " has no index");
      return idx[v];
    };
    switch (g.kind()) {
      case FOFormula::Kind::Eq:
        return InfFormula::eq(numeral(at(g.left())), numeral(at(g.right())));
      case FOFormula::Kind::Mem:
        return InfFormula::mem(op_name(numeral(at(g.left())), numeral(at(g.right())), top), edot);
      case FOFormula::Kind::InClass:
        throw Error("translate_star: class predicates have no translation");
      case FOFormula::Kind::Not:
        return InfFormula::negation(go(g.operands()[0], idx));
      case FOFormula::Kind::Or:
      case FOFormula::Kind::And: {
        std::vector<InfFormula> parts;
        for (const auto& h : g.operands()) parts.push_back(go(h, idx));
        return g.kind() == FOFormula::Kind::Or ? InfFormula::disjunction(std::move(parts))
                                               : InfFormula::conjunction(std::move(parts));
      }
      case FOFormula::Kind::Exists:
      case FOFormula::Kind::Forall: {
        // Variables v_j with j >= k that are not bound here are not free in the body.
        const std::size_t k = g.variable();
        std::vector<std::size_t> prefix(idx.begin(), idx.begin() + std::min(k, idx.size()));
        prefix.resize(k, 0);
        std::vector<InfFormula> parts;
        for (std::size_t i = 0; i < truncation; ++i) {
          auto extended = prefix;
          extended.push_back(i);
          parts.push_back(go(g.body(), extended));
        }
        return g.kind() == FOFormula::Kind::Exists ? InfFormula::disjunction(std::move(parts))
                                                   : InfFormula::conjunction(std::move(parts));
      }
    }
    throw Error("translate_star: unknown formula kind");
  };
  auto fv = free_variables(f);
  if (!fv.empty() && *fv.rbegin() >= n.size()) throw Error("translate_star: index tuple is shorter than the free variables");
  return {go(f, n), truncation};
}

bool appropriate(const std::vector<HFSet>& x, const std::vector<std::size_t>& n) {
  if (x.size() != n.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if ((x[i] == x[j]) != (n[i] == n[j])) return false;
    }
  }
  return true;
}

std::vector<std::size_t> lex_min_appropriate(const std::vector<HFSet>& x) {
  std::vector<std::size_t> n;
  std::vector<HFSet> seen;
  for (const auto& v : x) {
    auto it = std::find(seen.begin(), seen.end(), v);
    if (it == seen.end()) {
      n.push_back(seen.size());
      seen.push_back(v);
    } else {
      n.push_back(static_cast<std::size_t>(it - seen.begin()));
    }
  }
  return n;
}

InfFormula star_star_lift(const InfFormula& f, const std::vector<std::optional<Cond>>& map) {
  auto image = [&](Cond c) {
    if (c >= map.size() || !map[c]) throw Error("star_star_lift: condition " + std::to_string(c) + " has no counterpart in the iteration");
    return *map[c];
  };
  std::unordered_map<const void*, PName> memo;
  std::function<PName(const PName&)> lift_name = [&](const PName& s) -> PName {
    if (auto it = memo.find(s.identity()); it != memo.end()) return it->second;
    std::vector<NameEntry> entries;
    for (const auto& e : s.entries()) entries.push_back({lift_name(e.name), image(e.cond)});
    PName out = PName::of(std::move(entries));
    memo.emplace(s.identity(), out);
    return out;
  };
  std::function<InfFormula(const InfFormula&)> go = [&](const InfFormula& g) -> InfFormula {
    std::vector<InfFormula> kids;
    for (const auto& h : g.operands()) kids.push_back(go(h));
    switch (g.kind()) {
      case InfFormula::Kind::InGeneric:
        return InfFormula::in_generic(image(g.condition()));
      case InfFormula::Kind::Eq:
        return InfFormula::eq(lift_name(g.lhs()), lift_name(g.rhs()));
      case InfFormula::Kind::Mem:
        return InfFormula::mem(lift_name(g.lhs()), lift_name(g.rhs()));
      case InfFormula::Kind::Not:
        return InfFormula::negation(kids.front());
      case InfFormula::Kind::Or:
        return InfFormula::disjunction(std::move(kids));
      case InfFormula::Kind::And:
        return InfFormula::conjunction(std::move(kids));
    }
    throw Error("star_star_lift: unknown formula kind");
  };
  return go(f);
}

}  // namespace forcelab
