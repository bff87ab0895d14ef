#include "forcelab/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <random>
#include <set>

#include "forcelab/error.hpp"
#include "forcelab/forcing.hpp"
#include "forcelab/generators.hpp"
#include "forcelab/generic.hpp"
#include "forcelab/runner.hpp"

namespace forcelab {

void fail_at(const SExpr& e, const std::string& message) { throw ParseError(message, e.line, e.column); }

namespace {

const std::string& atom(const SExpr& e, const std::string& what) {
  if (!e.is_atom()) fail_at(e, "expected " + what);
  return e.atom;
}

std::size_t number(const SExpr& e, const std::string& what) {
  const std::string& text = atom(e, what);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) fail_at(e, "expected " + what + ", got '" + text + "'");
  return value;
}

const SExpr* clause(const SExpr& form, std::string_view head, std::size_t from = 1) {
  for (std::size_t i = from; i < form.items.size(); ++i) {
    if (form.items[i].is_form(head)) return &form.items[i];
  }
  return nullptr;
}

void require_arity(const SExpr& form, std::size_t n, const std::string& shape) {
  if (form.items.size() != n) fail_at(form, "expected " + shape);
}

HFSet hf_literal(const SExpr& e) {
  const std::string& text = atom(e, "a set literal");
  try {
    return parse_hf_literal(text);
  } catch (const ParseError& err) {
    throw;
  } catch (const Error& err) {
    fail_at(e, err.what());
  }
}

const std::set<std::string_view> kDeclarations{"ground", "forcing", "name", "formula", "pool", "generic"};

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario s{parse_sexprs(text)};
  std::set<std::string> ids;
  for (const auto& form : s.forms) {
    if (!form.list || form.items.empty() || !form.items[0].is_atom()) fail_at(form, "expected a declaration");
    const std::string& head = form.items[0].atom;
    if (head == "ground") {
      require_arity(form, 2, "(ground (vstage k)) or (ground (sets ...))");
      const SExpr& body = form.items[1];
      if (!body.is_form("vstage") && !body.is_form("sets")) fail_at(body, "expected (vstage k) or (sets ...)");
      continue;
    }
    std::string id;
    if (head == "suite") {
      if (form.items.size() < 3) fail_at(form, "expected (suite NAME TARGET options...)");
      const std::string& name = atom(form.items[1], "a suite name");
      if (!suite_anchor(name)) fail_at(form.items[1], "unknown suite '" + name + "'");
      id = name + "/" + atom(form.items[2], "a suite target");
    } else if (kDeclarations.contains(head) || head == "query") {
      if (form.items.size() < 3) fail_at(form, "expected (" + head + " ID ...)");
      id = atom(form.items[1], "an identifier");
      if (id == "top") fail_at(form.items[1], "'top' is reserved");
    } else {
      fail_at(form.items[0], "unknown declaration '" + head + "'");
    }
    if (!ids.insert(id).second) fail_at(form.items[1], "duplicate identifier '" + id + "'");
  }
  return s;
}

std::string serialize(const Scenario& s) {
  std::string out;
  for (const auto& form : s.forms) out += to_string(form) + "\n";
  return out;
}

Cond resolve_condition(const ForcingEntry& f, const SExpr& e) {
  const std::string& id = atom(e, "a condition");
  if (auto c = f.order.find(id)) return *c;
  if (id == "top") return f.order.top();
  fail_at(e, "unknown condition '" + id + "'");
}

PName resolve_name(const Environment& env, const std::string& forcing, const SExpr& e) {
  const ForcingEntry& f = env.forcings.at(forcing);
  const Cond top = f.order.top();
  if (e.is_atom()) {
    auto it = env.names.find(e.atom);
    if (it == env.names.end()) fail_at(e, "unknown name '" + e.atom + "'");
    if (it->second.forcing != forcing) {
      fail_at(e, "name '" + e.atom + "' is over " + it->second.forcing + ", not " + forcing);
    }
    return it->second.name;
  }
  if (e.is_form("check")) {
    require_arity(e, 2, "(check SET)");
    return check_name(hf_literal(e.items[1]), top);
  }
  if (e.is_form("op")) {
    require_arity(e, 3, "(op NAME NAME)");
    return op_name(resolve_name(env, forcing, e.items[1]), resolve_name(env, forcing, e.items[2]), top);
  }
  if (e.is_form("gdot")) {
    require_arity(e, 1, "(gdot)");
    return gdot_name(f.order);
  }
  if (e.is_form("pairs")) {
    std::vector<NameEntry> entries;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      const SExpr& pair = e.items[i];
      if (!pair.list || pair.items.size() != 2) fail_at(pair, "expected (NAME CONDITION)");
      entries.push_back({resolve_name(env, forcing, pair.items[0]), resolve_condition(f, pair.items[1])});
    }
    return PName::of(std::move(entries));
  }
  fail_at(e, "expected a name");
}

namespace {

bool is_variable(const SExpr& e) {
  return e.is_atom() && e.atom.size() > 1 && e.atom[0] == 'v' &&
         std::all_of(e.atom.begin() + 1, e.atom.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::size_t variable(const SExpr& e) {
  if (!is_variable(e)) fail_at(e, "expected a variable v0, v1, ...");
  return std::stoul(e.atom.substr(1));
}

// First-order when quantified or when every atom relates variables.
bool looks_first_order(const Environment& env, const SExpr& e) {
  bool quantified = false;
  bool variables = false;
  bool names = false;
  std::function<void(const SExpr&)> visit = [&](const SExpr& f) {
    if (f.is_form("ex") || f.is_form("all")) quantified = true;
    if (f.is_form("ing")) names = true;
    if (f.is_form("eq") || f.is_form("mem")) {
      for (std::size_t i = 1; i < f.items.size(); ++i) {
        if (is_variable(f.items[i]) && !env.names.contains(f.items[i].atom)) {
          variables = true;
        } else {
          names = true;
        }
      }
    }
    if (f.list) {
      for (std::size_t i = 1; i < f.items.size(); ++i) visit(f.items[i]);
    }
  };
  visit(e);
  return quantified || (variables && !names);
}

}  // namespace

InfFormula resolve_inf_formula(const Environment& env, const std::string& forcing, const SExpr& e) {
  if (e.is_atom()) {
    auto it = env.formulas.find(e.atom);
    if (it == env.formulas.end()) fail_at(e, "unknown formula '" + e.atom + "'");
    const auto* inf = std::get_if<InfFormula>(&it->second.formula);
    if (inf == nullptr) fail_at(e, "formula '" + e.atom + "' is first-order");
    if (it->second.forcing != forcing) fail_at(e, "formula '" + e.atom + "' is over " + it->second.forcing);
    return *inf;
  }
  if (e.is_form("eq") || e.is_form("mem")) {
    require_arity(e, 3, "(" + e.items[0].atom + " NAME NAME)");
    PName s = resolve_name(env, forcing, e.items[1]);
    PName t = resolve_name(env, forcing, e.items[2]);
    return e.is_form("eq") ? InfFormula::eq(s, t) : InfFormula::mem(s, t);
  }
  if (e.is_form("ing")) {
    require_arity(e, 2, "(ing CONDITION)");
    return InfFormula::in_generic(resolve_condition(env.forcings.at(forcing), e.items[1]));
  }
  if (e.is_form("not")) {
    require_arity(e, 2, "(not FORMULA)");
    return InfFormula::negation(resolve_inf_formula(env, forcing, e.items[1]));
  }
  if (e.is_form("or") || e.is_form("and")) {
    std::vector<InfFormula> parts;
    for (std::size_t i = 1; i < e.items.size(); ++i) parts.push_back(resolve_inf_formula(env, forcing, e.items[i]));
    return e.is_form("or") ? InfFormula::disjunction(std::move(parts)) : InfFormula::conjunction(std::move(parts));
  }
  if (e.is_form("ex") || e.is_form("all")) fail_at(e, "quantifiers need a first-order formula over variables");
  fail_at(e, "expected a formula");
}

FOFormula resolve_fo_formula(const SExpr& e) {
  if (e.is_form("eq") || e.is_form("mem")) {
    require_arity(e, 3, "(" + e.items[0].atom + " VAR VAR)");
    std::size_t i = variable(e.items[1]);
    std::size_t j = variable(e.items[2]);
    return e.is_form("eq") ? FOFormula::eq(i, j) : FOFormula::mem(i, j);
  }
  if (e.is_form("not")) {
    require_arity(e, 2, "(not FORMULA)");
    return FOFormula::negation(resolve_fo_formula(e.items[1]));
  }
  if (e.is_form("or") || e.is_form("and")) {
    std::vector<FOFormula> parts;
    for (std::size_t i = 1; i < e.items.size(); ++i) parts.push_back(resolve_fo_formula(e.items[i]));
    return e.is_form("or") ? FOFormula::disjunction(std::move(parts)) : FOFormula::conjunction(std::move(parts));
  }
  if (e.is_form("ex") || e.is_form("all")) {
    require_arity(e, 3, "(" + e.items[0].atom + " VAR FORMULA)");
    std::size_t k = is_variable(e.items[1]) ? variable(e.items[1]) : number(e.items[1], "a variable");
    FOFormula body = resolve_fo_formula(e.items[2]);
    return e.is_form("ex") ? FOFormula::exists(k, body) : FOFormula::forall(k, body);
  }
  fail_at(e, "expected a first-order formula");
}

namespace {

class Loader {
 public:
  Loader(Environment& env, const LoadOptions& options) : env_(env), options_(options) {}

  void declare(const SExpr& form) {
    const std::string& head = form.items[0].atom;
    try {
      if (head == "ground") {
        ground(form);
      } else if (head == "forcing") {
        forcing(form);
      } else if (head == "name") {
        name(form);
      } else if (head == "formula") {
        formula(form);
      } else if (head == "pool") {
        pool(form);
      } else if (head == "generic") {
        generic(form);
      } else {
        env_.items.push_back(form);
        validate_item(form);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail_at(form, e.what());
    }
  }

 private:
  const std::string& forcing_ref(const SExpr& e) {
    const std::string& id = atom(e, "a forcing");
    if (!env_.forcings.contains(id)) fail_at(e, "unknown forcing '" + id + "'");
    return id;
  }

  // The (over F) clause, or the first declared forcing.
  std::string over(const SExpr& form) {
    if (const SExpr* c = clause(form, "over", 2)) {
      require_arity(*c, 2, "(over FORCING)");
      return forcing_ref(c->items[1]);
    }
    if (env_.forcing_order.empty()) fail_at(form, "no forcing declared before this form");
    return env_.forcing_order.front();
  }

  // The last item that is not an (over F) clause.
  const SExpr& body(const SExpr& form) {
    for (std::size_t i = form.items.size(); i-- > 2;) {
      if (!form.items[i].is_form("over")) return form.items[i];
    }
    fail_at(form, "missing body");
  }

  void ground(const SExpr& form) {
    const SExpr& b = form.items[1];
    if (b.is_form("vstage")) {
      require_arity(b, 2, "(vstage k)");
      env_.ground = GroundModel::stage(number(b.items[1], "a stage"));
      return;
    }
    std::vector<HFSet> sets;
    for (std::size_t i = 1; i < b.items.size(); ++i) sets.push_back(hf_literal(b.items[i]));
    env_.ground = GroundModel::from_sets(std::move(sets));
  }

  void forcing(const SExpr& form) {
    const std::string& id = form.items[1].atom;
    ForcingEntry entry;
    const SExpr& first = form.items[2];
    if (first.is_form("collapse")) {
      require_arity(first, 4, "(collapse n lambda plain|star|geq)");
      entry.kind = ForcingKind::Collapse;
      auto c = std::make_shared<CollapseForcing>(number(first.items[1], "a slot count"),
                                                 number(first.items[2], "a height"),
                                                 parse_collapse_variant(atom(first.items[3], "a variant")),
                                                 options_.max_carrier);
      entry.order = c->order();
      entry.collapse = std::move(c);
    } else if (first.is_form("friedman")) {
      require_arity(first, 3, "(friedman (vstage k) N)");
      entry.kind = ForcingKind::Friedman;
      GroundModel model = first.items[1].is_form("vstage") ? stage(first.items[1]) : declared_ground(first.items[1]);
      auto f = std::make_shared<FriedmanForcing>(std::move(model), number(first.items[2], "an index count"));
      auto x = std::make_shared<ExplicitFriedman>(*f, options_.max_carrier);
      entry.order = x->order();
      entry.friedman = std::move(f);
      entry.friedman_order = std::move(x);
    } else if (first.is_form("iterate")) {
      entry.kind = ForcingKind::Iteration;
      auto it = std::make_shared<TwoStepIteration>(iterate(first));
      entry.order = it->order();
      entry.iteration = std::move(it);
    } else {
      entry.order = explicit_order(form);
    }
    if (entry.order.size() > options_.max_carrier) {
      throw BoundError("forcing " + id + " has " + std::to_string(entry.order.size()) + " conditions, above the cap of " +
                       std::to_string(options_.max_carrier));
    }
    env_.forcings.emplace(id, std::move(entry));
    env_.forcing_order.push_back(id);
  }

  GroundModel stage(const SExpr& e) {
    require_arity(e, 2, "(vstage k)");
    return GroundModel::stage(number(e.items[1], "a stage"));
  }

  GroundModel declared_ground(const SExpr& e) {
    if (!e.is_atom() || e.atom != "ground") fail_at(e, "expected (vstage k) or ground");
    if (!env_.ground) fail_at(e, "no ground declared");
    return *env_.ground;
  }

  Preorder explicit_order(const SExpr& form) {
    const SExpr* elems = clause(form, "elems", 2);
    if (elems == nullptr) fail_at(form, "expected (elems ...), (collapse ...), (friedman ...) or (iterate ...)");
    std::vector<std::string> ids;
    for (std::size_t i = 1; i < elems->items.size(); ++i) {
      const std::string& id = atom(elems->items[i], "a condition");
      if (std::find(ids.begin(), ids.end(), id) != ids.end()) fail_at(elems->items[i], "duplicate condition " + id);
      ids.push_back(id);
    }
    if (ids.empty()) fail_at(*elems, "a forcing needs at least one condition");
    if (ids.size() > options_.max_carrier) fail_at(*elems, "more conditions than the carrier cap");
    auto index = [&](const SExpr& e) {
      const std::string& id = atom(e, "a condition");
      auto it = std::find(ids.begin(), ids.end(), id);
      if (it == ids.end()) fail_at(e, "unknown condition '" + id + "'");
      return static_cast<Cond>(it - ids.begin());
    };
    Cond top = 0;
    if (const SExpr* t = clause(form, "top", 2)) {
      require_arity(*t, 2, "(top CONDITION)");
      top = index(t->items[1]);
    }
    std::vector<std::pair<Cond, Cond>> gens;
    if (const SExpr* le = clause(form, "le", 2)) {
      for (std::size_t i = 1; i < le->items.size(); ++i) {
        const SExpr& pair = le->items[i];
        if (!pair.list || pair.items.size() != 2) fail_at(pair, "expected (LOWER UPPER)");
        gens.emplace_back(index(pair.items[0]), index(pair.items[1]));
      }
    }
    for (Cond i = 0; i < ids.size(); ++i) gens.emplace_back(i, top);
    return Preorder::from_generators(std::move(ids), gens, top);
  }

  TwoStepIteration iterate(const SExpr& e) {
    if (e.items.size() < 3) fail_at(e, "expected (iterate P (check Q)) or (iterate P qdom qord (pool ...))");
    const std::string& first = forcing_ref(e.items[1]);
    const Preorder& p = env_.forcings.at(first).order;
    if (e.items[2].is_form("check")) {
      require_arity(e, 3, "(iterate P (check Q))");
      require_arity(e.items[2], 2, "(check Q)");
      const std::string& second = forcing_ref(e.items[2].items[1]);
      return TwoStepIteration(p, check_named(env_.forcings.at(second).order, p.top()), options_.max_carrier);
    }
    if (e.items.size() < 5) fail_at(e, "expected (iterate P qdom qord (pool ...) [(top qtop)])");
    NamedPreorder named;
    named.domain = resolve_name(env_, first, e.items[2]);
    named.order = resolve_name(env_, first, e.items[3]);
    const SExpr* pool = clause(e, "pool", 4);
    if (pool == nullptr) fail_at(e, "missing (pool ...)");
    for (std::size_t i = 1; i < pool->items.size(); ++i) {
      const SExpr& n = pool->items[i];
      named.pool.push_back({atom(n, "a declared name"), resolve_name(env_, first, n)});
    }
    if (named.pool.empty()) fail_at(*pool, "the pool is empty");
    if (const SExpr* t = clause(e, "top", 4)) {
      require_arity(*t, 2, "(top NAME)");
      named.top = resolve_name(env_, first, t->items[1]);
    } else {
      named.top = named.pool.front().name;
    }
    return TwoStepIteration(p, std::move(named), options_.max_carrier);
  }

  void name(const SExpr& form) {
    std::string f = over(form);
    PName n = resolve_name(env_, f, body(form));
    env_.names.emplace(form.items[1].atom, NameEntryDecl{f, n});
  }

  void formula(const SExpr& form) {
    const SExpr& b = body(form);
    if (looks_first_order(env_, b)) {
      if (clause(form, "over", 2)) fail_at(form, "a first-order formula is over the ground model");
      env_.formulas.emplace(form.items[1].atom, FormulaDecl{"", resolve_fo_formula(b)});
      return;
    }
    std::string f = over(form);
    env_.formulas.emplace(form.items[1].atom, FormulaDecl{f, resolve_inf_formula(env_, f, b)});
  }

  void pool(const SExpr& form) {
    std::string f = over(form);
    const SExpr& b = body(form);
    PoolDecl decl{f, {}};
    if (b.is_form("names")) {
      for (std::size_t i = 1; i < b.items.size(); ++i) decl.names.push_back(resolve_name(env_, f, b.items[i]));
    } else if (b.is_form("sample")) {
      require_arity(b, 3, "(sample RANK SEED)");
      std::mt19937_64 rng(number(b.items[2], "a seed"));
      decl.names = sample_names(env_.forcings.at(f).order, {number(b.items[1], "a rank"), 8, 3}, rng);
    } else {
      fail_at(b, "expected (names ...) or (sample RANK SEED)");
    }
    env_.pools.emplace(form.items[1].atom, std::move(decl));
  }

  void generic(const SExpr& form) {
    const SExpr* f = clause(form, "forcing", 2);
    if (f == nullptr) fail_at(form, "missing (forcing F)");
    require_arity(*f, 2, "(forcing F)");
    const std::string& id = forcing_ref(f->items[1]);
    const ForcingEntry& entry = env_.forcings.at(id);
    std::optional<std::mt19937_64> rng;
    if (const SExpr* s = clause(form, "seed", 2)) {
      require_arity(*s, 2, "(seed N)");
      rng.emplace(number(s->items[1], "a seed"));
    }
    std::vector<std::string> wanted;
    if (const SExpr* s = clause(form, "schedule", 2)) {
      for (std::size_t i = 1; i < s->items.size(); ++i) wanted.push_back(atom(s->items[i], "a dense set name"));
    }
    const SExpr* start = clause(form, "start", 2);
    if (start != nullptr) require_arity(*start, 2, "(start CONDITION)");
    GenericDecl decl;
    decl.forcing = id;
    if (entry.kind == ForcingKind::Friedman) {
      if (start != nullptr && resolve_condition(entry, start->items[1]) != entry.order.top()) {
        fail_at(*start, "Friedman generics start at the top condition");
      }
      auto schedule = select(friedman_schedule(*entry.friedman), wanted, form);
      auto chain = friedman_generic(*entry.friedman, schedule, rng ? &*rng : nullptr);
      auto last = entry.friedman_order->find(chain.back());
      if (!last) fail_at(form, "the final condition " + format_friedman(chain.back()) + " is not in the explicit order");
      decl.last = *last;
      decl.filter = cone(entry.order, *last);
    } else {
      std::vector<DenseProvider<Cond>> all;
      if (entry.kind == ForcingKind::Collapse) {
        all = collapse_schedule(*entry.collapse);
      } else {
        all.push_back(minimal_provider(entry.order));
      }
      auto schedule = select(all, wanted, form);
      Cond from = start != nullptr ? resolve_condition(entry, start->items[1]) : entry.order.top();
      auto run = rasiowa_sikorski(entry.order, schedule, from, rng ? &*rng : nullptr);
      decl.last = run.chain.back();
      decl.filter = run.filter;
    }
    env_.generics.emplace(form.items[1].atom, std::move(decl));
  }

  static DenseProvider<Cond> minimal_provider(const Preorder& p) {
    return {"minimal", [&p](const Cond& c) { return is_minimal(p, c); },
            [&p](const Cond& c, std::mt19937_64* rng) {
              std::vector<Cond> options;
              for (Cond d : members(p.below(c))) {
                if (is_minimal(p, d)) options.push_back(d);
              }
              return rng != nullptr ? options[(*rng)() % options.size()] : options.front();
            }};
  }

  template <class C>
  static std::vector<DenseProvider<C>> select(const std::vector<DenseProvider<C>>& all,
                                              const std::vector<std::string>& wanted, const SExpr& form) {
    if (wanted.size() == 1 && wanted[0] == "all") return all;
    std::vector<DenseProvider<C>> out;
    for (const auto& w : wanted) {
      auto it = std::find_if(all.begin(), all.end(), [&](const auto& d) { return d.name == w; });
      if (it == all.end()) fail_at(form, "unknown dense set '" + w + "'");
      out.push_back(*it);
    }
    return out;
  }

  void validate_item(const SExpr& form) {
    if (form.is_form("query")) {
      validate_query(form);
    } else {
      validate_suite(form);
    }
  }

  void validate_query(const SExpr& form) {
    const SExpr& q = form.items[2];
    if (form.items.size() > 4) fail_at(form, "expected (query ID QUERY [(expect VALUE)])");
    if (form.items.size() == 4) {
      const SExpr& x = form.items[3];
      if (!x.is_form("expect") || x.items.size() != 2) fail_at(x, "expected (expect VALUE)");
      atom(x.items[1], "an expected value");
    }
    if (q.is_form("forces")) {
      require_arity(q, 4, "(forces F CONDITION FORMULA)");
      const std::string& f = forcing_ref(q.items[1]);
      resolve_condition(env_.forcings.at(f), q.items[2]);
      resolve_inf_formula(env_, f, q.items[3]);
    } else if (q.is_form("value")) {
      require_arity(q, 3, "(value NAME FILTER)");
      std::string f = filter_forcing(q.items[2]);
      resolve_name(env_, f, q.items[1]);
    } else if (q.is_form("filter")) {
      require_arity(q, 2, "(filter GENERIC)");
      generic_ref(q.items[1]);
    } else if (q.is_form("holds")) {
      if (q.items.size() < 2) fail_at(q, "expected (holds FORMULA SET...)");
      if (!env_.ground) fail_at(q, "no ground declared");
      fo_formula_ref(q.items[1]);
      for (std::size_t i = 2; i < q.items.size(); ++i) {
        if (!env_.ground->contains(hf_literal(q.items[i]))) fail_at(q.items[i], "not in the ground model");
      }
    } else if (q.is_form("size")) {
      require_arity(q, 2, "(size F)");
      forcing_ref(q.items[1]);
    } else {
      fail_at(q, "unknown query");
    }
  }

  std::string filter_forcing(const SExpr& e) {
    if (e.is_form("cone")) {
      require_arity(e, 3, "(cone F CONDITION)");
      const std::string& f = forcing_ref(e.items[1]);
      resolve_condition(env_.forcings.at(f), e.items[2]);
      return f;
    }
    return generic_ref(e).forcing;
  }

  const GenericDecl& generic_ref(const SExpr& e) {
    const std::string& id = atom(e, "a generic");
    auto it = env_.generics.find(id);
    if (it == env_.generics.end()) fail_at(e, "unknown generic '" + id + "'");
    return it->second;
  }

  void fo_formula_ref(const SExpr& e) {
    if (!e.is_atom()) {
      resolve_fo_formula(e);
      return;
    }
    auto it = env_.formulas.find(e.atom);
    if (it == env_.formulas.end()) fail_at(e, "unknown formula '" + e.atom + "'");
    if (!std::holds_alternative<FOFormula>(it->second.formula)) fail_at(e, "formula '" + e.atom + "' is not first-order");
  }

  void validate_suite(const SExpr& form) {
    const std::string& name = form.items[1].atom;
    const std::string& target = forcing_ref(form.items[2]);
    const ForcingEntry& f = env_.forcings.at(target);
    if (!suite_applies(name, f.kind)) fail_at(form.items[2], "suite " + name + " does not apply to " + target);
    for (std::size_t i = 3; i < form.items.size(); ++i) {
      const SExpr& opt = form.items[i];
      if (!opt.list || opt.items.size() != 2 || !opt.items[0].is_atom()) fail_at(opt, "expected (OPTION VALUE)");
      const std::string& key = opt.items[0].atom;
      const auto& allowed = suite_options(name);
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail_at(opt, "suite " + name + " has no option '" + key + "'");
      }
      if (key == "pool") {
        const std::string& p = atom(opt.items[1], "a pool");
        auto it = env_.pools.find(p);
        if (it == env_.pools.end()) fail_at(opt.items[1], "unknown pool '" + p + "'");
        if (it->second.forcing != target) fail_at(opt.items[1], "pool '" + p + "' is over " + it->second.forcing);
      } else if (key == "projection") {
        const std::string& v = atom(opt.items[1], "standard or constant");
        if (v != "standard" && v != "constant") fail_at(opt.items[1], "expected standard or constant");
      } else {
        number(opt.items[1], "a number");
      }
    }
  }

  Environment& env_;
  const LoadOptions& options_;
};

}  // namespace

Environment load_scenario(const Scenario& s, const LoadOptions& options) {
  Environment env;
  Loader loader(env, options);
  for (const auto& form : s.forms) loader.declare(form);
  return env;
}

}  // namespace forcelab
