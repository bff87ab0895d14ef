#include "forcelab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <json.hpp>
#include <map>
#include <random>
#include <set>

#include "forcelab/error.hpp"
#include "forcelab/forcing.hpp"
#include "forcelab/generators.hpp"
#include "forcelab/suites.hpp"

namespace forcelab {

namespace {

struct SuiteInfo {
  std::string name;
  std::string anchor;
  std::vector<ForcingKind> kinds;
  std::vector<std::string> options;
};

const std::vector<SuiteInfo>& suite_table() {
  using K = ForcingKind;
  static const std::vector<SuiteInfo> table{
      {"atomic-equivalence", "the recursive forcing relation for =, in and subset agrees with truth in every generic",
       {K::Explicit, K::Collapse, K::Iteration}, {"pool"}},
      {"truth-lemma", "every atomic statement true in a generic is forced by one of its members",
       {K::Explicit, K::Collapse, K::Iteration}, {"pool"}},
      {"nu-mu", "a formula holds exactly when its two associated names are equal",
       {K::Explicit, K::Collapse, K::Iteration}, {"pool", "formulas"}},
      {"boolean-values", "a condition forces an atom iff its image lies below the atom's Boolean value",
       {K::Explicit, K::Iteration}, {"pool"}},
      {"completion-iso", "saturating by suprema and negations gives the regular open algebra",
       {K::Explicit, K::Iteration}, {}},
      {"approachability", "collapse strata and projections satisfy the approachability clauses and keep restricted forcing",
       {K::Collapse}, {"projection", "names"}},
      {"friedman-iso", "a scheduled generic for the Friedman forcing decodes to the ground membership relation",
       {K::Friedman}, {"seeds"}},
      {"varphi-star", "first-order truth in the ground model matches forcing of the translated formula",
       {K::Friedman}, {"free", "quantifiers", "sample"}},
      {"two-step", "generic pairs compose to exactly the generics of the two-step iteration", {K::Iteration}, {}},
      {"quotient-transfer", "atomic forcing survives the separative quotient with transported names",
       {K::Explicit, K::Collapse, K::Iteration}, {"pool"}},
  };
  return table;
}

const SuiteInfo* find_suite(std::string_view name) {
  for (const auto& s : suite_table()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::mt19937_64 item_rng(std::uint64_t seed, const std::string& id) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  for (unsigned char c : id) words.push_back(c);
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

std::size_t option_number(const SExpr& form, const std::string& key, std::size_t fallback) {
  for (std::size_t i = 3; i < form.items.size(); ++i) {
    if (form.items[i].is_form(key)) return std::stoul(form.items[i].items[1].atom);
  }
  return fallback;
}

std::string option_atom(const SExpr& form, const std::string& key, const std::string& fallback) {
  for (std::size_t i = 3; i < form.items.size(); ++i) {
    if (form.items[i].is_form(key)) return form.items[i].items[1].atom;
  }
  return fallback;
}

class Runner {
 public:
  Runner(const Environment& env, const RunOptions& options) : env_(env), options_(options) {}

  ReportRecord query(const SExpr& form) {
    ReportRecord r;
    r.id = form.items[1].atom;
    r.kind = "query";
    auto [value, detail] = evaluate_query(form.items[2]);
    r.payload = detail.empty() ? value : value + " " + detail;
    if (form.items.size() == 4) {
      const std::string& expected = form.items[3].items[1].atom;
      r.status = value == expected ? Status::Pass : Status::Fail;
      if (r.status == Status::Fail) r.witness = "expected " + expected;
    }
    return r;
  }

  ReportRecord suite(const std::string& name, const std::string& target, const SExpr* form) {
    ReportRecord r;
    r.id = name + "/" + target;
    r.kind = "suite";
    std::mt19937_64 rng = item_rng(options_.seed, r.id);
    SExpr empty = SExpr::make_list({});
    const SExpr& opts = form != nullptr ? *form : empty;
    CheckOutcome out = run_suite(name, env_.forcings.at(target), opts, rng);
    r.status = out.ok ? Status::Pass : Status::Fail;
    r.payload = "checks=" + std::to_string(out.checked);
    r.witness = out.failure;
    return r;
  }

 private:
  std::vector<PName> pool(const ForcingEntry& f, const SExpr& opts, std::mt19937_64& rng) {
    for (std::size_t i = 3; i < opts.items.size(); ++i) {
      if (opts.items[i].is_form("pool")) return env_.pools.at(opts.items[i].items[1].atom).names;
    }
    return sample_names(f.order, {options_.pool_rank, 8, 3}, rng);
  }

  CheckOutcome run_suite(const std::string& name, const ForcingEntry& f, const SExpr& opts, std::mt19937_64& rng) {
    if (name == "atomic-equivalence") return check_atomic_equivalence(f.order, pool(f, opts, rng));
    if (name == "truth-lemma") return check_truth_lemma(f.order, pool(f, opts, rng));
    if (name == "nu-mu") {
      auto names = pool(f, opts, rng);
      return check_nu_mu(f.order, names, option_number(opts, "formulas", 20), rng);
    }
    if (name == "boolean-values") return check_boolean_values(f.order, pool(f, opts, rng));
    if (name == "completion-iso") return check_completion_isomorphism(f.order);
    if (name == "quotient-transfer") return check_quotient_transfer(f.order, pool(f, opts, rng));
    if (name == "approachability") {
      bool constant = option_atom(opts, "projection", "standard") == "constant";
      ProjectionFamily family =
          constant ? constant_projection_family(*f.collapse) : approachability_instance(*f.collapse);
      return check_projection_family(family, {options_.pool_rank, 4, 3}, option_number(opts, "names", 64), rng);
    }
    if (name == "friedman-iso") {
      std::vector<std::uint64_t> seeds;
      for (std::size_t i = 0; i < option_number(opts, "seeds", 20); ++i) seeds.push_back(rng());
      return check_friedman_decoding(*f.friedman, seeds);
    }
    if (name == "varphi-star") {
      std::size_t free = option_number(opts, "free", 2);
      std::size_t quantifiers = option_number(opts, "quantifiers", 1);
      if (std::size_t sample = option_number(opts, "sample", 0); sample > 0) {
        return check_varphi_star_sampled(*f.friedman, sample, free, quantifiers, rng);
      }
      std::vector<FOFormula> formulas;
      for (std::size_t k = 0; k <= free; ++k) {
        auto part = bounded_fo_formulas(k, quantifiers);
        formulas.insert(formulas.end(), part.begin(), part.end());
      }
      return check_varphi_star(*f.friedman, formulas);
    }
    if (name == "two-step") return check_composed_generics(*f.iteration);
    throw Error("unknown suite " + name);
  }

  // The value compared against (expect ...), and extra detail for the payload.
  std::pair<std::string, std::string> evaluate_query(const SExpr& q) {
    if (q.is_form("forces")) {
      const std::string& id = q.items[1].atom;
      const ForcingEntry& f = env_.forcings.at(id);
      Cond c = resolve_condition(f, q.items[2]);
      InfFormula phi = resolve_inf_formula(env_, id, q.items[3]);
      Verdict v = semantic_forces(f.order, c, phi);
      if (v.forced) return {"FORCED", ""};
      return {"REFUTED", "witness=" + format_set(f.order, cone(f.order, *v.witness))};
    }
    return {plain_query(q), ""};
  }

  std::string plain_query(const SExpr& q) {
    if (q.is_form("value")) {
      auto [forcing, filter] = resolve_filter(q.items[2]);
      return evaluate(resolve_name(env_, forcing, q.items[1]), filter).to_string();
    }
    if (q.is_form("filter")) {
      const GenericDecl& g = env_.generics.at(q.items[1].atom);
      return format_set(env_.forcings.at(g.forcing).order, g.filter);
    }
    if (q.is_form("holds")) {
      FOFormula phi = q.items[1].is_atom() ? std::get<FOFormula>(env_.formulas.at(q.items[1].atom).formula)
                                           : resolve_fo_formula(q.items[1]);
      std::vector<HFSet> assignment;
      for (std::size_t i = 2; i < q.items.size(); ++i) assignment.push_back(parse_hf_literal(q.items[i].atom));
      return fo_satisfies(*env_.ground, phi, assignment) ? "true" : "false";
    }
    if (q.is_form("size")) return std::to_string(env_.forcings.at(q.items[1].atom).order.size());
    throw Error("unknown query");
  }

  std::pair<std::string, ConditionSet> resolve_filter(const SExpr& e) {
    if (e.is_form("cone")) {
      const std::string& id = e.items[1].atom;
      const ForcingEntry& f = env_.forcings.at(id);
      return {id, cone(f.order, resolve_condition(f, e.items[2]))};
    }
    const GenericDecl& g = env_.generics.at(e.atom);
    return {g.forcing, g.filter};
  }

  const Environment& env_;
  const RunOptions& options_;
};

template <class F>
ReportRecord timed(const std::string& id, const std::string& kind, F&& body) {
  auto start = std::chrono::steady_clock::now();
  ReportRecord r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r.id = id;
    r.kind = kind;
    r.status = Status::Fail;
    r.payload = "error";
    r.witness = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

std::optional<std::string_view> suite_anchor(std::string_view suite) {
  if (const SuiteInfo* s = find_suite(suite)) return s->anchor;
  return std::nullopt;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : suite_table()) out.push_back(s.name);
    return out;
  }();
  return names;
}

bool suite_applies(std::string_view suite, ForcingKind kind) {
  const SuiteInfo* s = find_suite(suite);
  return s != nullptr && std::find(s->kinds.begin(), s->kinds.end(), kind) != s->kinds.end();
}

const std::vector<std::string>& suite_options(std::string_view suite) {
  static const std::vector<std::string> none;
  const SuiteInfo* s = find_suite(suite);
  return s != nullptr ? s->options : none;
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "PASS";
    case Status::Fail:
      return "FAIL";
    case Status::Value:
      return "VALUE";
  }
  return "VALUE";
}

bool Report::failed() const {
  return std::any_of(records.begin(), records.end(), [](const ReportRecord& r) { return r.status == Status::Fail; });
}

Report run_scenario(const Environment& env, const std::string& scenario_name, const RunOptions& options) {
  for (const auto& s : options.suites) {
    if (!find_suite(s)) throw Error("unknown suite '" + s + "'");
  }
  Report report;
  report.scenario = scenario_name;
  report.seed = options.seed;
  Runner runner(env, options);
  auto selected = [&](const std::string& suite) {
    return options.suites.empty() ||
           std::find(options.suites.begin(), options.suites.end(), suite) != options.suites.end();
  };
  auto note_suite = [&](const std::string& suite) {
    if (std::find(report.suites.begin(), report.suites.end(), suite) == report.suites.end()) {
      report.suites.push_back(suite);
    }
  };
  std::set<std::string> invoked;
  for (const auto& form : env.items) {
    if (form.is_form("query")) {
      report.records.push_back(timed(form.items[1].atom, "query", [&] { return runner.query(form); }));
      continue;
    }
    const std::string& name = form.items[1].atom;
    invoked.insert(name);
    if (!selected(name)) continue;
    note_suite(name);
    const std::string& target = form.items[2].atom;
    report.records.push_back(timed(name + "/" + target, "suite", [&] { return runner.suite(name, target, &form); }));
  }
  for (const auto& name : options.suites) {
    if (invoked.contains(name)) continue;
    for (const auto& target : env.forcing_order) {
      if (!suite_applies(name, env.forcings.at(target).kind)) continue;
      note_suite(name);
      report.records.push_back(timed(name + "/" + target, "suite", [&] { return runner.suite(name, target, nullptr); }));
    }
  }
  return report;
}

namespace {

struct Counts {
  std::size_t pass = 0, fail = 0, value = 0;
};

Counts count(const Report& r) {
  Counts c;
  for (const auto& rec : r.records) {
    if (rec.status == Status::Pass) ++c.pass;
    if (rec.status == Status::Fail) ++c.fail;
    if (rec.status == Status::Value) ++c.value;
  }
  return c;
}

}  // namespace

std::string format_text(const Report& r) {
  std::string out = "# forcelab report\n# scenario: " + r.scenario + "\n# seed: " + std::to_string(r.seed) + "\n";
  for (const auto& s : r.suites) out += "# suite " + s + ": " + std::string(*suite_anchor(s)) + "\n";
  for (const auto& rec : r.records) {
    out += "RESULT " + rec.id + " " + std::string(to_string(rec.status)) + " " + rec.payload;
    if (!rec.witness.empty()) out += " witness: " + rec.witness;
    out += "\n";
  }
  Counts c = count(r);
  out += "# summary: " + std::to_string(c.pass) + " pass, " + std::to_string(c.fail) + " fail, " +
         std::to_string(c.value) + " value\n";
  return out;
}

std::string format_jsonl(const Report& r) {
  using json = nlohmann::ordered_json;
  std::string out;
  json header{{"record", "header"}, {"scenario", r.scenario}, {"seed", r.seed}};
  json anchors = json::object();
  for (const auto& s : r.suites) anchors[s] = std::string(*suite_anchor(s));
  header["suites"] = anchors;
  out += header.dump() + "\n";
  for (const auto& rec : r.records) {
    json line{{"record", "result"},
              {"id", rec.id},
              {"kind", rec.kind},
              {"status", std::string(to_string(rec.status))},
              {"payload", rec.payload},
              {"witness", rec.witness},
              {"seconds", rec.seconds}};
    out += line.dump() + "\n";
  }
  Counts c = count(r);
  out += json{{"record", "summary"}, {"pass", c.pass}, {"fail", c.fail}, {"value", c.value}}.dump() + "\n";
  return out;
}

}  // namespace forcelab
