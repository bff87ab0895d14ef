#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "forcelab/error.hpp"
#include "forcelab/runner.hpp"
#include "forcelab/scenario.hpp"
#include "forcelab/sexpr.hpp"

namespace forcelab {
namespace {

namespace fs = std::filesystem;

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

fs::path corpus() { return fs::path(FORCELAB_SOURCE_DIR) / "scenarios"; }

template <class F>
ParseError parse_error(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error";
  return ParseError("", 0, 0);
}

Report run_text(const std::string& text, const RunOptions& options = {}) {
  return run_scenario(load_scenario(parse_scenario(text)), "t", options);
}

TEST(SExpr, AtomsListsAndComments) {
  auto forms = parse_sexprs("(a (b \"c d\") ; comment\n e)\nf");
  ASSERT_EQ(forms.size(), 2u);
  EXPECT_TRUE(forms[0].is_form("a"));
  EXPECT_EQ(forms[0].items[1].items[1].atom, "c d");
  EXPECT_EQ(forms[0].items[2].line, 2u);
  EXPECT_EQ(forms[0].items[2].column, 2u);
  EXPECT_EQ(forms[1].atom, "f");
}

TEST(SExpr, QuotingRoundTrips) {
  for (std::string atom : {"", "a b", "(", ";x", "q\"uote", "back\\slash", "{{},{{}}}"}) {
    SExpr e = SExpr::make_list({SExpr::make_atom("h"), SExpr::make_atom(atom)});
    auto back = parse_sexprs(to_string(e));
    ASSERT_EQ(back.size(), 1u) << atom;
    EXPECT_EQ(back[0], e) << to_string(e);
  }
}

TEST(SExpr, ErrorsCarryPositions) {
  auto e = parse_error([] { parse_sexprs("(a\n  b))"); });
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 5u);
  e = parse_error([] { parse_sexprs("\n\n (a (b)"); });
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 2u);
  e = parse_error([] { parse_sexprs("(a \"open"); });
  EXPECT_EQ(e.line(), 1u);
  e = parse_error([] { parse_sexprs("(a \"\\q\")"); });
  EXPECT_EQ(e.line(), 1u);
}

TEST(Scenario, MinimalScenarioParses) {
  Report r = run_text("(ground (vstage 1))\n(forcing P (elems 1 a))\n(query s (size P) (expect 2))\n");
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].status, Status::Pass);
}

TEST(Scenario, UnresolvedReferenceIsLocated) {
  std::string text = "(forcing P (elems 1 a))\n(name x (pairs (y a)))\n";
  Scenario s = parse_scenario(text);
  auto e = parse_error([&] { load_scenario(s); });
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 17u);
  EXPECT_NE(std::string(e.what()).find("unknown name 'y'"), std::string::npos);

  e = parse_error([] { load_scenario(parse_scenario("(forcing P (elems 1))\n(query q (size Q))")); });
  EXPECT_EQ(e.line(), 2u);
  e = parse_error([] { load_scenario(parse_scenario("(forcing P (elems 1))\n(query q (forces P c (ing 1)))")); });
  EXPECT_EQ(e.column(), 20u);
}

TEST(Scenario, ShapeErrors) {
  EXPECT_THROW(parse_scenario("(bogus x y)"), ParseError);
  EXPECT_THROW(parse_scenario("(forcing P (elems 1)) (forcing P (elems 1))"), ParseError);
  EXPECT_THROW(parse_scenario("(forcing top (elems 1))"), ParseError);
  EXPECT_THROW(parse_scenario("(suite no-such-suite P)"), ParseError);
  EXPECT_THROW(load_scenario(parse_scenario("(forcing P (elems 1))\n(suite approachability P)")), ParseError);
  EXPECT_THROW(load_scenario(parse_scenario("(forcing P (elems 1))\n(suite nu-mu P (seeds 3))")), ParseError);
  EXPECT_THROW(load_scenario(parse_scenario("(forcing P (elems 1 a) (le (a z)))")), ParseError);
}

TEST(Scenario, ValidatorsRejectAtLoad) {
  auto e = parse_error([] { load_scenario(parse_scenario("(forcing C (collapse 4 4 plain))"), {.max_carrier = 100}); });
  EXPECT_EQ(e.line(), 1u);
  EXPECT_THROW(load_scenario(parse_scenario("(ground (sets \"{{{}}}\"))")), ParseError);
}

TEST(Scenario, SerializeParseFixpointOnCorpus) {
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(corpus())) {
    if (entry.path().extension() != ".scn") continue;
    ++files;
    Scenario s = parse_scenario(read(entry.path()));
    std::string once = serialize(s);
    EXPECT_EQ(parse_scenario(once), s) << entry.path();
    EXPECT_EQ(serialize(parse_scenario(once)), once) << entry.path();
    fs::path golden = fs::path(FORCELAB_SOURCE_DIR) / "tests" / "golden" / (entry.path().stem().string() + ".serialized");
    EXPECT_EQ(once, read(golden)) << golden;
  }
  EXPECT_GE(files, 5u);
}

TEST(Runner, EmptyScenarioGivesEmptyReport) {
  Report r = run_text("(forcing P (elems 1))");
  EXPECT_TRUE(r.records.empty());
  EXPECT_FALSE(r.failed());
  EXPECT_NE(format_text(r).find("# summary: 0 pass, 0 fail, 0 value"), std::string::npos);
}

TEST(Runner, ExpectationsDecideStatus) {
  Report r = run_text(
      "(forcing P (elems 1 a b))\n"
      "(query f (forces P top (or (ing a) (ing b))) (expect FORCED))\n"
      "(query g (forces P top (ing a)) (expect FORCED))\n"
      "(query h (size P))\n");
  ASSERT_EQ(r.records.size(), 3u);
  EXPECT_EQ(r.records[0].status, Status::Pass);
  EXPECT_EQ(r.records[1].status, Status::Fail);
  EXPECT_EQ(r.records[1].payload, "REFUTED witness={1,b}");
  EXPECT_EQ(r.records[2].status, Status::Value);
  EXPECT_TRUE(r.failed());
}

TEST(Runner, SuiteSelectionTargetsApplicableForcings) {
  std::string text =
      "(forcing P (elems 1 a b))\n(forcing C (collapse 1 2 plain))\n(suite truth-lemma P)\n(query s (size P))\n";
  RunOptions only;
  only.suites = {"approachability"};
  Report r = run_text(text, only);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[0].id, "s");
  EXPECT_EQ(r.records[1].id, "approachability/C");
  EXPECT_EQ(r.suites, std::vector<std::string>{"approachability"});

  only.suites = {"bogus"};
  EXPECT_THROW(run_text(text, only), Error);
}

TEST(Runner, EverySuiteHasAnAnchorInTheHeader) {
  for (const auto& s : suite_names()) {
    ASSERT_TRUE(suite_anchor(s).has_value());
    EXPECT_FALSE(suite_anchor(s)->empty());
  }
  Report r = run_text("(forcing P (elems 1 a b))\n(suite truth-lemma P)\n(suite completion-iso P)\n");
  std::string text = format_text(r);
  EXPECT_NE(text.find("# suite truth-lemma: " + std::string(*suite_anchor("truth-lemma"))), std::string::npos);
  EXPECT_NE(text.find("# suite completion-iso: "), std::string::npos);
}

TEST(Runner, BrokenProjectionFailsWithWitness) {
  Report r = run_text("(forcing C (collapse 2 3 plain))\n(suite approachability C (projection constant))\n");
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].status, Status::Fail);
  EXPECT_FALSE(r.records[0].witness.empty());
}

TEST(Runner, ReportsAreDeterministicPerSeed) {
  std::string text = read(corpus() / "p3.basics.scn");
  RunOptions a;
  a.seed = 9;
  EXPECT_EQ(format_text(run_text(text, a)), format_text(run_text(text, a)));
}

TEST(Runner, JsonlMatchesText) {
  Report r = run_text(read(corpus() / "p3.basics.scn"));
  std::istringstream jsonl(format_jsonl(r));
  std::string line;
  std::size_t results = 0;
  while (std::getline(jsonl, line)) {
    if (line.find("\"record\":\"result\"") == std::string::npos) continue;
    const ReportRecord& rec = r.records[results++];
    EXPECT_NE(line.find("\"id\":\"" + rec.id + "\""), std::string::npos) << line;
    EXPECT_NE(line.find("\"status\":\"" + std::string(to_string(rec.status)) + "\""), std::string::npos) << line;
  }
  EXPECT_EQ(results, r.records.size());
}

}  // namespace
}  // namespace forcelab
