#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "forcelab/error.hpp"
#include "forcelab/runner.hpp"
#include "forcelab/scenario.hpp"

namespace {

constexpr int kUsageError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw forcelab::Error("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::size_t default_max_carrier() {
  if (const char* env = std::getenv("FORCELAB_MAX_CARRIER")) {
    try {
      return std::stoul(env);
    } catch (const std::exception&) {
      throw forcelab::Error(std::string("FORCELAB_MAX_CARRIER is not a number: ") + env);
    }
  }
  return forcelab::LoadOptions{}.max_carrier;
}

// The file stem without directories and extension.
std::string scenario_name(const std::string& path) {
  std::string name = path.substr(path.find_last_of('/') + 1);
  if (auto dot = name.rfind(".scn"); dot != std::string::npos && dot + 4 == name.size()) name.resize(dot);
  return name;
}

forcelab::Environment load(const std::string& path, const forcelab::LoadOptions& options) {
  try {
    return forcelab::load_scenario(forcelab::parse_scenario(read_file(path)), options);
  } catch (const forcelab::ParseError& e) {
    throw forcelab::Error(path + ":" + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forcelab: finite forcing workbench"};
  app.require_subcommand(1);

  std::string scenario;
  std::vector<std::string> suites;
  std::uint64_t seed = 1;
  std::size_t pool_rank = 2;
  std::optional<std::size_t> max_size;
  std::string format = "text";
  auto* run = app.add_subcommand("run", "run the queries and suites of a scenario");
  run->add_option("--scenario", scenario, "scenario file")->required();
  run->add_option("--suite", suites, "run only these suites; a suite not invoked by the scenario runs on every forcing it applies to")
      ->check(CLI::IsMember(forcelab::suite_names()));
  run->add_option("--seed", seed, "seed for sampled pools and randomized checks");
  run->add_option("--pool-rank", pool_rank, "maximum rank of sampled names");
  run->add_option("--max-size", max_size, "cap on enumerated carriers (default FORCELAB_MAX_CARRIER or 4096)");
  run->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "jsonl"}));

  std::string check_file;
  auto* check = app.add_subcommand("check", "parse and validate a scenario");
  check->add_option("file", check_file, "scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    forcelab::LoadOptions options;
    options.max_carrier = max_size ? *max_size : default_max_carrier();
    options.pool_rank = pool_rank;
    if (*check) {
      load(check_file, options);
      std::cout << check_file << ": ok\n";
      return 0;
    }
    forcelab::Environment env = load(scenario, options);
    forcelab::RunOptions run_options;
    run_options.seed = seed;
    run_options.suites = suites;
    run_options.pool_rank = pool_rank;
    forcelab::Report report = forcelab::run_scenario(env, scenario_name(scenario), run_options);
    std::cout << (format == "jsonl" ? forcelab::format_jsonl(report) : forcelab::format_text(report));
    return report.failed() ? 1 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}
