#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "forcelab/scenario.hpp"

namespace forcelab {

// One-line statement of what the suite verifies, printed in report headers.
std::optional<std::string_view> suite_anchor(std::string_view suite);
const std::vector<std::string>& suite_names();
bool suite_applies(std::string_view suite, ForcingKind kind);
const std::vector<std::string>& suite_options(std::string_view suite);

struct RunOptions {
  std::uint64_t seed = 1;
  // Suites to run; empty runs every suite in the scenario. A selected suite
  // with no invocation runs on every forcing it applies to.
  std::vector<std::string> suites;
  std::size_t pool_rank = 2;
};

enum class Status { Pass, Fail, Value };

std::string_view to_string(Status s);

struct ReportRecord {
  std::string id;
  // "query" or "suite"
  std::string kind;
  Status status = Status::Value;
  // The value of a query, or the number of checks of a suite.
  std::string payload;
  std::string witness;
  double seconds = 0;
};

struct Report {
  std::string scenario;
  std::uint64_t seed = 0;
  // Suites that ran, in first-run order.
  std::vector<std::string> suites;
  std::vector<ReportRecord> records;

  bool failed() const;
};

Report run_scenario(const Environment& env, const std::string& scenario_name, const RunOptions& options);

// Text records are `RESULT <id> <status> <payload>`, with a witness after
// ` witness: ` when present. Timing is left out so reports are reproducible.
std::string format_text(const Report& r);
// One JSON object per line: a header, then one per record, then a summary.
std::string format_jsonl(const Report& r);

}  // namespace forcelab
