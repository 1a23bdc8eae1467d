#pragma once

// Runs the checks a configuration asks for and serializes the results.

#include <string>
#include <vector>

#include "json.hpp"

#include "cotlift/cli/config.hpp"

namespace cotlift::cli {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kDefaultReportPath = "report.json";

enum ExitCode : int { kAllPassed = 0, kCheckFailed = 1, kConfigOrDomainError = 2 };

struct RunResult {
  std::vector<CheckReport> reports;
  bool all_passed = false;
  double wall_seconds = 0.0;

  int exit_code() const { return all_passed ? kAllPassed : kCheckFailed; }
};

/// Builds the structure, draws the sample and runs each requested check in order.
/// Throws ConfigError, DegenerateCoefficient, ChartDomainError, RangeError or ContractError.
RunResult run(const RunConfig& cfg, Execution exec = Execution::Parallel);

nlohmann::json report_to_json(const CheckReport& r);
CheckReport report_from_json(const nlohmann::json& j);

/// Full report document. Everything except `timing` is a deterministic function
/// of the configuration.
nlohmann::json emit_report(const RunConfig& cfg, const RunResult& result);

/// Runs, writes the report to cfg.output (report.json when unset, `out` for "-")
/// and a one-line-per-check summary to `out` (to `err` when the report goes to `out`).
/// Errors are written to `err` and map to kConfigOrDomainError.
int verify_command(RunConfig cfg, std::ostream& out, std::ostream& err);

}  // namespace cotlift::cli
