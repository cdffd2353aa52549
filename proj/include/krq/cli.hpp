#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "krq/recurrence.hpp"

namespace krq {

// Process exit statuses shared by the tool and the Python bindings.
enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,
  kExitUsage = 2,
  kExitUncovered = 3,
  kExitIncomplete = 4,  // a budgeted run stopped early; rerun to resume
};

inline constexpr const char* kReportSchema = "krq-report/1";

struct RunConfig {
  std::string lie_type;
  std::vector<int> nodes;  // empty means every node
  int m = 1;               // single index for char/decompose
  std::optional<int> m_max;
  std::string mode = "symbolic";  // symbolic | eval
  int num_points = 3;
  uint64_t seed = 1;
  std::optional<std::filesystem::path> cache_dir;  // falls back to KRQ_CACHE_DIR
  std::string format = "json";                     // json | csv | pretty
  TableVariant table = TableVariant::Printed;
  int truncation = 8;                 // verify-gf
  double budget_seconds = 0;          // verify-bound; 0 means unlimited
  bool conjectural = false;           // verify-lpsf: include the conjectural step-polynomial rows
};

struct RunResult {
  int exit_code = kExitPass;
  std::string output;  // the formatted report
};

// Runs one command. Library errors are mapped to exit codes rather than thrown.
RunResult run(const std::string& cmd, const RunConfig& cfg);

// Full command-line entry point: parses argv, runs, writes the report.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

const std::vector<std::string>& cli_commands();

}  // namespace krq
