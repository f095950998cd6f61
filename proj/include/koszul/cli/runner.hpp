#pragma once

// Executes a validated script and assembles the JSON report.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "koszul/cli/script.hpp"

namespace koszul::cli {

inline constexpr const char* kToolName = "koszul-lab";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchemaId = "koszul-lab/report";
inline constexpr int kSchemaVersion = 1;

enum ExitCode { exit_ok = 0, exit_fails = 1, exit_usage = 2, exit_budget = 3 };

struct RunOptions {
  std::optional<std::size_t> degree;   // overrides per-check defaults
  std::size_t threads = 1;
  std::optional<std::uint64_t> budget; // caps subspaces, bases and graph vertices
  bool timings = false;                // elapsed_ms per check (breaks byte stability)
  std::optional<std::string> dot_dir;  // write every PBW graph here
  std::string script_name;
};

struct RunResult {
  nlohmann::ordered_json report;
  int exit_code = exit_ok;
  std::vector<std::string> log;  // one human-readable line per check
  std::vector<std::string> json_paths;  // from `emit json(...)`
};

/// Parse, validate and run. Syntax and semantic errors give exit 2 with the
/// error recorded in the report.
RunResult run_text(std::string_view text, const RunOptions& opts);
RunResult run(const Script& script, const RunOptions& opts);

/// Serialized report with a trailing newline; identical inputs give
/// identical bytes.
std::string dump_report(const nlohmann::ordered_json& report);

}  // namespace koszul::cli
