#pragma once

#include "stripconf/serialize.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace stripconf::cli {

enum class Format { table, json };

struct RunConfig {
  std::string command;  // betti, verify, reduce, stability, basis
  std::optional<std::size_t> n, k, d, i;
  std::optional<Weight> w;
  std::string style = "AMW";
  std::string scope;
  std::string expression;
  std::optional<std::string> act;
  std::optional<std::size_t> quotient;
  std::size_t max_labels = 5;
  std::optional<std::filesystem::path> cache_dir;
  bool use_cache = true;
  Format format = Format::table;
  std::uint64_t max_cells = Guard{}.max_cells;
  bool timestamp = true;
};

enum ExitCode : int { ok = 0, verification_failed = 1, usage_error = 2, resource_refused = 3 };

struct CommandResult {
  int exit_code = ok;
  std::string output;  // stdout
  std::string error;   // stderr
};

/// Runs one command; every library error is mapped to an exit code.
CommandResult run(const RunConfig& config);

CommandResult cmd_betti(const RunConfig& config);
CommandResult cmd_verify(const RunConfig& config);
CommandResult cmd_reduce(const RunConfig& config);
CommandResult cmd_stability(const RunConfig& config);
CommandResult cmd_basis(const RunConfig& config);

}  // namespace stripconf::cli
