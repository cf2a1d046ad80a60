#pragma once

// Batch orchestration: script discovery, skip lists, the per-script
// pipeline and the aggregate report. Also hosts the command-line entry.

#include "wrapforge/diagnostics.hpp"
#include "wrapforge/generator.hpp"
#include "wrapforge/linter.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wrapforge {

class IOFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Script files directly under each root, sorted lexicographically. A file
/// counts as a script when it ends in ".py" or has a python shebang.
std::vector<std::filesystem::path> discover_scripts(const std::vector<std::filesystem::path> &roots);

/// One tool name per line, '#' comments allowed.
std::set<std::string> read_skip_list(const std::filesystem::path &skip_file);

struct SkipPartition {
  std::vector<std::filesystem::path> kept;
  std::vector<std::filesystem::path> skipped;
};

SkipPartition apply_skip_list(const std::vector<std::filesystem::path> &paths,
                              const std::set<std::string> &names, Diagnostics &diag);
SkipPartition apply_skip_list(const std::vector<std::filesystem::path> &paths,
                              const std::filesystem::path &skip_file, Diagnostics &diag);

struct ScriptFailure {
  std::string tool_name;
  std::string kind; // syntax, no_parser, dynamic, classification, manifest, render, lint, io
  std::string message;
};

struct ScriptSuccess {
  std::string tool_name;
  std::filesystem::path wrapper_path;
  std::vector<Finding> findings;
};

struct BatchReport {
  std::size_t total_scripts{0};
  std::vector<std::string> skipped;
  std::vector<ScriptSuccess> succeeded;
  std::vector<ScriptFailure> failed;
  std::vector<std::string> warnings; // "tool: message"

  bool accounting_holds() const {
    return total_scripts == skipped.size() + succeeded.size() + failed.size();
  }
  std::string to_text() const;
};

struct BatchOptions {
  std::vector<std::filesystem::path> inputs;
  std::optional<std::filesystem::path> skip_list;
  GeneratorConfig config;
};

/// Runs the whole pipeline. Per-script problems land in the report;
/// configuration problems (bad tables, unreadable roots) throw.
BatchReport run_batch(const BatchOptions &options);

/// Command-line entry point; returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace wrapforge
