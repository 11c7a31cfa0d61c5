#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "boxprod/boxgroup.hpp"

namespace boxprod {

struct JobSpec {
  std::string m_spec;
  std::string n_spec;
  std::size_t depth = 6;
  std::size_t margin = 2;
  std::uint64_t seed = 1;
  /// Random members per property test.
  std::size_t battery = 100;
  /// Empty for standard output.
  std::string out;
  std::string format = "json";
  /// export-dot only: tree, orbital, quotient or wreath-orbital.
  std::string target = "tree";
};

/// Parsed groups of a job, after the job invariants were checked.
struct ParsedJob {
  PermGroup M, N;
};

/// Throws InputError when depth < 2 * margin, a degree is below two, the
/// format or target is unknown; ParseError on malformed group specs.
ParsedJob validate(const JobSpec& job);

struct JobResult {
  nlohmann::json report;
  /// Every verification that ran passed.
  bool passed = true;
  /// export-dot output; empty otherwise.
  std::string dot;
};

const std::vector<std::string>& subcommands();

/// Runs one subcommand. Throws InputError for an unknown subcommand.
JobResult run_job(const std::string& command, const JobSpec& job);

/// The full verification battery on a prepared context.
JobResult analyze_context(const BoxContext& ctx, const JobSpec& job);

/// Indented key: value rendering of a JSON document.
std::string render_text(const nlohmann::json& j);

/// The report in the job's format, or the DOT text for export-dot.
std::string render(const JobResult& result, const JobSpec& job);

}  // namespace boxprod
