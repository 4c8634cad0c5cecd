#pragma once

// Command implementations. Each writes its primary output to the configured
// path (or `out`), diagnostics to `err`, and returns the process exit status.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gradeflow/field.hpp"
#include "gradeflow/verifier.hpp"
#include "gradeflow_cli/config.hpp"
#include "gradeflow_cli/svg.hpp"

namespace gradeflow::cli {

/// Exit statuses of `verify`.
inline constexpr int kExitVerified = 0;
inline constexpr int kExitResidual = 1;
inline constexpr int kExitOracleFailure = 2;
/// Usage or configuration errors.
inline constexpr int kExitUsage = 64;

/// Eliminating constraints the engine establishes for a figure preset whose
/// residual is nonzero, e.g. "beta3=0,a1=0" for figure 1.
std::optional<std::string> pinned_constraints(int figure);

struct VerifyOutcome {
  int exit_code = kExitResidual;
  std::string verdict;  // verified | known_finding | nonzero_residual | oracle_failure | inconsistent
  VerificationReport report;
  std::string text;     // key=value document
};

VerifyOutcome run_verify(const RunConfig& config);

struct RenderOutcome {
  SvgDocument svg;
  ScalarField field;
  std::vector<double> levels;
  bool flat = false;
  std::vector<std::string> warnings;
};

RenderOutcome run_render(const RunConfig& config);

/// Consolidated findings: seven family sections and an errata section.
std::string build_report(std::uint64_t seed, int random_draws = 3);

int cmd_list(std::ostream& out);
int cmd_show(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sample(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_render(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches on config.command.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace gradeflow::cli
