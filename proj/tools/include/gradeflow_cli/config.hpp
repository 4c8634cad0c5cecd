#pragma once

// Run configuration for the command-line tool: a `key = value` grammar with
// `#` comments, complex literals, and a grid spec "x_min:x_max:nx, y_min:y_max:ny".

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gradeflow/catalog.hpp"
#include "gradeflow/field.hpp"
#include "gradeflow/verifier.hpp"

namespace gradeflow::cli {

/// Parse or validation failure; `line` is 1-based, 0 when not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0);
  int line() const { return line_; }

 private:
  int line_;
};

struct RunConfig {
  std::string command;                        // list | show | verify | sample | render | report
  std::optional<std::string> family;          // catalog family key
  std::optional<int> figure;                  // 1..7
  std::map<std::string, ExactComplex> params; // family parameter overrides
  std::map<std::string, Rational> constants;  // mu, rho, alpha1, alpha2, beta3, lambda
  std::optional<std::string> variant;         // linear_imag only: cubic | quadratic
  std::optional<Grid> grid;
  std::optional<int> levels;
  std::optional<std::string> out;
  std::optional<std::string> csv;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  std::optional<Rational> perturb;            // adds eps z zbar (z + zbar) to psi

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

const std::vector<std::string>& command_names();

/// One family parameter and whether it may carry an imaginary part.
struct ParamSpec {
  std::string name;
  bool complex = false;
};

/// Parameters accepted by a family key; throws ConfigError on an unknown key.
std::vector<ParamSpec> family_schema(std::string_view key);

/// Reads and writes family parameters by schema name. Real parameters are
/// returned with zero imaginary part; setting one with a nonzero imaginary
/// part throws ConfigError.
ExactComplex get_param(const SolutionFamily& f, std::string_view name);
void set_param(SolutionFamily& f, std::string_view name, const ExactComplex& value);

/// "name=value" pairs in schema order, e.g. "m1=1+2 i, m=1".
std::string describe_parameters(const SolutionFamily& f);
std::string describe_constants(const MaterialConstants& c);

/// Parses the grammar. `command`, when given, supplies or must match the
/// `command` key. Throws ConfigError with the offending line number.
RunConfig parse_config(std::string_view text, const std::optional<std::string>& command = std::nullopt);

/// Text that parse_config maps back to an equal RunConfig.
std::string serialize_config(const RunConfig& config);

/// Grid from "x_min:x_max:nx, y_min:y_max:ny"; throws ConfigError.
Grid parse_grid(std::string_view text);
std::string format_grid(const Grid& g);

/// Family, constants and grid a config denotes, with preset defaults filled in.
struct ResolvedCase {
  SolutionFamily family;
  MaterialConstants constants = MaterialConstants::newtonian();
  Grid grid;
  std::optional<int> figure;
  std::vector<std::string> assumptions;
  std::string notes;
};

/// Throws ConfigError when neither family nor figure is set, when they name
/// different families, or when overrides do not fit the family schema.
ResolvedCase resolve(const RunConfig& config);

/// Relative tolerance: config, then GRADEFLOW_TOL, then the verifier default.
double effective_tolerance(const RunConfig& config);

VerifyOptions verify_options(const RunConfig& config);

}  // namespace gradeflow::cli
