#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "gradeflow/verifier.hpp"

namespace gradeflow {

/// One finding per line as `key=value`, keys prefixed with `prefix` (e.g.
/// "fig3."). Expressions use the exact serialized form; reals use %.17g.
void write_report(const VerificationReport& r, std::ostream& out, const std::string& prefix = "");
std::string serialize(const VerificationReport& r, const std::string& prefix = "");

/// Reads `key=value` lines (blank lines, '#' comments and `[section]`
/// headers skipped). A repeated key keeps the last value.
std::map<std::string, std::string> parse_key_values(std::istream& in);

}  // namespace gradeflow
