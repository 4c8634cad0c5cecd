#include "gradeflow/report.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "gradeflow/field.hpp"

namespace gradeflow {
namespace {

const char* yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

void write_report(const VerificationReport& r, std::ostream& out, const std::string& prefix) {
  auto line = [&](const std::string& key, const std::string& value) { out << prefix << key << '=' << value << '\n'; };
  line("family", r.family_key);
  line("case", r.family_label);
  line("psi", r.psi_text);
  line("psi_real", yes_no(r.psi_real));
  line("vorticity_consistent", yes_no(r.vorticity_consistent));
  line("residual_real", yes_no(r.residual_real));
  line("residual_is_zero", yes_no(r.residual_is_zero));
  line("symbolic_residual", to_string(r.symbolic_residual));
  if (r.discovered_constraint) line("discovered_constraint", to_string(*r.discovered_constraint));
  for (const auto& p : r.probes) line("probe." + p.name, p.eliminates ? "eliminates" : "persists");
  if (!r.probes.empty()) line("eliminating_constraints", r.eliminating_constraints());
  line("published_form_residual_is_zero", yes_no(r.published_residual_is_zero));
  line("published_form_residual", to_string(r.published_residual));
  for (std::size_t k = 0; k < r.fd_orders.size(); ++k) {
    line("fd_level." + std::to_string(k), format_real(r.fd_orders[k].h) + "," + format_real(r.fd_orders[k].error_norm));
  }
  line("fd_exact", yes_no(r.fd_exact));
  line("fd_convergence_order", std::isnan(r.fd_convergence_order) ? "exact" : format_real(r.fd_convergence_order));
  line("fd_order_ok", yes_no(r.fd_order_ok));
  line("fd_richardson_gap", format_real(r.fd_richardson_gap));
  line("fd_agrees", yes_no(r.fd_agrees));
  if (r.ansatz_check) {
    line("ansatz.residual_is_zero", yes_no(r.ansatz_check->residual_is_zero));
    line("ansatz.matches_closed_form", yes_no(r.ansatz_check->matches_closed_form));
    line("ansatz.residual", to_string(r.ansatz_check->residual));
  }
  for (const auto& f : r.flags) line("flag", f);
  line("oracles_agree", yes_no(r.oracles_agree()));
}

std::string serialize(const VerificationReport& r, const std::string& prefix) {
  std::ostringstream os;
  write_report(r, os, prefix);
  return os.str();
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

}  // namespace gradeflow
