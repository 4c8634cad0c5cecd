#include "gradeflow_cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "gradeflow/contour.hpp"
#include "gradeflow/fd_oracle.hpp"
#include "gradeflow/random_params.hpp"
#include "gradeflow/report.hpp"

namespace gradeflow::cli {
namespace {

constexpr int kDefaultLevels = 12;

const char* yes_no(bool b) { return b ? "true" : "false"; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

/// Human-readable note when the sampling box reaches a singular point of psi.
std::vector<std::string> singular_domain_warnings(const Expression& psi, const Grid& g) {
  const PointwiseEvaluator e = PointwiseEvaluator::from_expression(psi);
  std::vector<std::string> out;
  const bool spans_axis = g.y_min <= 0 && g.y_max >= 0;
  if (e.singular_at_origin && spans_axis && g.x_min <= 0 && g.x_max >= 0) {
    out.push_back("domain contains the singular point z=0; nearby nodes are masked");
  }
  if (e.branch_cut && spans_axis && g.x_min < 0) {
    out.push_back("domain crosses the branch cut on the negative real axis; nodes on it are masked");
  }
  return out;
}

std::string figure_heading(const ResolvedCase& rc) {
  std::string s = rc.figure ? "Figure " + std::to_string(*rc.figure) + ": " : std::string();
  return s + family_key(rc.family) + " " + family_case_label(rc.family);
}

}  // namespace

std::optional<std::string> pinned_constraints(int figure) {
  switch (figure) {
    case 1: return "beta3=0,a1=0";
    case 6: return "beta3=0,m6=0";
    case 2: case 3: case 4: case 5: case 7: return "beta3=0";
    default: return std::nullopt;
  }
}

VerifyOutcome run_verify(const RunConfig& config) {
  const ResolvedCase rc = resolve(config);
  const VerifyOptions options = verify_options(config);
  VerifyOutcome out;
  if (config.perturb) {
    const Expression bump = ExactComplex(*config.perturb) * Expression::z() * Expression::zbar() *
                            (Expression::z() + Expression::zbar());
    const StreamFunction psi(build_psi(rc.family, rc.constants).psi() + bump, "perturbed");
    out.report = verify_stream_function(psi, rc.constants, std::nullopt, options, rc.assumptions);
    out.report.family_key = family_key(rc.family);
    out.report.family_label = family_case_label(rc.family) + " perturbed";
  } else {
    out.report = verify_family(rc.family, rc.constants, options, rc.assumptions);
  }
  const VerificationReport& r = out.report;

  std::ostringstream text;
  if (rc.figure) text << "figure=" << *rc.figure << "\n";
  text << "parameters=" << describe_parameters(rc.family) << "\n";
  text << "constants=" << describe_constants(rc.constants) << "\n";
  const ConstantsVerdict verdict = rc.constants.verdict();
  text << "constants_admissible=" << yes_no(verdict.ok()) << "\n";
  for (const auto& v : verdict.violations) text << "constants_violation=" << to_string(v) << "\n";
  text << "tolerance=" << format_real(options.relative_tolerance) << "\n";
  if (config.perturb) text << "perturbation=" << to_string(*config.perturb) << " z zb (z + zb)\n";
  write_report(r, text);

  const std::optional<std::string> pinned =
      rc.figure && !config.perturb ? pinned_constraints(*rc.figure) : std::nullopt;
  if (!r.oracles_agree()) {
    out.exit_code = kExitOracleFailure;
    out.verdict = "oracle_failure";
  } else if (!r.consistent()) {
    out.exit_code = kExitOracleFailure;
    out.verdict = "inconsistent";
  } else if (r.residual_is_zero) {
    out.exit_code = kExitVerified;
    out.verdict = "verified";
  } else if (pinned && r.eliminating_constraints() == *pinned) {
    out.exit_code = kExitVerified;
    out.verdict = "known_finding";
    text << "known_finding=nonzero residual; eliminated by " << *pinned << "\n";
    if (rc.figure == 1) {
      const bool im_a1 = std::any_of(r.probes.begin(), r.probes.end(),
                                     [](const ConstraintProbe& p) { return p.name == "Im(a1)=0" && p.eliminates; });
      text << "published_constraint=Im(a1)=0\n";
      text << "published_constraint_holds=" << yes_no(im_a1) << "\n";
    }
  } else {
    out.exit_code = kExitResidual;
    out.verdict = "nonzero_residual";
  }
  text << "verdict=" << out.verdict << "\n";
  text << "exit_status=" << out.exit_code << "\n";
  out.text = text.str();
  return out;
}

RenderOutcome run_render(const RunConfig& config) {
  const ResolvedCase rc = resolve(config);
  const StreamFunction psi = build_psi(rc.family, rc.constants);
  RenderOutcome out{SvgDocument{}, sample(psi.psi(), rc.grid), {}, false, {}};
  out.warnings = singular_domain_warnings(psi.psi(), rc.grid);
  const int count = config.levels.value_or(kDefaultLevels);
  if (out.field.valid_count() > 0) out.levels = pick_levels(out.field, count);
  out.flat = out.levels.empty();
  const ContourSet contours = out.flat ? ContourSet{} : marching_squares(out.field, out.levels);

  std::vector<std::string> caption;
  caption.push_back(figure_heading(rc) + ", streamlines psi = const");
  caption.push_back("parameters: " + describe_parameters(rc.family));
  caption.push_back("constants: " + describe_constants(rc.constants));
  caption.push_back("domain: x in [" + format_real(rc.grid.x_min) + ", " + format_real(rc.grid.x_max) + "], y in [" +
                    format_real(rc.grid.y_min) + ", " + format_real(rc.grid.y_max) + "], " +
                    std::to_string(rc.grid.nx) + "x" + std::to_string(rc.grid.ny) + " nodes, " +
                    std::to_string(out.levels.size()) + " levels");
  for (const auto& a : rc.assumptions) caption.push_back("assumed: " + a);
  for (const auto& w : out.warnings) caption.push_back("warning: " + w);
  if (out.flat) caption.push_back("note: flat field, no contour levels");
  out.svg = make_svg(contours, rc.grid, std::move(caption));
  return out;
}

std::string build_report(std::uint64_t seed, int random_draws) {
  std::ostringstream out;
  std::mt19937_64 rng(seed);
  VerifyOptions options;
  options.seed = seed;
  out << "# gradeflow findings\n";
  out << "seed=" << seed << "\n";
  out << "random_draws=" << random_draws << "\n";

  for (int fig = 1; fig <= 7; ++fig) {
    const FigurePreset p = figure_preset(fig);
    const std::string key = family_key(p.family);
    out << "\n[family." << key << "]\n";
    out << "case=" << family_case_label(p.family) << "\n";
    out << "preset.figure=" << fig << "\n";
    out << "preset.parameters=" << describe_parameters(p.family) << "\n";
    out << "preset.constants=" << describe_constants(p.constants) << "\n";
    const VerificationReport preset = verify_family(p.family, p.constants, options, p.assumptions);
    write_report(preset, out, "preset.");
    const auto pinned = pinned_constraints(fig);
    out << "preset.pinned_constraints=" << pinned.value_or("") << "\n";
    out << "preset.pinned_matches=" << yes_no(preset.residual_is_zero || preset.eliminating_constraints() == pinned)
        << "\n";

    const MaterialConstants newtonian = p.constants.with_beta3(0);
    out << "beta3_zero.constants=" << describe_constants(newtonian) << "\n";
    write_report(verify_family(p.family, newtonian, options), out, "beta3_zero.");

    for (int k = 0; k < random_draws; ++k) {
      const SolutionFamily f = random_family(key, rng);
      const MaterialConstants c = random_constants(rng);
      const std::string prefix = "random." + std::to_string(k) + ".";
      out << prefix << "parameters=" << describe_parameters(f) << "\n";
      out << prefix << "constants=" << describe_constants(c) << "\n";
      write_report(verify_family(f, c, options), out, prefix);
    }
  }

  out << "\n[errata]\n";
  {
    const FigurePreset p = figure_preset(1);
    const auto& cv = std::get<ConstantVorticity>(p.family);
    const ConditionResult cond = derive_condition_constant_vorticity(holomorphic_part(p.family, p.constants),
                                                                     cv.omega0, p.constants);
    out << "case_I_condition.residual=" << to_string(cond.residual) << "\n";
    if (cond.factored) out << "case_I_condition.factored=" << to_string(*cond.factored) << "\n";
    out << "case_I_condition.printed_condition=" << to_string(cond.published_condition) << "\n";
    out << "case_I_condition.printed_condition_matches=" << yes_no(cond.matches_published_condition) << "\n";
    for (const ConstraintProbe& probe : probe_constraints(p.family, p.constants)) {
      out << "case_I_condition.probe." << probe.name << "=" << (probe.eliminates ? "eliminates" : "persists")
          << "\n";
    }
  }
  {
    const FigurePreset p = figure_preset(5);
    for (bool quadratic : {false, true}) {
      LinearImag f = std::get<LinearImag>(p.family);
      f.quadratic_variant = quadratic;
      const std::string prefix = std::string("linear_imag_power.") + (quadratic ? "quadratic" : "cubic") + ".";
      const VerificationReport r = verify_family(f, p.constants, options);
      out << prefix << "residual_is_zero=" << yes_no(r.residual_is_zero) << "\n";
      out << prefix << "residual=" << to_string(r.symbolic_residual) << "\n";
      out << prefix << "oracles_agree=" << yes_no(r.oracles_agree()) << "\n";
      out << prefix << "beta3_zero_residual_is_zero="
          << yes_no(verify_family(f, p.constants.with_beta3(0), options).residual_is_zero) << "\n";
    }
  }
  {
    const FigurePreset p = figure_preset(1);
    const auto& cv = std::get<ConstantVorticity>(p.family);
    const Velocity derived = velocity(build_psi(p.family, p.constants));
    for (int d : {3, 2}) {
      const Velocity shown = published_constant_vorticity_velocity(cv, d);
      const std::string prefix = "velocity_display.a2_over_" + std::to_string(d) + ".";
      out << prefix << "u_matches=" << yes_no(shown.u == derived.u) << "\n";
      out << prefix << "v_matches=" << yes_no(shown.v == derived.v) << "\n";
    }
  }
  return out.str();
}

int cmd_list(std::ostream& out) {
  out << "families:\n";
  for (const std::string& key : family_keys()) {
    const SolutionFamily f = family_from_key(key);
    out << "  " << key << " " << family_case_label(f) << " omega=" << to_pretty_string(omega_of(f)) << "\n";
  }
  out << "figures:\n";
  for (int n = 1; n <= 7; ++n) {
    const FigurePreset p = figure_preset(n);
    out << "  " << n << " " << family_key(p.family) << " " << p.notes << " x in [" << format_real(p.x_range.lo)
        << ", " << format_real(p.x_range.hi) << "] y in [" << format_real(p.y_range.lo) << ", "
        << format_real(p.y_range.hi) << "]\n";
  }
  return 0;
}

int cmd_show(const RunConfig& config, std::ostream& out) {
  const ResolvedCase rc = resolve(config);
  const StreamFunction psi = build_psi(rc.family, rc.constants);
  out << "family=" << family_key(rc.family) << "\n";
  out << "case=" << family_case_label(rc.family) << "\n";
  if (rc.figure) out << "figure=" << *rc.figure << "\n";
  out << "parameters=" << describe_parameters(rc.family) << "\n";
  out << "schema=";
  bool first = true;
  for (const ParamSpec& s : family_schema(family_key(rc.family))) {
    out << (first ? "" : ",") << s.name << (s.complex ? ":complex" : ":real");
    first = false;
  }
  out << "\n";
  out << "constants=" << describe_constants(rc.constants) << "\n";
  out << "omega=" << to_pretty_string(omega_of(rc.family)) << "\n";
  out << "psi=" << to_pretty_string(psi.psi()) << "\n";
  out << "psi_exact=" << to_string(psi.psi()) << "\n";
  for (const auto& a : rc.assumptions) out << "assumed=" << a << "\n";
  return 0;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const VerifyOutcome v = run_verify(config);
  if (config.out) {
    write_text(*config.out, v.text);
    out << "verdict=" << v.verdict << "\n";
  } else {
    out << v.text;
  }
  if (v.exit_code != kExitVerified) {
    err << "verification failed (" << v.verdict << "): residual " << to_pretty_string(v.report.symbolic_residual)
        << "\n";
  }
  return v.exit_code;
}

int cmd_sample(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const ResolvedCase rc = resolve(config);
  const StreamFunction psi = build_psi(rc.family, rc.constants);
  for (const auto& w : singular_domain_warnings(psi.psi(), rc.grid)) err << "warning: " << w << "\n";
  const ScalarField field = sample(psi.psi(), rc.grid);
  std::ostringstream csv;
  export_csv(field, csv);
  if (config.out) {
    write_text(*config.out, csv.str());
  } else {
    out << csv.str();
  }
  return 0;
}

int cmd_render(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const RenderOutcome r = run_render(config);
  for (const auto& w : r.warnings) err << "warning: " << w << "\n";
  if (r.flat) err << "note: flat field, nothing to contour\n";
  const std::string xml = r.svg.to_xml();
  if (config.out) {
    write_text(*config.out, xml);
  } else {
    out << xml;
  }
  if (config.csv) {
    std::ostringstream csv;
    export_csv(r.field, csv);
    write_text(*config.csv, csv.str());
  }
  return 0;
}

int cmd_report(const RunConfig& config, std::ostream& out, std::ostream&) {
  if (!config.out) throw ConfigError("report needs an output directory");
  std::filesystem::create_directories(*config.out);
  const std::string path = (std::filesystem::path(*config.out) / "report.txt").string();
  write_text(path, build_report(config.seed.value_or(1)));
  out << "wrote " << path << "\n";
  return 0;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::string& c = config.command;
  if (c == "list") return cmd_list(out);
  if (c == "show") return cmd_show(config, out);
  if (c == "verify") return cmd_verify(config, out, err);
  if (c == "sample") return cmd_sample(config, out, err);
  if (c == "render") return cmd_render(config, out, err);
  if (c == "report") return cmd_report(config, out, err);
  throw ConfigError("missing command/family");
}

}  // namespace gradeflow::cli
