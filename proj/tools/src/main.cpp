#include <cctype>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "gradeflow_cli/commands.hpp"

namespace {

using gradeflow::cli::ConfigError;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

/// Config file text with lines for overridden keys blanked (so line numbers
/// still point into the file), followed by the command-line overrides.
std::string merge(const std::string& file_text, const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::set<std::string> keys;
  for (const auto& kv : overrides) keys.insert(kv.first);
  std::istringstream in(file_text);
  std::string line, out;
  while (std::getline(in, line)) {
    std::string body = line.substr(0, line.find('#'));
    const auto eq = body.find('=');
    std::string key = eq == std::string::npos ? "" : body.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t\r") + 1);
    out += keys.count(key) ? "\n" : line + "\n";
  }
  for (const auto& [k, v] : overrides) out += k + " = " + v + "\n";
  return out;
}

struct Options {
  std::string config_path;
  std::string family;
  int figure = 0;
  std::string out;
  std::string csv;
  int levels = 0;
  std::uint64_t seed = 0;
  std::string perturb;
  std::vector<std::string> sets;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact plane flows of a third-grade fluid: construct, verify, render"};
  app.require_subcommand(1);
  Options o;

  auto add_case = [&](CLI::App* sub, bool family_flag = true) {
    sub->add_option("--config", o.config_path, "Config file (key = value lines)");
    sub->add_option("--figure", o.figure, "Figure preset 1..7")->check(CLI::Range(1, 7));
    if (family_flag) sub->add_option("--family", o.family, "Family key");
    sub->add_option("--set", o.sets, "Parameter or constant override key=value");
  };

  app.add_subcommand("list", "List families and figure presets");
  auto* show = app.add_subcommand("show", "Print a family's stream function");
  show->add_option("key", o.family, "Family key or figure number");
  add_case(show, false);
  auto* verify = app.add_subcommand("verify", "Verify a family or preset against the governing equation");
  add_case(verify);
  verify->add_option("--seed", o.seed, "Seed for FD sample points");
  verify->add_option("--out", o.out, "Write the report here instead of stdout");
  verify->add_option("--perturb", o.perturb, "Add eps z zbar (z + zbar) to psi");
  auto* sample = app.add_subcommand("sample", "Sample psi on the grid as CSV");
  add_case(sample);
  sample->add_option("--out", o.out, "CSV output path");
  auto* render = app.add_subcommand("render", "Render streamlines to SVG");
  add_case(render);
  render->add_option("--out", o.out, "SVG output path");
  render->add_option("--csv", o.csv, "Also write the psi samples as CSV");
  render->add_option("--levels", o.levels, "Number of contour levels")->check(CLI::PositiveNumber);
  auto* report = app.add_subcommand("report", "Consolidated findings document");
  report->add_option("--out", o.out, "Output directory")->required();
  report->add_option("--seed", o.seed, "Seed for randomized parameter draws");

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();
  const CLI::App* sub = app.get_subcommands().front();

  try {
    std::vector<std::pair<std::string, std::string>> overrides;
    auto given = [&](const char* name) { return sub->get_option_no_throw(name) && sub->count(name) > 0; };
    const bool key_is_figure = command == "show" && o.family.size() == 1 && std::isdigit(o.family[0]);
    if (key_is_figure) {
      overrides.emplace_back("figure", o.family);
    } else if (!o.family.empty()) {
      overrides.emplace_back("family", o.family);
    }
    if (given("--figure")) overrides.emplace_back("figure", std::to_string(o.figure));
    if (given("--out")) overrides.emplace_back("out", o.out);
    if (given("--csv")) overrides.emplace_back("csv", o.csv);
    if (given("--levels")) overrides.emplace_back("levels", std::to_string(o.levels));
    if (given("--seed")) overrides.emplace_back("seed", std::to_string(o.seed));
    if (given("--perturb")) overrides.emplace_back("perturb", o.perturb);
    for (const std::string& kv : o.sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
      overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
    }
    const std::string text = merge(o.config_path.empty() ? "" : read_file(o.config_path), overrides);
    const auto config = gradeflow::cli::parse_config(text, command);
    return gradeflow::cli::run(config, std::cout, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gradeflow::cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gradeflow::cli::kExitOracleFailure;
  }
}
