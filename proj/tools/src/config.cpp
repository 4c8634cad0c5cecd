#include "gradeflow_cli/config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <sstream>

namespace gradeflow::cli {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

const std::vector<std::string>& constant_names() {
  static const std::vector<std::string> names{"mu", "rho", "alpha1", "alpha2", "beta3", "lambda"};
  return names;
}

bool contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

/// Mutable view of one family member.
struct FieldRef {
  const char* name;
  Rational* real = nullptr;
  ExactComplex* cplx = nullptr;
};

std::vector<FieldRef> fields_of(SolutionFamily& f) {
  struct Visitor {
    std::vector<FieldRef> operator()(ConstantVorticity& p) const {
      return {{"omega0", &p.omega0}, {"a1", nullptr, &p.a1}, {"a2", nullptr, &p.a2},
              {"a3", nullptr, &p.a3}, {"a4", nullptr, &p.a4}, {"a", &p.a}};
    }
    std::vector<FieldRef> operator()(LinearComplex& p) const { return {{"m1", nullptr, &p.m1}, {"m", &p.m}}; }
    std::vector<FieldRef> operator()(LinearRealB& p) const { return {{"B", &p.B}, {"n", &p.n}}; }
    std::vector<FieldRef> operator()(LinearShifted& p) const { return {{"D", &p.D}, {"E", &p.E}, {"q", &p.q}}; }
    std::vector<FieldRef> operator()(LinearImag& p) const { return {{"B", &p.B}, {"r", &p.r}}; }
    std::vector<FieldRef> operator()(LogVorticity& p) const {
      return {{"B", &p.B}, {"D1", &p.D1}, {"m6", &p.m6}, {"s", &p.s}};
    }
    std::vector<FieldRef> operator()(ProductVorticity& p) const { return {{"B", &p.B}, {"t", &p.t}}; }
  };
  return std::visit(Visitor{}, f);
}

FieldRef find_field(SolutionFamily& f, std::string_view name) {
  for (const FieldRef& r : fields_of(f)) {
    if (name == r.name) return r;
  }
  throw ConfigError("family '" + family_key(f) + "' has no parameter '" + std::string(name) + "'");
}

template <typename T>
T parse_integer(const std::string& value, const std::string& key, int line) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("'" + key + "' expects an integer, got '" + value + "'", line);
  }
  return out;
}

double parse_double(const std::string& value, const std::string& what, int line) {
  if (value.empty()) throw ConfigError(what + " expects a number", line);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError(what + " expects a number, got '" + value + "'", line);
  }
  return v;
}

Rational parse_real_literal(const std::string& value, const std::string& key, int line) {
  try {
    return parse_rational(value);
  } catch (const std::invalid_argument&) {
    throw ConfigError("'" + key + "' expects a real number, got '" + value + "'", line);
  }
}

}  // namespace

ConfigError::ConfigError(const std::string& message, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"list", "show", "verify", "sample", "render", "report"};
  return names;
}

std::vector<ParamSpec> family_schema(std::string_view key) {
  SolutionFamily f;
  try {
    f = family_from_key(key);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  std::vector<ParamSpec> out;
  for (const FieldRef& r : fields_of(f)) out.push_back({r.name, r.cplx != nullptr});
  return out;
}

ExactComplex get_param(const SolutionFamily& f, std::string_view name) {
  SolutionFamily copy = f;
  const FieldRef r = find_field(copy, name);
  return r.cplx ? *r.cplx : ExactComplex(*r.real);
}

void set_param(SolutionFamily& f, std::string_view name, const ExactComplex& value) {
  const FieldRef r = find_field(f, name);
  if (r.cplx) {
    *r.cplx = value;
    return;
  }
  if (!value.is_real()) {
    throw ConfigError("parameter '" + std::string(name) + "' of family '" + family_key(f) + "' must be real");
  }
  *r.real = value.re();
}

std::string describe_parameters(const SolutionFamily& f) {
  SolutionFamily copy = f;
  std::string out;
  for (const FieldRef& r : fields_of(copy)) {
    if (!out.empty()) out += ", ";
    out += std::string(r.name) + "=" + (r.cplx ? to_string(*r.cplx) : to_string(*r.real));
  }
  if (const auto* li = std::get_if<LinearImag>(&f)) out += std::string(", variant=") + (li->quadratic_variant ? "quadratic" : "cubic");
  return out;
}

std::string describe_constants(const MaterialConstants& c) {
  return "mu=" + to_string(c.mu()) + ", rho=" + to_string(c.rho()) + ", alpha1=" + to_string(c.alpha1()) +
         ", alpha2=" + to_string(c.alpha2()) + ", beta3=" + to_string(c.beta3());
}

Grid parse_grid(std::string_view text) {
  const std::string s(text);
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ConfigError("grid expects 'x_min:x_max:nx, y_min:y_max:ny'");
  auto axis = [](const std::string& part, const char* name) {
    const std::string t = trim(part);
    const auto c1 = t.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : t.find(':', c1 + 1);
    if (c2 == std::string::npos || t.find(':', c2 + 1) != std::string::npos) {
      throw ConfigError(std::string("grid axis ") + name + " expects min:max:n, got '" + t + "'");
    }
    const double lo = parse_double(trim(t.substr(0, c1)), std::string("grid ") + name + "_min", 0);
    const double hi = parse_double(trim(t.substr(c1 + 1, c2 - c1 - 1)), std::string("grid ") + name + "_max", 0);
    const int n = parse_integer<int>(trim(t.substr(c2 + 1)), std::string("grid n") + name, 0);
    return std::tuple{lo, hi, n};
  };
  const auto [x0, x1, nx] = axis(s.substr(0, comma), "x");
  const auto [y0, y1, ny] = axis(s.substr(comma + 1), "y");
  Grid g{x0, x1, y0, y1, nx, ny};
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return g;
}

std::string format_grid(const Grid& g) {
  return format_real(g.x_min) + ":" + format_real(g.x_max) + ":" + std::to_string(g.nx) + ", " +
         format_real(g.y_min) + ":" + format_real(g.y_max) + ":" + std::to_string(g.ny);
}

RunConfig parse_config(std::string_view text, const std::optional<std::string>& command) {
  RunConfig cfg;
  std::map<std::string, int> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string body = trim(raw);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + body + "'", line);
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line);
    if (value.empty()) throw ConfigError("missing value for '" + key + "'", line);
    if (!seen.emplace(key, line).second) {
      throw ConfigError("duplicate key '" + key + "' (first on line " + std::to_string(seen[key]) + ")", line);
    }
    try {
      if (key == "command") {
        if (!contains(command_names(), value)) throw ConfigError("unknown command '" + value + "'", line);
        cfg.command = value;
      } else if (key == "family") {
        family_schema(value);
        cfg.family = value;
      } else if (key == "figure") {
        const int n = parse_integer<int>(value, key, line);
        if (n < 1 || n > 7) throw ConfigError("figure must be in 1..7", line);
        cfg.figure = n;
      } else if (contains(constant_names(), key)) {
        cfg.constants[key] = parse_real_literal(value, key, line);
      } else if (key == "variant") {
        if (value != "cubic" && value != "quadratic") {
          throw ConfigError("variant must be 'cubic' or 'quadratic'", line);
        }
        cfg.variant = value;
      } else if (key == "grid") {
        cfg.grid = parse_grid(value);
      } else if (key == "levels") {
        const int n = parse_integer<int>(value, key, line);
        if (n < 1) throw ConfigError("levels must be >= 1", line);
        cfg.levels = n;
      } else if (key == "out") {
        cfg.out = value;
      } else if (key == "csv") {
        cfg.csv = value;
      } else if (key == "tolerance") {
        const double t = parse_double(value, key, line);
        if (!(t > 0)) throw ConfigError("tolerance must be positive", line);
        cfg.tolerance = t;
      } else if (key == "seed") {
        cfg.seed = parse_integer<std::uint64_t>(value, key, line);
      } else if (key == "perturb") {
        cfg.perturb = parse_real_literal(value, key, line);
      } else {
        ExactComplex v;
        try {
          v = parse_complex(value);
        } catch (const std::invalid_argument& e) {
          throw ConfigError(e.what(), line);
        }
        cfg.params[key] = v;
      }
    } catch (const ConfigError& e) {
      if (e.line() > 0) throw;
      throw ConfigError(e.what(), line);
    }
  }

  if (command) {
    if (!contains(command_names(), *command)) throw ConfigError("unknown command '" + *command + "'");
    if (!cfg.command.empty() && cfg.command != *command) {
      throw ConfigError("config command '" + cfg.command + "' does not match '" + *command + "'",
                        seen["command"]);
    }
    cfg.command = *command;
  }
  const bool needs_case = cfg.command != "list" && cfg.command != "report";
  if (cfg.command.empty() || (needs_case && !cfg.family && !cfg.figure)) {
    throw ConfigError("missing command/family");
  }
  if (cfg.constants.count("beta3") && cfg.constants.count("lambda")) {
    throw ConfigError("set either beta3 or lambda, not both", std::max(seen["beta3"], seen["lambda"]));
  }

  // Type-check overrides against the selected family's schema.
  std::optional<std::string> key = cfg.family;
  if (!key && cfg.figure) key = family_key(figure_preset(*cfg.figure).family);
  if (key) {
    const auto schema = family_schema(*key);
    for (const auto& [name, value] : cfg.params) {
      const auto it = std::find_if(schema.begin(), schema.end(), [&](const ParamSpec& p) { return p.name == name; });
      if (it == schema.end()) throw ConfigError("unknown key '" + name + "' for family '" + *key + "'", seen[name]);
      if (!it->complex && !value.is_real()) {
        throw ConfigError("parameter '" + name + "' of family '" + *key + "' must be real", seen[name]);
      }
    }
    if (cfg.variant && *key != "linear_imag") {
      throw ConfigError("variant applies to family 'linear_imag' only", seen["variant"]);
    }
  } else {
    if (!cfg.params.empty()) {
      throw ConfigError("unknown key '" + cfg.params.begin()->first + "'", seen[cfg.params.begin()->first]);
    }
    if (cfg.variant) throw ConfigError("variant applies to family 'linear_imag' only", seen["variant"]);
  }
  return cfg;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "command = " << c.command << "\n";
  if (c.figure) out << "figure = " << *c.figure << "\n";
  if (c.family) out << "family = " << *c.family << "\n";
  if (c.variant) out << "variant = " << *c.variant << "\n";
  for (const auto& [k, v] : c.params) out << k << " = " << to_string(v) << "\n";
  for (const auto& [k, v] : c.constants) out << k << " = " << to_string(v) << "\n";
  if (c.grid) out << "grid = " << format_grid(*c.grid) << "\n";
  if (c.levels) out << "levels = " << *c.levels << "\n";
  if (c.out) out << "out = " << *c.out << "\n";
  if (c.csv) out << "csv = " << *c.csv << "\n";
  if (c.tolerance) out << "tolerance = " << format_real(*c.tolerance) << "\n";
  if (c.seed) out << "seed = " << *c.seed << "\n";
  if (c.perturb) out << "perturb = " << to_string(*c.perturb) << "\n";
  return out.str();
}

ResolvedCase resolve(const RunConfig& config) {
  ResolvedCase rc;
  if (config.figure) {
    const FigurePreset p = figure_preset(*config.figure);
    if (config.family && *config.family != family_key(p.family)) {
      throw ConfigError("figure " + std::to_string(*config.figure) + " shows family '" + family_key(p.family) +
                        "', not '" + *config.family + "'");
    }
    rc.family = p.family;
    rc.constants = p.constants;
    rc.grid = Grid{p.x_range.lo, p.x_range.hi, p.y_range.lo, p.y_range.hi, 201, 201};
    rc.figure = p.figure_id;
    rc.assumptions = p.assumptions;
    rc.notes = p.notes;
  } else if (config.family) {
    rc.family = family_from_key(*config.family);
    rc.grid = Grid{-1, 1, -1, 1, 201, 201};
  } else {
    throw ConfigError("missing command/family");
  }
  for (const auto& [name, value] : config.params) set_param(rc.family, name, value);
  if (config.variant) std::get<LinearImag>(rc.family).quadratic_variant = *config.variant == "quadratic";

  MaterialConstants& c = rc.constants;
  for (const auto& [name, v] : config.constants) {
    if (name == "mu") c = c.with_mu(v);
    if (name == "alpha1") c = c.with_alpha1(v);
    if (name == "alpha2") c = c.with_alpha2(v);
    if (name == "beta3") c = c.with_beta3(v);
  }
  if (auto it = config.constants.find("rho"); it != config.constants.end()) {
    if (sgn(it->second) <= 0) throw ConfigError("rho must be positive");
    c = c.with_rho(it->second);
  }
  if (auto it = config.constants.find("lambda"); it != config.constants.end()) c = c.with_beta3(it->second * c.rho());
  if (config.grid) rc.grid = *config.grid;
  try {
    check_family(rc.family);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return rc;
}

double effective_tolerance(const RunConfig& config) {
  if (config.tolerance) return *config.tolerance;
  if (const char* env = std::getenv("GRADEFLOW_TOL"); env && *env) {
    const double t = parse_double(env, "GRADEFLOW_TOL", 0);
    if (!(t > 0)) throw ConfigError("GRADEFLOW_TOL must be positive");
    return t;
  }
  return VerifyOptions{}.relative_tolerance;
}

VerifyOptions verify_options(const RunConfig& config) {
  VerifyOptions o;
  o.relative_tolerance = effective_tolerance(config);
  if (config.seed) o.seed = *config.seed;
  return o;
}

}  // namespace gradeflow::cli
