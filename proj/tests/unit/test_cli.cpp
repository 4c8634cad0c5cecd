#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "gradeflow_cli/commands.hpp"
#include "gradeflow_cli/config.hpp"
#include "gradeflow_cli/svg.hpp"

using namespace gradeflow;
using namespace gradeflow::cli;

TEST_SUITE("cli") {
  TEST_CASE("config grammar") {
    const RunConfig c = parse_config(
        "# comment\ncommand = verify\nfamily = linear_complex\nm1 = 1+2i\nlambda = 3/10\nm = 1\n"
        "grid = -1:1:11, -2:2:21  # trailing comment\nlevels = 12\n");
    CHECK(c.command == "verify");
    CHECK(c.params.at("m1") == ExactComplex(1, 2));
    CHECK(c.constants.at("lambda") == Rational(3, 10));
    REQUIRE(c.grid);
    CHECK(c.grid->ny == 21);
    const ResolvedCase rc = resolve(c);
    CHECK(std::get<LinearComplex>(rc.family) == std::get<LinearComplex>(figure_preset(2).family));
    CHECK(rc.constants.lambda() == figure_preset(2).constants.lambda());
  }

  TEST_CASE("config errors") {
    CHECK_THROWS_WITH_AS(parse_config(""), "missing command/family", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("command = verify\n"), "missing command/family", ConfigError);
    try {
      parse_config("command = verify\nfamily = linear_complex\nm1 = 1+2j\n");
      FAIL("expected an error");
    } catch (const ConfigError& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).find("malformed complex literal") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("command = verify\nfamily = linear_real\nB = 1+i\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("command = verify\nfamily = linear_real\nm1 = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("command = verify\nfamily = vortex\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("command = fly\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("command = verify\nfigure = 9\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("command = verify\nfigure = 1\nfigure = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("command = verify\nfigure = 2\nbeta3 = 1\nlambda = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("command = verify\nfigure = 2\nvariant = cubic\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("command = render\nfigure = 2\ngrid = 0:1:5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("command = verify\nfigure 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("command = verify\nfigure = 2\n", std::string("render")), ConfigError);
    CHECK_THROWS_AS(resolve(parse_config("command = verify\nfigure = 2\nfamily = log\n")), ConfigError);
  }

  TEST_CASE("config round trip") {
    const RunConfig c = parse_config(
        "command = render\nfigure = 5\nvariant = quadratic\nB = -7/2\nmu = 0.5\nbeta3 = 2\n"
        "grid = -2.5:10:31, 0:8:17\nlevels = 15\nout = fig.svg\ncsv = fig.csv\ntolerance = 1e-7\nseed = 42\n"
        "perturb = 1/1000\n");
    const std::string text = serialize_config(c);
    CHECK(parse_config(text) == c);
    CHECK(serialize_config(parse_config(text)) == text);
  }

  TEST_CASE("tolerance precedence") {
    RunConfig c = parse_config("command = verify\nfigure = 1\n");
    ::unsetenv("GRADEFLOW_TOL");
    CHECK(effective_tolerance(c) == VerifyOptions{}.relative_tolerance);
    ::setenv("GRADEFLOW_TOL", "1e-4", 1);
    CHECK(effective_tolerance(c) == 1e-4);
    c.tolerance = 1e-5;
    CHECK(effective_tolerance(c) == 1e-5);
    ::setenv("GRADEFLOW_TOL", "-3", 1);
    c.tolerance.reset();
    CHECK_THROWS_AS(effective_tolerance(c), ConfigError);
    ::unsetenv("GRADEFLOW_TOL");
  }

  TEST_CASE("family schema and parameter access") {
    const auto schema = family_schema("constant");
    REQUIRE(schema.size() == 6);
    CHECK(schema[1].name == "a1");
    CHECK(schema[1].complex);
    CHECK_FALSE(schema[0].complex);
    SolutionFamily f = family_from_key("log");
    set_param(f, "m6", ExactComplex(3));
    CHECK(get_param(f, "m6") == ExactComplex(3));
    CHECK_THROWS_AS(set_param(f, "m6", ExactComplex(0, 1)), ConfigError);
    CHECK_THROWS_AS(get_param(f, "a1"), ConfigError);
  }

  TEST_CASE("verify exit statuses") {
    CHECK(run_verify(parse_config("command = verify\nfamily = constant\nomega0 = -1\na1 = 1+2i\n")).exit_code ==
          kExitVerified);
    const VerifyOutcome fig1 = run_verify(parse_config("command = verify\nfigure = 1\n"));
    CHECK(fig1.exit_code == kExitVerified);
    CHECK(fig1.verdict == "known_finding");
    CHECK(fig1.text.find("published_constraint=Im(a1)=0\npublished_constraint_holds=false") != std::string::npos);
    CHECK(fig1.text.find("residual_is_zero=false") != std::string::npos);
    const VerifyOutcome bad =
        run_verify(parse_config("command = verify\nfamily = constant\nomega0 = -1\nperturb = 1/1000\n"));
    CHECK(bad.exit_code == kExitResidual);
    CHECK(run_verify(parse_config("command = verify\nfigure = 2\nperturb = 1\n")).exit_code != kExitVerified);
    CHECK(run_verify(parse_config("command = verify\nfamily = linear_real\nB = -2\nlambda = 2\n")).exit_code ==
          kExitResidual);
  }

  TEST_CASE("svg document") {
    CHECK(xml_escape("a<b & \"c\"") == "a&lt;b &amp; &quot;c&quot;");
    CHECK(ramp_color(0, 3) != ramp_color(2, 3));
    ContourSet cs;
    cs.levels = {0.5};
    cs.polylines.push_back({0.5, {{0.0, 0.0}, {1.0, 1.0}}, false});
    const SvgDocument doc = make_svg(cs, Grid{0, 1, 0, 1, 2, 2}, {"caption & more"});
    REQUIRE(doc.polylines.size() == 1);
    // y flipped: data (0, 0) maps to the bottom-left corner of the plot
    CHECK(doc.polylines[0].points[0].y == doctest::Approx(doc.plot_top + doc.plot_height));
    const std::string xml = doc.to_xml();
    CHECK(xml.find("caption &amp; more") != std::string::npos);
    CHECK(xml.find("stroke-width=\"1\"") != std::string::npos);
    CHECK(xml.find("fill=\"none\"") != std::string::npos);
  }

  TEST_CASE("render flat field emits a note") {
    const RenderOutcome r = run_render(parse_config("command = render\nfamily = constant\ngrid = -1:1:11, -1:1:11\n"));
    CHECK(r.flat);
    CHECK(r.svg.polylines.empty());
    CHECK(r.svg.to_xml().find("flat field") != std::string::npos);
  }

  TEST_CASE("render of rigid rotation gives concentric circles") {
    const RenderOutcome r =
        run_render(parse_config("command = render\nfamily = constant\nomega0 = -2\ngrid = -1:1:201, -1:1:201\n"));
    REQUIRE(r.svg.polylines.size() >= 10);
    const double cx = r.svg.plot_left + r.svg.plot_width / 2, cy = r.svg.plot_top + r.svg.plot_height / 2;
    // Circles inside the inscribed disk are complete; larger ones are clipped by the square.
    const double inscribed = r.svg.plot_width / 2;
    std::size_t inside = 0, closed = 0;
    for (const SvgPolyline& p : r.svg.polylines) {
      double lo = 1e300, hi = 0;
      for (const Point2& v : p.points) {
        const double rad = std::hypot(v.x - cx, v.y - cy);
        lo = std::min(lo, rad);
        hi = std::max(hi, rad);
      }
      CHECK((hi - lo) / hi < 0.01);
      if (hi < inscribed - 1) {
        ++inside;
        closed += p.points.front().x == p.points.back().x && p.points.front().y == p.points.back().y;
      }
    }
    CHECK(inside >= 5);
    CHECK(closed == inside);
  }

  TEST_CASE("report determinism and structure") {
    const std::string a = build_report(3, 1);
    CHECK(a == build_report(3, 1));
    std::size_t sections = 0;
    for (std::size_t pos = a.find("\n[family."); pos != std::string::npos; pos = a.find("\n[family.", pos + 1)) {
      ++sections;
    }
    CHECK(sections == 7);
    CHECK(a.find("[errata]") != std::string::npos);
    CHECK(a.find("velocity_display.a2_over_2.u_matches=true") != std::string::npos);
  }

  TEST_CASE("list and show") {
    std::ostringstream out;
    CHECK(cmd_list(out) == 0);
    CHECK(out.str().find("linear_shifted II(iii)") != std::string::npos);
    std::ostringstream shown;
    CHECK(cmd_show(parse_config("command = show\nfamily = product\n"), shown) == 0);
    CHECK(shown.str().find("schema=B:real,t:real") != std::string::npos);
  }
}
