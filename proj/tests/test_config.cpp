#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <cmath>
#include <string>

#include "ptdirac/config.hpp"

using namespace ptdirac;
using namespace ptdirac::cli;

namespace {

const std::string minimal = R"(
[grid]
x_min = -5
x_max = 5
n_points = 64
boundary = dirichlet

[mass]
family = constant
)";

std::string error_of(const std::string& text, const std::filesystem::path& base = ".") {
    try {
        (void)parse_config_text(text, base);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("ptdirac_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("minimal config gets the documented defaults") {
    const RunConfig c = parse_config_text(minimal);
    CHECK(c.scheme == DiracScheme::central_wilson);
    CHECK(c.wilson_r == 1.0);
    CHECK(c.tol == 1e-9);
    CHECK(c.max_pairs == 20);
    CHECK(c.reality_tol == 1e-8);
    CHECK(c.pt_tol == 1e-12);
    CHECK(c.identity_tol < 0.0);
    CHECK(c.balance_states == 6);
    CHECK_FALSE(c.window);
    CHECK_FALSE(c.strict_pt);
    CHECK(c.format == OutputFormat::both);
    CHECK(c.entries.at("solver.scheme") == "central_wilson");
    CHECK(c.entries.size() == config_keys().size());
    CHECK(c.v_t.kind == ChannelSpec::Kind::zero);
}

TEST_CASE("n_points below 8 cites the invariant") {
    std::string text = minimal;
    text.replace(text.find("n_points = 64"), 13, "n_points = 4");
    CHECK(contains(error_of(text), "n_points must be >= 8"));
}

TEST_CASE("unknown key names the nearest valid key") {
    const std::string e = error_of(minimal + "[solver]\nwilsonr = 1\n");
    CHECK(contains(e, "solver.wilsonr"));
    CHECK(contains(e, "solver.wilson_r"));
    CHECK(contains(error_of(minimal + "[solvr]\ntol = 1\n"), "[solver]"));
}

TEST_CASE("missing mandatory keys are listed in one error") {
    const std::string e = error_of("[grid]\nx_min = 0\n");
    for (const char* k : {"grid.x_max", "grid.n_points", "grid.boundary", "mass.family"}) CHECK(contains(e, k));
    CHECK_FALSE(contains(e, "grid.x_min"));
}

TEST_CASE("value errors are collected together") {
    std::string text = minimal + "[solver]\ntol = -1\nscheme = upwind\nmax_pairs = two\n";
    text.replace(text.find("x_max = 5"), 9, "x_max = -6");
    const std::string e = error_of(text);
    CHECK(contains(e, "solver.tol must be > 0"));
    CHECK(contains(e, "solver.scheme"));
    CHECK(contains(e, "solver.max_pairs"));
    CHECK(contains(e, "x_min < x_max"));
}

TEST_CASE("syntax errors") {
    CHECK(contains(error_of("x = 1\n" + minimal), "outside of any section"));
    CHECK(contains(error_of(minimal + "[grid]\nx_min = 1\n"), "duplicate key"));
    CHECK(contains(error_of(minimal + "[solver\n"), "malformed section"));
    CHECK(contains(error_of(minimal + "[solver]\njust words\n"), "key = value"));
}

TEST_CASE("comments and whitespace") {
    const RunConfig c = parse_config_text("# header\n" + minimal + "  [solver]  \n  tol = 1e-10   # tighter\n; note\n");
    CHECK(c.tol == 1e-10);
}

TEST_CASE("module preconditions are checked at parse time") {
    std::string text = minimal;
    text.replace(text.find("family = constant"), 17, "family = inverse_linear\nlambda = 1");
    text.replace(text.find("n_points = 64"), 13, "n_points = 11");
    CHECK(contains(error_of(text), "pole"));
}

TEST_CASE("potential channel syntax") {
    const RunConfig c = parse_config_text(minimal + "[potential]\nv_t = i_linear(0.5)\nv_sp = linear(-1)\nv_s = abs(2)\nv_p = quadratic(0.25)\n");
    CHECK(c.v_t.kind == ChannelSpec::Kind::i_linear);
    CHECK(c.v_s.parameter == 2.0);
    const Problem p = materialize(c);
    const int j = 10;
    const double x = p.grid.node(j);
    CHECK(p.potential.v_t[j] == cplx(0.0, 0.5 * x));
    CHECK(p.potential.v_sp[j] == cplx(-x));
    CHECK(p.potential.v_s[j] == cplx(2.0 * std::abs(x)));
    CHECK(p.potential.v_p[j] == cplx(0.25 * x * x));

    CHECK(contains(error_of(minimal + "[potential]\nv_t = cosh(1)\n"), "unknown channel function"));
    CHECK(contains(error_of(minimal + "[potential]\nv_t = abs(x)\n"), "finite number"));
    CHECK(contains(error_of(minimal + "[potential]\nv_t = nothing\n"), "potential.v_t"));
}

TEST_CASE("tabulated channel files resolve relative to the config") {
    const auto dir = scratch("table");
    {
        std::ofstream f(dir / "vt.txt");
        f << "# re im\n";
        for (int i = 0; i < 16; ++i) f << 0.1 * i << " " << -0.2 * i << "\n";
    }
    std::string text = minimal;
    text.replace(text.find("n_points = 64"), 13, "n_points = 16");
    {
        std::ofstream f(dir / "run.ini");
        f << text << "[potential]\nv_t = file(vt.txt)\n";
    }
    const RunConfig c = parse_config(dir / "run.ini");
    const Problem p = materialize(c);
    CHECK(std::abs(p.potential.v_t[3] - cplx(0.3, -0.6)) < 1e-15);

    CHECK(contains(error_of(text + "[potential]\nv_t = file(missing.txt)\n", dir), "cannot read"));
    std::string longer = minimal;
    CHECK(contains(error_of(longer + "[potential]\nv_t = file(vt.txt)\n", dir), "grid has 64 nodes"));
}

TEST_CASE("window and overrides") {
    const RunConfig c = parse_config_text(minimal + "[diagnostics]\nwindow = -2, 2\n");
    REQUIRE(c.window);
    CHECK(c.window->first == -2.0);
    CHECK(contains(error_of(minimal + "[diagnostics]\nwindow = 2, -2\n"), "diagnostics.window"));

    const RunConfig d = with_override(c, "solver.wilson_r", "0.5");
    CHECK(d.wilson_r == 0.5);
    CHECK(d.window);
    CHECK_THROWS_AS(with_override(c, "solver.wilsonr", "0.5"), ConfigError);
    CHECK_THROWS_AS(with_override(c, "grid.n_points", "4"), ConfigError);
    CHECK_THROWS_AS(parse_config("/nonexistent/run.ini"), ConfigError);
}

TEST_CASE("edit distance") {
    CHECK(edit_distance("wilsonr", "wilson_r") == 1);
    CHECK(edit_distance("", "abc") == 3);
    CHECK(edit_distance("kitten", "sitting") == 3);
}
