#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ptdirac/grid.hpp"

using namespace ptdirac;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("build_grid spacing and nodes") {
    const Grid1D p = build_grid(-pi, pi, 9, Boundary::periodic);
    CHECK(p.spacing() == doctest::Approx(2.0 * pi / 9.0).epsilon(1e-15));
    CHECK(p.node(0) == -pi);

    const Grid1D d = build_grid(0.0, 1.0, 11, Boundary::dirichlet);
    CHECK(d.spacing() == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(d.node(10) == doctest::Approx(1.0).epsilon(1e-15));

    const auto x = d.nodes();
    for (std::size_t j = 1; j < x.size(); ++j) CHECK(x[j] > x[j - 1]);
}

TEST_CASE("build_grid rejects bad input") {
    CHECK_THROWS_AS(build_grid(1.0, 0.0, 11, Boundary::dirichlet), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(0.0, 0.0, 11, Boundary::dirichlet), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(0.0, 1.0, 7, Boundary::dirichlet), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(0.0, NAN, 11, Boundary::periodic), std::invalid_argument);
    CHECK_NOTHROW(build_grid(0.0, 1.0, 8, Boundary::periodic));
}

TEST_CASE("GridFunction validates length and finiteness") {
    const Grid1D g = build_grid(0.0, 1.0, 8, Boundary::dirichlet);
    CHECK_THROWS_AS(GridFunction(g, std::vector<cplx>(7)), std::invalid_argument);
    std::vector<cplx> v(8, 1.0);
    v[3] = cplx(NAN, 0.0);
    CHECK_THROWS_AS(GridFunction(g, v), std::invalid_argument);
    v[3] = cplx(0.0, INFINITY);
    CHECK_THROWS_AS(GridFunction(g, v), std::invalid_argument);
}

TEST_CASE("differentiate constant gives zero for every scheme") {
    for (Boundary b : {Boundary::dirichlet, Boundary::periodic}) {
        const Grid1D g = build_grid(-1.0, 2.0, 17, b);
        const GridFunction f = GridFunction::constant(g, cplx(3.0, -2.0));
        for (DiffScheme s : {DiffScheme::central, DiffScheme::forward, DiffScheme::backward, DiffScheme::second_central})
            CHECK(differentiate(f, s).max_abs() < 1e-12);
    }
}

TEST_CASE("central difference is exact on linears") {
    const Grid1D g = build_grid(-1.0, 3.0, 21, Boundary::dirichlet);
    const GridFunction f = GridFunction::sample(g, [](double x) { return cplx(x); });
    const GridFunction d = differentiate(f, DiffScheme::central);
    for (int j = 0; j < g.size(); ++j) CHECK(std::abs(d[j] - 1.0) < 1e-12);
    // Second derivative of a quadratic, including the one-sided ends.
    const GridFunction q = GridFunction::sample(g, [](double x) { return cplx(x * x); });
    const GridFunction d2 = differentiate(q, DiffScheme::second_central);
    for (int j = 0; j < g.size(); ++j) CHECK(std::abs(d2[j] - 2.0) < 1e-9);
}

TEST_CASE("central difference of sin converges at second order") {
    auto error = [](int n) {
        const Grid1D g = build_grid(-pi, pi, n, Boundary::periodic);
        const GridFunction d = differentiate(GridFunction::sample(g, [](double x) { return cplx(std::sin(x)); }),
                                             DiffScheme::central);
        double e = 0.0;
        for (int j = 0; j < n; ++j) e = std::max(e, std::abs(d[j] - std::cos(g.node(j))));
        return e;
    };
    const double e256 = error(256), e512 = error(512);
    CHECK(e256 <= 1e-3);
    CHECK(e256 / e512 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("forward and backward differences are first order") {
    const Grid1D g = build_grid(-pi, pi, 64, Boundary::periodic);
    const GridFunction f = GridFunction::sample(g, [](double x) { return cplx(std::sin(x)); });
    const GridFunction fw = differentiate(f, DiffScheme::forward);
    const GridFunction bw = differentiate(f, DiffScheme::backward);
    // Their mean is the central difference.
    const GridFunction c = differentiate(f, DiffScheme::central);
    for (int j = 0; j < g.size(); ++j) CHECK(std::abs(0.5 * (fw[j] + bw[j]) - c[j]) < 1e-12);
}

TEST_CASE("integrate examples") {
    const Grid1D unit = build_grid(0.0, 1.0, 11, Boundary::dirichlet);
    CHECK(integrate(GridFunction::constant(unit, 1.0)) == cplx(1.0));

    const Grid1D p = build_grid(-pi, pi, 64, Boundary::periodic);
    CHECK(std::abs(integrate(GridFunction::sample(p, [](double x) { return cplx(std::sin(x)); }))) < 1e-14);

    const Grid1D d = build_grid(-8.0, 8.0, 512, Boundary::dirichlet);
    const cplx gauss = integrate(GridFunction::sample(d, [](double x) { return cplx(std::exp(-x * x)); }));
    const double reference = oracle::gauss_legendre([](double x) { return std::exp(-x * x); }, -8.0, 8.0);
    CHECK(std::abs(reference - std::sqrt(pi)) < 1e-14);
    CHECK(std::abs(gauss - reference) < 1e-8);
}

TEST_CASE("window integration and mirror") {
    const Grid1D g = build_grid(-2.0, 2.0, 41, Boundary::dirichlet);
    const NodeRange w = g.window(-1.0, 1.0);
    CHECK(g.node(w.first) == doctest::Approx(-1.0));
    CHECK(g.node(w.last) == doctest::Approx(1.0));
    CHECK(integrate(GridFunction::constant(g, 1.0), w).real() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS(g.window(1.0, -1.0));
    CHECK_THROWS(g.window(-3.0, 1.0));

    CHECK(g.symmetric_about_origin());
    for (int j = 0; j < g.size(); ++j) CHECK(g.node(g.mirror(j)) == doctest::Approx(-g.node(j)).epsilon(1e-14));
    const Grid1D p = build_grid(-pi, pi, 16, Boundary::periodic);
    CHECK(p.mirror(0) == 0);
    CHECK(p.node(p.mirror(3)) == doctest::Approx(-p.node(3)));
    CHECK_THROWS(build_grid(0.0, 1.0, 11, Boundary::dirichlet).mirror(2));
}
