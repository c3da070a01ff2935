#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ptdirac/diagnostics.hpp"

using namespace ptdirac;

namespace {

const cplx I{0.0, 1.0};
const double pi = std::numbers::pi;

Spinor constant_spinor(const Grid1D& g, cplx a, cplx b, cplx e = 0.0) {
    return Spinor(GridFunction::constant(g, a), GridFunction::constant(g, b), e);
}

struct Solved {
    DiracOperator op;
    SpectrumResult result;
};

Solved solve(const Grid1D& g, const LorentzPotential& pot, const GridFunction& mass, int pairs = 6) {
    DiracOperator op = assemble_hamiltonian(g, pot, mass);
    SpectrumResult r = normalize_all(solve_spectrum(op, 1e-9, pairs));
    return {std::move(op), std::move(r)};
}

Solved hermitian_problem(int n) {
    const Grid1D g = build_grid(-12.0, 12.0, n, Boundary::dirichlet);
    return solve(g, LorentzPotential::scalar(GridFunction::sample(g, [](double x) { return cplx(std::abs(x)); })),
                 GridFunction::constant(g, 1.0));
}

Solved pt_problem(int n) {
    const Grid1D g = build_grid(-10.0, 10.0, n, Boundary::dirichlet);
    MassProfile p;
    p.family = MassFamily::quadratic_even;
    p.alpha = 0.1;
    return solve(g, LorentzPotential::time_vector(pt_vector_potential(p, g)), sample_mass(p, g));
}

}  // namespace

TEST_CASE("adjoint_row examples") {
    const Grid1D g = build_grid(0.0, 1.0, 8, Boundary::dirichlet);
    const GammaRep rep = GammaRep::standard();
    AdjointRow r = adjoint_row(constant_spinor(g, 1.0, 0.0), rep);
    CHECK(r.first[2] == cplx(0.0));
    CHECK(r.second[2] == cplx(1.0));
    r = adjoint_row(constant_spinor(g, 0.0, I), rep);
    CHECK(r.first[0] == -I);
    CHECK(r.second[0] == cplx(0.0));

    const cplx a{0.3, -1.2}, b{2.0, 0.5};
    r = adjoint_row(constant_spinor(g, a, b), rep);
    // phibar g0 phi = |a|^2 + |b|^2
    const cplx v = r.first[1] * (rep.gamma0()(0, 0) * a + rep.gamma0()(0, 1) * b) +
                   r.second[1] * (rep.gamma0()(1, 0) * a + rep.gamma0()(1, 1) * b);
    CHECK(std::abs(v - (std::norm(a) + std::norm(b))) < 1e-14);
}

TEST_CASE("current_density examples and bounds") {
    const Grid1D g = build_grid(0.0, 1.0, 8, Boundary::dirichlet);
    CurrentDensity j = current_density(constant_spinor(g, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)));
    CHECK(std::abs(j.j0[3] - 1.0) < 1e-15);
    CHECK(std::abs(j.j1[3]) < 1e-15);
    j = current_density(constant_spinor(g, 1.0, 0.0));
    CHECK(j.j0[0] == cplx(1.0));
    CHECK(j.j1[0] == cplx(1.0));

    std::mt19937 rng(5);
    std::normal_distribution<double> n01;
    const Grid1D big = build_grid(-1.0, 1.0, 64, Boundary::dirichlet);
    std::vector<cplx> p(64), m(64);
    for (int i = 0; i < 64; ++i) p[i] = {n01(rng), n01(rng)}, m[i] = {n01(rng), n01(rng)};
    const CurrentDensity c = current_density(Spinor(GridFunction(big, p), GridFunction(big, m), 0.0));
    for (int i = 0; i < 64; ++i) {
        CHECK(c.j0[i].real() >= 0.0);
        CHECK(std::abs(c.j1[i].real()) <= c.j0[i].real() + 1e-15);
        CHECK(c.j0[i].imag() == 0.0);
    }
}

TEST_CASE("normalize examples") {
    const Grid1D g = build_grid(-2.0, 2.0, 41, Boundary::dirichlet);
    const Spinor s(GridFunction::sample(g, [](double x) { return cplx(std::exp(-x * x), 0.3 * x); }),
                   GridFunction::sample(g, [](double x) { return cplx(0.0, std::cos(x)); }), 1.0);
    const Spinor n = normalize(s);
    CHECK(std::abs(integrate(current_density(n).j0) - 1.0) < 1e-12);

    const Spinor again = normalize(n);
    for (int i = 0; i < g.size(); ++i) {
        CHECK(std::abs(again.plus[i] - n.plus[i]) < 1e-14);
        CHECK(std::abs(again.minus[i] - n.minus[i]) < 1e-14);
    }
    CHECK_THROWS_AS(normalize(constant_spinor(g, 0.0, 0.0)), std::invalid_argument);
}

TEST_CASE("continuity residual vanishes for the k = 0 rest state") {
    const Grid1D g = build_grid(-pi, pi, 32, Boundary::periodic);
    const Spinor rest = constant_spinor(g, 1.0, 1.0, 1.0);
    CHECK(continuity_residual(rest, LorentzPotential::zero(g)).max_abs() == 0.0);
    CHECK(current_density(rest).j1.max_abs() == 0.0);
}

TEST_CASE("gram of a single eigenpair is [1]") {
    const Grid1D g = build_grid(-pi, pi, 32, Boundary::periodic);
    SpectrumResult r;
    r.eigenpairs.push_back(normalize(constant_spinor(g, 1.0, 1.0, 1.0)));
    r.residuals.push_back(0.0);
    const Eigen::MatrixXcd G = gram_matrix(r);
    REQUIRE(G.rows() == 1);
    CHECK(std::abs(G(0, 0) - 1.0) < 1e-14);
}

TEST_CASE("orthogonality_balance preconditions") {
    const Solved s = pt_problem(120);
    const LorentzPotential& pot = s.op.potential();
    CHECK_THROWS_AS(orthogonality_balance(s.result, 1, 1, pot), std::invalid_argument);
    CHECK_THROWS_AS(orthogonality_balance(s.result, 0, 99, pot), std::invalid_argument);

    SpectrumResult fake = s.result;
    fake.residuals[2] = 1.0;
    CHECK_THROWS_AS(orthogonality_balance(fake, 0, 2, pot), std::invalid_argument);
}

TEST_CASE("Hermitian limit: orthogonality recovered") {
    const Solved s = hermitian_problem(300);
    const Eigen::MatrixXcd G = gram_matrix(s.result);
    for (Eigen::Index i = 0; i < G.rows(); ++i)
        for (Eigen::Index j = 0; j < G.cols(); ++j)
            CHECK(std::abs(G(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-8);

    CHECK(gamma0_hermiticity_residual(s.op.potential(), GammaRep::standard()) == 0.0);
    for (int k = 0; k < 4; ++k)
        for (int kp = 0; kp < 4; ++kp) {
            if (k == kp) continue;
            const BalanceReport b = orthogonality_balance(s.result, k, kp, s.op.potential());
            CHECK(b.term_boundary == cplx(0.0));
            CHECK(b.term_potential == cplx(0.0));
            CHECK(std::abs(b.term_energy) < 1e-8);
            CHECK(b.identity_ok);
            CHECK(b.restored_condition);
        }

    // Real channels: the continuity residual is tiny.
    for (const auto& phi : s.result.eigenpairs) CHECK(continuity_residual(phi, s.op.potential()).max_abs() < 1e-8);
}

TEST_CASE("PT case: balance closes while naive orthogonality fails") {
    const Solved s = pt_problem(300);
    const LorentzPotential& pot = s.op.potential();
    double max_off = 0.0;
    const Eigen::MatrixXcd G = gram_matrix(s.result);
    for (Eigen::Index i = 0; i < G.rows(); ++i)
        for (Eigen::Index j = 0; j < G.cols(); ++j)
            if (i != j) max_off = std::max(max_off, std::abs(G(i, j)));
    CHECK(max_off > 1e-4);

    for (int k = 0; k < s.result.size(); ++k)
        for (int kp = 0; kp < s.result.size(); ++kp) {
            if (k == kp) continue;
            const BalanceReport b = orthogonality_balance(s.result, k, kp, pot);
            CHECK(b.identity_residual <= 1e-9 * std::max(1.0, b.term_scale()));
            CHECK(b.term_boundary == cplx(0.0));
        }

    // Ground state: the flux divergence dominates the residual.
    const Spinor& ground = s.result.eigenpairs[0];
    const GridFunction dj1 = differentiate(current_density(ground).j1, DiffScheme::central);
    CHECK(dj1.max_abs() > 10.0 * continuity_residual(ground, pot).max_abs());
}

TEST_CASE("anti-Hermitian time component: potential term is 2i * int W phibar g0 phi") {
    const Solved s = pt_problem(200);
    const GridFunction w = s.op.potential().v_t * cplx(0.0, -1.0);  // V_t = i W
    REQUIRE(w.is_real());
    for (int k = 0; k < 3; ++k)
        for (int kp = 0; kp < 3; ++kp) {
            if (k == kp) continue;
            const Spinor& phi = s.result.eigenpairs[static_cast<std::size_t>(k)];
            const Spinor& chi = s.result.eigenpairs[static_cast<std::size_t>(kp)];
            std::vector<cplx> integrand(static_cast<std::size_t>(w.size()));
            for (int j = 0; j < w.size(); ++j)
                integrand[static_cast<std::size_t>(j)] =
                    w[j] * (std::conj(chi.plus[j]) * phi.plus[j] + std::conj(chi.minus[j]) * phi.minus[j]);
            const cplx expected = 2.0 * I * integrate(GridFunction(w.grid(), integrand));
            const BalanceReport b = orthogonality_balance(s.result, k, kp, s.op.potential());
            CHECK(std::abs(b.term_potential - expected) < 1e-13);
        }
}

TEST_CASE("periodic boxes have no boundary term; windows do") {
    const Grid1D g = build_grid(-pi, pi, 64, Boundary::periodic);
    const GridFunction v = GridFunction::sample(g, [](double x) { return cplx(0.0, 0.2 * std::sin(x)); });
    const Solved s = solve(g, LorentzPotential::time_vector(v), GridFunction::constant(g, 1.0), 4);
    const BalanceReport full = orthogonality_balance(s.result, 0, 2, s.op.potential());
    CHECK(full.term_boundary == cplx(0.0));
    CHECK(full.identity_residual < 1e-10);

    BalanceOptions opts;
    opts.window = std::pair{-1.0, 1.0};
    const BalanceReport win = orthogonality_balance(s.result, 0, 2, s.op.potential(), GammaRep::standard(), opts);
    CHECK(win.x_first == doctest::Approx(-1.0).epsilon(0.05));
    CHECK(win.x_last == doctest::Approx(1.0).epsilon(0.05));
    CHECK(win.identity_tol == doctest::Approx(100.0 * g.spacing() * g.spacing()));
}
