#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ptdirac/solver.hpp"

using namespace ptdirac;

namespace {

const double pi = std::numbers::pi;

DiracOperator free_periodic(int n) {
    const Grid1D g = build_grid(-pi, pi, n, Boundary::periodic);
    return assemble_hamiltonian(g, LorentzPotential::zero(g), GridFunction::constant(g, 1.0));
}

DiracOperator pt_problem(int n, double alpha = 0.1, double length = 10.0) {
    const Grid1D g = build_grid(-length, length, n, Boundary::dirichlet);
    MassProfile p;
    p.family = MassFamily::quadratic_even;
    p.alpha = alpha;
    return assemble_hamiltonian(g, LorentzPotential::time_vector(pt_vector_potential(p, g)), sample_mass(p, g));
}

std::vector<double> real_parts(const SpectrumResult& r) {
    std::vector<double> out;
    for (const auto& s : r.eigenpairs) out.push_back(s.energy.real());
    return out;
}

}  // namespace

TEST_CASE("free periodic spectrum: k = 0 pair and dispersion oracle") {
    const DiracOperator op = free_periodic(256);
    const SpectrumResult r = solve_spectrum(op, 1e-9, 20);
    REQUIRE(r.size() == 20);
    CHECK(r.hermitian_path);
    CHECK(std::abs(std::abs(r.eigenpairs[0].energy) - 1.0) < 1e-10);
    CHECK(std::abs(std::abs(r.eigenpairs[1].energy) - 1.0) < 1e-10);
    CHECK(r.eigenpairs[0].energy.real() * r.eigenpairs[1].energy.real() < 0.0);

    const auto expected = oracle::periodic_free_spectrum(1.0, 1.0, 256, 2.0 * pi);
    CHECK(oracle::max_nearest_distance(real_parts(r), expected) < 1e-8);
    std::vector<double> all;
    for (cplx e : r.all_eigenvalues) all.push_back(e.real());
    CHECK(oracle::max_sorted_distance(all, expected) < 1e-8);
    for (double res : r.residuals) CHECK(res <= 1e-9);
}

TEST_CASE("general path agrees with the Hermitian path") {
    const DiracOperator op = free_periodic(64);
    const SpectrumResult a = solve_spectrum(op, 1e-9, 12, true);
    const SpectrumResult b = solve_spectrum(op, 1e-9, 12, false);
    CHECK(a.hermitian_path);
    CHECK_FALSE(b.hermitian_path);
    REQUIRE(a.all_eigenvalues.size() == b.all_eigenvalues.size());
    for (std::size_t i = 0; i < a.all_eigenvalues.size(); ++i)
        CHECK(std::abs(std::abs(a.all_eigenvalues[i]) - std::abs(b.all_eigenvalues[i])) < 1e-10);
    for (double res : b.residuals) CHECK(res <= 1e-9);
}

TEST_CASE("returned pairs are ordered by |Re E|") {
    const SpectrumResult r = solve_spectrum(pt_problem(200), 1e-9, 10);
    for (int k = 1; k < r.size(); ++k)
        CHECK(std::abs(r.eigenpairs[static_cast<std::size_t>(k)].energy.real()) >=
              std::abs(r.eigenpairs[static_cast<std::size_t>(k - 1)].energy.real()) - 1e-12);
    CHECK(r.classification.size() == static_cast<std::size_t>(r.size()));
}

TEST_CASE("PT problem: complex eigenvalues come in conjugate pairs") {
    const SpectrumResult r = solve_spectrum(pt_problem(400), 1e-9, 20);
    CHECK_FALSE(r.hermitian_path);
    const SpectrumResult c = classify_reality(r, 1e-8);
    const ClassificationSummary s = summarize(c.all_eigenvalues, c.all_classification);
    CHECK(s.unmatched == 0);
    CHECK(s.real + 2 * s.complex_pairs == static_cast<int>(c.all_eigenvalues.size()));
}

TEST_CASE("classify_reality examples") {
    const std::vector<cplx> tiny{{2.0, 1e-15}, {2.0, -1e-15}};
    for (Reality t : classify_eigenvalues(tiny, 1e-12)) CHECK(t == Reality::real);

    const std::vector<cplx> mixed{{1.0, 0.5}, {1.0, -0.5}, {3.0, 0.0}};
    const auto tags = classify_eigenvalues(mixed, 1e-12);
    CHECK(tags[0] == Reality::complex_pair_member);
    CHECK(tags[1] == Reality::complex_pair_member);
    CHECK(tags[2] == Reality::real);
    const ClassificationSummary s = summarize(mixed, tags);
    CHECK(s.complex_pairs == 1);
    CHECK(s.real == 1);
    CHECK(s.max_abs_imag == 0.5);

    const std::vector<cplx> lonely{{1.0, 0.5}, {1.0, -0.4}};
    for (Reality t : classify_eigenvalues(lonely, 1e-8)) CHECK(t == Reality::unmatched_complex);

    const Grid1D g = build_grid(-4.0, 4.0, 60, Boundary::dirichlet);
    const LorentzPotential v = LorentzPotential::scalar(GridFunction::sample(g, [](double x) { return cplx(std::abs(x)); }));
    const SpectrumResult r = solve_spectrum(assemble_hamiltonian(g, v, GridFunction::constant(g, 1.0)), 1e-9, 8);
    for (Reality t : r.all_classification) CHECK(t == Reality::real);
    for (Reality t : r.classification) CHECK(t == Reality::real);
}

TEST_CASE("solver reports failing residuals") {
    const DiracOperator op = pt_problem(60);
    try {
        (void)solve_spectrum(op, 1e-30, 4);
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK_FALSE(e.residuals().empty());
        CHECK(std::string(e.what()).find("residual") != std::string::npos);
    }
    CHECK_THROWS_AS(solve_spectrum(op, 0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(solve_spectrum(op, 1e-9, 0), std::invalid_argument);
}

TEST_CASE("returned pairs satisfy the reduced equations") {
    const DiracOperator op = pt_problem(200);
    const SpectrumResult r = solve_spectrum(op, 1e-9, 12);
    for (const auto& s : r.eigenpairs)
        CHECK(reduced_equations_rhs(s.energy, s, op.potential(), op.mass()).relative_norm <= 1e-8);
}
