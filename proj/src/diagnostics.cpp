#include "ptdirac/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ptdirac {

namespace {

const cplx I{0.0, 1.0};

Eigen::Vector2cd column(const Spinor& s, int j) { return {s.plus[j], s.minus[j]}; }

/// Pointwise bilinear a^dagger M b.
GridFunction bilinear(const Spinor& a, const Mat2& m, const Spinor& b) {
    std::vector<cplx> v(static_cast<std::size_t>(a.plus.size()));
    for (int j = 0; j < a.plus.size(); ++j)
        v[static_cast<std::size_t>(j)] = column(a, j).dot(m * column(b, j));  // dot conjugates the left side
    return GridFunction(a.grid(), std::move(v));
}

/// Pointwise a^dagger (g0 V - (g0 V)^dagger) b, i.e. phibar_a (V - g0 V^dagger g0) phi_b.
GridFunction source_bilinear(const Spinor& a, const LorentzPotential& pot, const GammaRep& rep, const Spinor& b) {
    std::vector<cplx> v(static_cast<std::size_t>(a.plus.size()));
    for (int j = 0; j < a.plus.size(); ++j) {
        const Mat2 g0v = rep.gamma0() * assemble_potential_matrix(pot, rep, j);
        const Mat2 anti = g0v - g0v.adjoint();
        v[static_cast<std::size_t>(j)] = column(a, j).dot(anti * column(b, j));
    }
    return GridFunction(a.grid(), std::move(v));
}

GridFunction real_part_checked(const GridFunction& f, double scale, const char* what) {
    std::vector<cplx> v(static_cast<std::size_t>(f.size()));
    for (int j = 0; j < f.size(); ++j) {
        if (std::abs(f[j].imag()) > 1e-10 * std::max(scale, 1e-300)) {
            std::ostringstream os;
            os << "current_density: " << what << " has imaginary part " << f[j].imag() << " at node " << j;
            throw std::logic_error(os.str());
        }
        v[static_cast<std::size_t>(j)] = f[j].real();
    }
    return GridFunction(f.grid(), std::move(v));
}

}  // namespace

AdjointRow adjoint_row(const Spinor& phi, const GammaRep& rep) {
    const Mat2& g0 = rep.gamma0();
    std::vector<cplx> first(static_cast<std::size_t>(phi.plus.size())), second(first.size());
    for (int j = 0; j < phi.plus.size(); ++j) {
        const cplx a = std::conj(phi.plus[j]), b = std::conj(phi.minus[j]);
        first[static_cast<std::size_t>(j)] = a * g0(0, 0) + b * g0(1, 0);
        second[static_cast<std::size_t>(j)] = a * g0(0, 1) + b * g0(1, 1);
    }
    return {GridFunction(phi.grid(), std::move(first)), GridFunction(phi.grid(), std::move(second))};
}

CurrentDensity current_density(const Spinor& phi, const GammaRep& rep) {
    const GridFunction j0 = bilinear(phi, rep.gamma0() * rep.gamma0(), phi);
    const GridFunction j1 = bilinear(phi, rep.gamma0() * rep.gamma1(), phi);
    const double scale = j0.max_abs();
    return {real_part_checked(j0, scale, "J^0"), real_part_checked(j1, scale, "J^1")};
}

Spinor normalize(const Spinor& phi) {
    const double norm = integrate(current_density(phi).j0).real();
    if (!(norm > 0.0)) throw std::invalid_argument("normalize: spinor has zero norm");

    cplx largest = 0.0;
    for (const GridFunction* c : {&phi.plus, &phi.minus})
        for (int j = 0; j < c->size(); ++j)
            if (std::abs((*c)[j]) > std::abs(largest)) largest = (*c)[j];
    const cplx factor = std::conj(largest) / std::abs(largest) / std::sqrt(norm);
    return Spinor(phi.plus * factor, phi.minus * factor, phi.energy);
}

SpectrumResult normalize_all(SpectrumResult result) {
    for (auto& s : result.eigenpairs) s = normalize(s);
    return result;
}

GridFunction continuity_residual(const Spinor& phi, const LorentzPotential& pot, const GammaRep& rep) {
    if (!(pot.grid() == phi.grid())) throw std::invalid_argument("continuity_residual: grids differ");
    const CurrentDensity j = current_density(phi, rep);
    const GridFunction flux = differentiate(j.j1, DiffScheme::central);
    const GridFunction source = source_bilinear(phi, pot, rep, phi);
    return j.j0 * (2.0 * phi.energy.imag()) + flux + source * I;
}

Eigen::MatrixXcd gram_matrix(const SpectrumResult& result, const GammaRep& rep) {
    // phibar g0 phi = phi^dagger g0 g0 phi
    const Mat2 metric = rep.gamma0() * rep.gamma0();
    const int n = result.size();
    Eigen::MatrixXcd g(n, n);
    for (int kp = 0; kp < n; ++kp)
        for (int k = 0; k < n; ++k)
            g(kp, k) = integrate(bilinear(result.eigenpairs[static_cast<std::size_t>(kp)], metric,
                                          result.eigenpairs[static_cast<std::size_t>(k)]));
    return g;
}

double BalanceReport::term_scale() const {
    return std::max({std::abs(term_energy), std::abs(term_boundary), std::abs(term_potential)});
}

BalanceReport orthogonality_balance(const SpectrumResult& result, int k, int k_prime, const LorentzPotential& pot,
                                    const GammaRep& rep, const BalanceOptions& options) {
    if (k == k_prime) throw std::invalid_argument("orthogonality_balance: k and k_prime must differ");
    for (int idx : {k, k_prime}) {
        if (idx < 0 || idx >= result.size()) {
            std::ostringstream os;
            os << "orthogonality_balance: index " << idx << " out of range (" << result.size() << " pairs)";
            throw std::invalid_argument(os.str());
        }
        const double res = result.residuals.at(static_cast<std::size_t>(idx));
        if (!(res <= result.solver_tolerance)) {
            std::ostringstream os;
            os << "orthogonality_balance: pair " << idx << " is not an eigenpair (residual " << res << " > "
               << result.solver_tolerance << ")";
            throw std::invalid_argument(os.str());
        }
    }

    const Spinor& phi = result.eigenpairs[static_cast<std::size_t>(k)];
    const Spinor& chi = result.eigenpairs[static_cast<std::size_t>(k_prime)];
    const Grid1D& grid = phi.grid();
    if (!(pot.grid() == grid)) throw std::invalid_argument("orthogonality_balance: grids differ");

    const GridFunction density = bilinear(chi, rep.gamma0() * rep.gamma0(), phi);
    const GridFunction flux = bilinear(chi, rep.gamma0() * rep.gamma1(), phi);
    const GridFunction source = source_bilinear(chi, pot, rep, phi);

    BalanceReport r;
    r.k = k;
    r.k_prime = k_prime;
    if (options.window) {
        const NodeRange w = grid.window(options.window->first, options.window->second);
        r.gram = integrate(density, w);
        r.term_potential = integrate(source, w);
        r.term_boundary = I * (flux[w.last] - flux[w.first]);
        r.x_first = grid.node(w.first);
        r.x_last = grid.node(w.last);
    } else {
        r.gram = integrate(density);
        r.term_potential = integrate(source);
        // Periodic boxes have no boundary; hard walls give the wall values.
        r.term_boundary = grid.periodic() ? cplx(0.0) : I * (flux[grid.size() - 1] - flux[0]);
        r.x_first = grid.x_min();
        r.x_last = grid.periodic() ? grid.node(grid.size() - 1) : grid.x_max();
    }
    r.term_energy = (phi.energy - std::conj(chi.energy)) * r.gram;
    r.identity_residual = std::abs(r.term_energy + r.term_boundary - r.term_potential);
    const double h = grid.spacing();
    r.identity_tol = options.identity_tol >= 0.0 ? options.identity_tol : 100.0 * h * h;
    r.identity_ok = r.identity_residual <= r.identity_tol;
    r.restored_condition = std::abs(r.term_boundary - r.term_potential) <= options.restore_tol;
    return r;
}

}  // namespace ptdirac
