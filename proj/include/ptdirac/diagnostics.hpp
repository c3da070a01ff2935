#pragma once

#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "ptdirac/grid.hpp"
#include "ptdirac/lorentz.hpp"
#include "ptdirac/solver.hpp"
#include "ptdirac/spinor.hpp"

namespace ptdirac {

/// Row spinor phi^dagger g0, one GridFunction per column.
struct AdjointRow {
    GridFunction first;
    GridFunction second;
};

AdjointRow adjoint_row(const Spinor& phi, const GammaRep& rep);

/// J^0 = phibar g0 phi (charge density) and J^1 = phibar g1 phi (flux).
struct CurrentDensity {
    GridFunction j0;
    GridFunction j1;
};

CurrentDensity current_density(const Spinor& phi, const GammaRep& rep = GammaRep::standard());

/// Rescale so that the integral of J^0 is 1; the entry of largest modulus
/// (scanning phi_+ then phi_-) is made real and positive.
Spinor normalize(const Spinor& phi);

SpectrumResult normalize_all(SpectrumResult result);

/// R(x) = 2 Im(E) J^0 + dJ^1/dx + i phibar (V - g0 V^dagger g0) phi, with the
/// central difference of the grid module. Vanishes for an exact stationary
/// solution of the continuum equation.
GridFunction continuity_residual(const Spinor& phi, const LorentzPotential& pot,
                                 const GammaRep& rep = GammaRep::standard());

/// G(k', k) = integral of phibar_k' g0 phi_k.
Eigen::MatrixXcd gram_matrix(const SpectrumResult& result, const GammaRep& rep = GammaRep::standard());

struct BalanceOptions {
    /// Evaluate over [a, b] (snapped to nodes) instead of the whole box.
    std::optional<std::pair<double, double>> window;
    /// Tolerance for the restored-boundary condition |boundary - potential|.
    double restore_tol = 1e-8;
    /// Pass threshold for identity_residual; a negative value means 100 h^2.
    double identity_tol = -1.0;
};

/// Terms of
///   (E_k - conj E_k') int phibar_k' g0 phi_k + i [phibar_k' g1 phi_k]_a^b
///     - int phibar_k' (V - g0 V^dagger g0) phi_k = 0.
struct BalanceReport {
    int k = 0;
    int k_prime = 0;
    cplx gram = 0.0;
    cplx term_energy = 0.0;
    cplx term_boundary = 0.0;
    cplx term_potential = 0.0;
    double identity_residual = 0.0;
    double identity_tol = 0.0;
    bool identity_ok = false;
    /// |term_boundary - term_potential| <= restore_tol.
    bool restored_condition = false;
    double x_first = 0.0;
    double x_last = 0.0;

    double term_scale() const;
};

BalanceReport orthogonality_balance(const SpectrumResult& result, int k, int k_prime, const LorentzPotential& pot,
                                    const GammaRep& rep = GammaRep::standard(), const BalanceOptions& options = {});

}  // namespace ptdirac
