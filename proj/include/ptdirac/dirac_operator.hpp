#pragma once

#include <Eigen/Dense>

#include "ptdirac/grid.hpp"
#include "ptdirac/lorentz.hpp"
#include "ptdirac/spinor.hpp"

namespace ptdirac {

enum class DiracScheme { central, central_wilson };

const char* to_string(DiracScheme s);

/// Discrete stationary Dirac Hamiltonian
///   H = -i g0 g1 d/dx + g0 (M + W) + g0 V(x),   W = -(r h / 2) d^2/dx^2,
/// acting on the unknown nodes (all nodes for periodic grids, interior nodes
/// for dirichlet grids where phi = 0 at both walls). Unknowns are stored
/// component-major: [phi_+ at unknown nodes, phi_- at unknown nodes].
class DiracOperator {
public:
    DiracOperator(const Grid1D& grid, const LorentzPotential& potential, const GridFunction& mass,
                  DiracScheme scheme, double wilson_r, const GammaRep& rep);

    const Grid1D& grid() const { return grid_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    DiracScheme scheme() const { return scheme_; }
    /// Effective Wilson parameter (0 for the plain central scheme).
    double wilson_r() const { return wilson_r_; }
    const LorentzPotential& potential() const { return potential_; }
    const GridFunction& mass() const { return mass_; }
    const GammaRep& rep() const { return rep_; }

    int first_unknown_node() const { return grid_.periodic() ? 0 : 1; }
    int unknowns_per_component() const { return n_unknown_; }
    int dimension() const { return 2 * n_unknown_; }

    Spinor to_spinor(const Eigen::VectorXcd& v, cplx energy) const;
    Eigen::VectorXcd to_vector(const Spinor& s) const;

private:
    Grid1D grid_;
    LorentzPotential potential_;
    GridFunction mass_;
    DiracScheme scheme_;
    double wilson_r_;
    GammaRep rep_;
    int n_unknown_;
    Eigen::MatrixXcd matrix_;
};

DiracOperator assemble_hamiltonian(const Grid1D& grid, const LorentzPotential& potential, const GridFunction& mass,
                                   DiracScheme scheme = DiracScheme::central_wilson, double wilson_r = 1.0,
                                   const GammaRep& rep = GammaRep::standard());

/// Entrywise max of H - H^dagger.
double hermiticity_of_operator(const DiracOperator& op);

struct ReducedResidual {
    GridFunction plus;
    GridFunction minus;
    /// ||r|| / ||phi|| in the discrete l2 norm.
    double relative_norm;
};

/// Pointwise residual of the coupled first-order equations
///   E phi_+ = -i phi_+' + (V_t + V_sp) phi_+ + (M + W + V_s + i V_p) phi_-
///   E phi_- = +i phi_-' + (V_t - V_sp) phi_- + (M + W + V_s - i V_p) phi_+
/// in the representation g0 = sigma1, g1 = -i sigma2, with the same stencils
/// as the assembled operator. At dirichlet walls the residual is the wall value.
ReducedResidual reduced_equations_rhs(cplx energy, const Spinor& phi, const LorentzPotential& potential,
                                      const GridFunction& mass, DiracScheme scheme = DiracScheme::central_wilson,
                                      double wilson_r = 1.0);

}  // namespace ptdirac
