#pragma once

#include <string>

#include <Eigen/Dense>

#include "ptdirac/grid.hpp"

namespace ptdirac {

using Mat2 = Eigen::Matrix2cd;

enum class MassFamily { constant, linear, inverse_linear, quadratic_even, double_well };

const char* to_string(MassFamily f);

/// Analytic mass profile M(x).
///   constant:        m0
///   linear:          m0 + lambda*x
///   inverse_linear:  m0 + lambda/x
///   quadratic_even:  m0*(1 + alpha*x^2)
///   double_well:     m0 + lambda*(x^2 - a^2)^2
struct MassProfile {
    MassFamily family = MassFamily::constant;
    double m0 = 1.0;
    double lambda = 0.0;
    double alpha = 0.0;
    double a = 0.0;
    bool require_positive = true;

    double value(double x) const;
    double derivative(double x) const;
};

GridFunction sample_mass(const MassProfile& profile, const Grid1D& grid);

/// A(x) = (i/2) M'(x)/M(x) using the closed-form derivative of the profile.
GridFunction pt_vector_potential(const MassProfile& profile, const Grid1D& grid);

struct PtCheck {
    double residual = 0.0;
    bool symmetric = false;
};

/// max_j |f(-x_j) - conj(f(x_j))|. The grid must be symmetric about 0.
PtCheck check_pt_symmetry(const GridFunction& f, double tol);

/// Channel functions of V = g0*V_t + g1*V_sp + V_s - i*g5*V_p.
struct LorentzPotential {
    GridFunction v_t;
    GridFunction v_sp;
    GridFunction v_s;
    GridFunction v_p;

    LorentzPotential(GridFunction vt, GridFunction vsp, GridFunction vs, GridFunction vp);

    static LorentzPotential zero(const Grid1D& grid);
    static LorentzPotential time_vector(const GridFunction& vt);
    static LorentzPotential scalar(const GridFunction& vs);

    const Grid1D& grid() const { return v_t.grid(); }
    bool all_real(double tol = 0.0) const;
};

/// Two-dimensional representation of the Clifford algebra {g^mu, g^nu} = 2 eta^{mu nu}, eta = diag(1,-1).
class GammaRep {
public:
    /// gamma0 = sigma1, gamma1 = -i sigma2, gamma5 = gamma0 gamma1 = sigma3.
    static GammaRep standard();
    /// Validates the algebra and hermiticity of gamma0.
    static GammaRep from(const Mat2& gamma0, const Mat2& gamma1);

    /// Representation S g S^dagger for a unitary S.
    GammaRep transformed(const Mat2& unitary) const;

    const Mat2& gamma0() const { return g0_; }
    const Mat2& gamma1() const { return g1_; }
    const Mat2& gamma5() const { return g5_; }

    /// Max entrywise deviation from the anticommutation relations.
    double clifford_defect() const;

private:
    GammaRep(const Mat2& g0, const Mat2& g1);
    Mat2 g0_, g1_, g5_;
};

Mat2 assemble_potential_matrix(const LorentzPotential& pot, const GammaRep& rep, int node);

/// max over nodes of the entrywise-max norm of (g0 V)^dagger - g0 V.
double gamma0_hermiticity_residual(const LorentzPotential& pot, const GammaRep& rep);

}  // namespace ptdirac
