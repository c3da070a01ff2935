#include "ptdirac/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ptdirac {

namespace {

const cplx I{0.0, 1.0};

double entry_max(const Mat2& m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace

const char* to_string(MassFamily f) {
    switch (f) {
    case MassFamily::constant: return "constant";
    case MassFamily::linear: return "linear";
    case MassFamily::inverse_linear: return "inverse_linear";
    case MassFamily::quadratic_even: return "quadratic_even";
    case MassFamily::double_well: return "double_well";
    }
    return "unknown";
}

double MassProfile::value(double x) const {
    switch (family) {
    case MassFamily::constant: return m0;
    case MassFamily::linear: return m0 + lambda * x;
    case MassFamily::inverse_linear: return m0 + lambda / x;
    case MassFamily::quadratic_even: return m0 * (1.0 + alpha * x * x);
    case MassFamily::double_well: {
        const double s = x * x - a * a;
        return m0 + lambda * s * s;
    }
    }
    return m0;
}

double MassProfile::derivative(double x) const {
    switch (family) {
    case MassFamily::constant: return 0.0;
    case MassFamily::linear: return lambda;
    case MassFamily::inverse_linear: return -lambda / (x * x);
    case MassFamily::quadratic_even: return 2.0 * m0 * alpha * x;
    case MassFamily::double_well: return 4.0 * lambda * x * (x * x - a * a);
    }
    return 0.0;
}

GridFunction sample_mass(const MassProfile& profile, const Grid1D& grid) {
    if (profile.family == MassFamily::inverse_linear && profile.lambda != 0.0) {
        for (int j = 0; j < grid.size(); ++j) {
            if (std::abs(grid.node(j)) < grid.spacing() * (1.0 - 1e-9)) {
                std::ostringstream os;
                os << "mass: inverse_linear profile has a pole at x=0; node " << j << " (x=" << grid.node(j)
                   << ") lies within one grid spacing of it";
                throw std::invalid_argument(os.str());
            }
        }
    }
    std::vector<cplx> v(static_cast<std::size_t>(grid.size()));
    for (int j = 0; j < grid.size(); ++j) {
        const double m = profile.value(grid.node(j));
        if (!std::isfinite(m) || m == 0.0 || (profile.require_positive && m < 0.0)) {
            std::ostringstream os;
            os << "mass: " << to_string(profile.family) << " profile gives M=" << m << " at node " << j
               << " (x=" << grid.node(j) << "); M must be " << (profile.require_positive ? "positive" : "nonzero")
               << " on the grid";
            throw std::invalid_argument(os.str());
        }
        v[static_cast<std::size_t>(j)] = m;
    }
    return GridFunction(grid, std::move(v));
}

GridFunction pt_vector_potential(const MassProfile& profile, const Grid1D& grid) {
    // validates M != 0 (and positivity when required)
    const GridFunction mass = sample_mass(profile, grid);
    std::vector<cplx> a(static_cast<std::size_t>(grid.size()));
    for (int j = 0; j < grid.size(); ++j)
        a[static_cast<std::size_t>(j)] = 0.5 * I * profile.derivative(grid.node(j)) / mass[j].real();
    return GridFunction(grid, std::move(a));
}

PtCheck check_pt_symmetry(const GridFunction& f, double tol) {
    const Grid1D& g = f.grid();
    PtCheck out;
    for (int j = 0; j < g.size(); ++j)
        out.residual = std::max(out.residual, std::abs(f[g.mirror(j)] - std::conj(f[j])));
    out.symmetric = out.residual <= tol;
    return out;
}

LorentzPotential::LorentzPotential(GridFunction vt, GridFunction vsp, GridFunction vs, GridFunction vp)
    : v_t(std::move(vt)), v_sp(std::move(vsp)), v_s(std::move(vs)), v_p(std::move(vp)) {
    if (!(v_t.grid() == v_sp.grid() && v_t.grid() == v_s.grid() && v_t.grid() == v_p.grid()))
        throw std::invalid_argument("potential: all four channels must be sampled on the same grid");
}

LorentzPotential LorentzPotential::zero(const Grid1D& grid) {
    const auto z = GridFunction::constant(grid, 0.0);
    return LorentzPotential(z, z, z, z);
}

LorentzPotential LorentzPotential::time_vector(const GridFunction& vt) {
    const auto z = GridFunction::constant(vt.grid(), 0.0);
    return LorentzPotential(vt, z, z, z);
}

LorentzPotential LorentzPotential::scalar(const GridFunction& vs) {
    const auto z = GridFunction::constant(vs.grid(), 0.0);
    return LorentzPotential(z, z, vs, z);
}

bool LorentzPotential::all_real(double tol) const {
    return v_t.is_real(tol) && v_sp.is_real(tol) && v_s.is_real(tol) && v_p.is_real(tol);
}

GammaRep::GammaRep(const Mat2& g0, const Mat2& g1) : g0_(g0), g1_(g1), g5_(g0 * g1) {}

GammaRep GammaRep::standard() {
    Mat2 s1, s2;
    s1 << 0.0, 1.0, 1.0, 0.0;
    s2 << 0.0, -I, I, 0.0;
    return GammaRep(s1, -I * s2);
}

GammaRep GammaRep::from(const Mat2& gamma0, const Mat2& gamma1) {
    GammaRep rep(gamma0, gamma1);
    const double defect = rep.clifford_defect();
    if (defect > 1e-12) {
        std::ostringstream os;
        os << "gamma matrices violate the Clifford algebra (defect " << defect << ")";
        throw std::invalid_argument(os.str());
    }
    if (entry_max(gamma0.adjoint() - gamma0) > 1e-12)
        throw std::invalid_argument("gamma0 must be Hermitian");
    return rep;
}

GammaRep GammaRep::transformed(const Mat2& s) const {
    if (entry_max(s * s.adjoint() - Mat2::Identity()) > 1e-12)
        throw std::invalid_argument("representation change requires a unitary matrix");
    return from(s * g0_ * s.adjoint(), s * g1_ * s.adjoint());
}

double GammaRep::clifford_defect() const {
    const Mat2 id = Mat2::Identity();
    double d = entry_max(g0_ * g0_ + g0_ * g0_ - 2.0 * id);
    d = std::max(d, entry_max(g1_ * g1_ + g1_ * g1_ + 2.0 * id));
    d = std::max(d, entry_max(g0_ * g1_ + g1_ * g0_));
    return d;
}

Mat2 assemble_potential_matrix(const LorentzPotential& pot, const GammaRep& rep, int node) {
    return rep.gamma0() * pot.v_t[node] + rep.gamma1() * pot.v_sp[node] + Mat2::Identity() * pot.v_s[node] -
           I * rep.gamma5() * pot.v_p[node];
}

double gamma0_hermiticity_residual(const LorentzPotential& pot, const GammaRep& rep) {
    double r = 0.0;
    for (int j = 0; j < pot.grid().size(); ++j) {
        const Mat2 g0v = rep.gamma0() * assemble_potential_matrix(pot, rep, j);
        r = std::max(r, entry_max(g0v.adjoint() - g0v));
    }
    return r;
}

}  // namespace ptdirac
