#include "ptdirac/dirac_operator.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ptdirac {

namespace {

const cplx I{0.0, 1.0};

void require_same_grid(const Grid1D& grid, const GridFunction& f, const char* what) {
    if (!(f.grid() == grid)) {
        std::ostringstream os;
        os << "operator: " << what << " is sampled on a different grid";
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

const char* to_string(DiracScheme s) {
    return s == DiracScheme::central ? "central" : "central_wilson";
}

DiracOperator::DiracOperator(const Grid1D& grid, const LorentzPotential& potential, const GridFunction& mass,
                             DiracScheme scheme, double wilson_r, const GammaRep& rep)
    : grid_(grid),
      potential_(potential),
      mass_(mass),
      scheme_(scheme),
      wilson_r_(scheme == DiracScheme::central_wilson ? wilson_r : 0.0),
      rep_(rep),
      n_unknown_(grid.periodic() ? grid.size() : grid.size() - 2) {
    require_same_grid(grid, potential.v_t, "potential");
    require_same_grid(grid, mass, "mass");
    if (!(wilson_r >= 0.0) || !std::isfinite(wilson_r))
        throw std::invalid_argument("operator: wilson_r must be finite and >= 0");

    const int n = n_unknown_;
    const int first = first_unknown_node();
    const double h = grid.spacing();
    const Mat2 kinetic = -I * rep.gamma0() * rep.gamma1();
    const Mat2& g0 = rep.gamma0();

    // Stencil couplings for a neighbour offset of -1, 0, +1. The derivative
    // part multiplies `kinetic`, the Wilson part multiplies gamma0.
    const double d_coef[3] = {-1.0 / (2.0 * h), 0.0, 1.0 / (2.0 * h)};
    const double w_scale = -wilson_r_ / (2.0 * h);
    const double w_coef[3] = {w_scale, -2.0 * w_scale, w_scale};

    matrix_ = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        const int node = first + i;
        const Mat2 local = g0 * (mass[node] * Mat2::Identity() + assemble_potential_matrix(potential, rep, node));
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) matrix_(a * n + i, b * n + i) += local(a, b);

        for (int off = -1; off <= 1; ++off) {
            int col = i + off;
            if (grid.periodic())
                col = (col + n) % n;
            else if (col < 0 || col >= n)
                continue;  // wall node, phi = 0
            const Mat2 block = kinetic * d_coef[off + 1] + g0 * w_coef[off + 1];
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) matrix_(a * n + i, b * n + col) += block(a, b);
        }
    }
}

Spinor DiracOperator::to_spinor(const Eigen::VectorXcd& v, cplx energy) const {
    if (v.size() != dimension()) throw std::invalid_argument("operator: vector size does not match the operator");
    std::vector<cplx> p(static_cast<std::size_t>(grid_.size()), 0.0), m(p.size(), 0.0);
    const int first = first_unknown_node();
    for (int i = 0; i < n_unknown_; ++i) {
        p[static_cast<std::size_t>(first + i)] = v(i);
        m[static_cast<std::size_t>(first + i)] = v(n_unknown_ + i);
    }
    return Spinor(GridFunction(grid_, std::move(p)), GridFunction(grid_, std::move(m)), energy);
}

Eigen::VectorXcd DiracOperator::to_vector(const Spinor& s) const {
    if (!(s.grid() == grid_)) throw std::invalid_argument("operator: spinor lives on a different grid");
    Eigen::VectorXcd v(dimension());
    const int first = first_unknown_node();
    for (int i = 0; i < n_unknown_; ++i) {
        v(i) = s.plus[first + i];
        v(n_unknown_ + i) = s.minus[first + i];
    }
    return v;
}

DiracOperator assemble_hamiltonian(const Grid1D& grid, const LorentzPotential& potential, const GridFunction& mass,
                                   DiracScheme scheme, double wilson_r, const GammaRep& rep) {
    return DiracOperator(grid, potential, mass, scheme, wilson_r, rep);
}

double hermiticity_of_operator(const DiracOperator& op) {
    const Eigen::MatrixXcd& h = op.matrix();
    if (h.size() == 0) return 0.0;
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

ReducedResidual reduced_equations_rhs(cplx energy, const Spinor& phi, const LorentzPotential& pot,
                                      const GridFunction& mass, DiracScheme scheme, double wilson_r) {
    const Grid1D& g = phi.grid();
    require_same_grid(g, pot.v_t, "potential");
    require_same_grid(g, mass, "mass");
    const int n = g.size();
    const double h = g.spacing();
    const double r = scheme == DiracScheme::central_wilson ? wilson_r : 0.0;

    auto value = [&](const GridFunction& f, int j) -> cplx {
        if (g.periodic()) return f[(j + n) % n];
        return f[j];
    };
    auto deriv = [&](const GridFunction& f, int j) { return (value(f, j + 1) - value(f, j - 1)) / (2.0 * h); };
    auto wilson = [&](const GridFunction& f, int j) {
        return -r / (2.0 * h) * (value(f, j + 1) - 2.0 * f[j] + value(f, j - 1));
    };

    std::vector<cplx> rp(static_cast<std::size_t>(n)), rm(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const auto idx = static_cast<std::size_t>(j);
        if (!g.periodic() && (j == 0 || j == n - 1)) {
            rp[idx] = phi.plus[j];
            rm[idx] = phi.minus[j];
            continue;
        }
        const cplx p = phi.plus[j];
        const cplx m = phi.minus[j];
        const cplx scalar = mass[j] + pot.v_s[j];
        rp[idx] = -I * deriv(phi.plus, j) + (pot.v_t[j] + pot.v_sp[j]) * p + (scalar + I * pot.v_p[j]) * m +
                  wilson(phi.minus, j) - energy * p;
        rm[idx] = I * deriv(phi.minus, j) + (pot.v_t[j] - pot.v_sp[j]) * m + (scalar - I * pot.v_p[j]) * p +
                  wilson(phi.plus, j) - energy * m;
    }

    double num = 0.0;
    for (int j = 0; j < n; ++j) num += std::norm(rp[static_cast<std::size_t>(j)]) + std::norm(rm[static_cast<std::size_t>(j)]);
    const double den = phi.l2_norm();
    ReducedResidual out{GridFunction(g, std::move(rp)), GridFunction(g, std::move(rm)), 0.0};
    out.relative_norm = den > 0.0 ? std::sqrt(num) / den : std::sqrt(num);
    return out;
}

}  // namespace ptdirac
