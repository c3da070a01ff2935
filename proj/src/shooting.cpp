#include <array>
#include <cmath>
#include <sstream>

#include "ptdirac/solver.hpp"

namespace ptdirac {

namespace {

const cplx I{0.0, 1.0};

using State = std::array<cplx, 2>;

struct Coefficients {
    cplx vt, vsp, vs, vp, m;
};

State rhs(const Coefficients& c, cplx e, const State& y) {
    return {I * (e - c.vt - c.vsp) * y[0] - I * (c.m + c.vs + I * c.vp) * y[1],
            -I * (e - c.vt + c.vsp) * y[1] + I * (c.m + c.vs - I * c.vp) * y[0]};
}

State axpy(const State& y, cplx a, const State& k) { return {y[0] + a * k[0], y[1] + a * k[1]}; }

/// Channel samples at nodes and at cell midpoints.
class CoefficientTable {
public:
    CoefficientTable(const LorentzPotential& pot, const GridFunction& mass) : n_(mass.size()) {
        const GridFunction* fields[5] = {&pot.v_t, &pot.v_sp, &pot.v_s, &pot.v_p, &mass};
        node_.resize(static_cast<std::size_t>(n_));
        mid_.resize(static_cast<std::size_t>(n_ - 1));
        for (int j = 0; j < n_; ++j)
            node_[static_cast<std::size_t>(j)] = {(*fields[0])[j], (*fields[1])[j], (*fields[2])[j],
                                                  (*fields[3])[j], (*fields[4])[j]};
        for (int j = 0; j + 1 < n_; ++j) {
            cplx v[5];
            for (int f = 0; f < 5; ++f) v[f] = midpoint(*fields[f], j);
            mid_[static_cast<std::size_t>(j)] = {v[0], v[1], v[2], v[3], v[4]};
        }
    }

    const Coefficients& node(int j) const { return node_[static_cast<std::size_t>(j)]; }
    /// Coefficients at x_j + h/2.
    const Coefficients& mid(int j) const { return mid_[static_cast<std::size_t>(j)]; }

private:
    // Four-point Lagrange interpolation at the cell midpoint.
    cplx midpoint(const GridFunction& f, int j) const {
        if (j == 0) return 0.3125 * f[0] + 0.9375 * f[1] - 0.3125 * f[2] + 0.0625 * f[3];
        if (j == n_ - 2)
            return 0.3125 * f[n_ - 1] + 0.9375 * f[n_ - 2] - 0.3125 * f[n_ - 3] + 0.0625 * f[n_ - 4];
        return (-f[j - 1] + 9.0 * f[j] + 9.0 * f[j + 1] - f[j + 2]) / 16.0;
    }

    int n_;
    std::vector<Coefficients> node_;
    std::vector<Coefficients> mid_;
};

/// RK4 from `from` to `to` (either direction), recording the state at every node.
std::vector<State> propagate(const CoefficientTable& c, double h, cplx e, int from, int to, State y) {
    const int dir = to > from ? 1 : -1;
    const double step = dir * h;
    std::vector<State> path;
    path.reserve(static_cast<std::size_t>(std::abs(to - from) + 1));
    path.push_back(y);
    for (int j = from; j != to; j += dir) {
        const Coefficients& c0 = c.node(j);
        const Coefficients& cm = c.mid(dir > 0 ? j : j - 1);
        const Coefficients& c1 = c.node(j + dir);
        const State k1 = rhs(c0, e, y);
        const State k2 = rhs(cm, e, axpy(y, 0.5 * step, k1));
        const State k3 = rhs(cm, e, axpy(y, 0.5 * step, k2));
        const State k4 = rhs(c1, e, axpy(y, step, k3));
        for (int a = 0; a < 2; ++a) y[static_cast<std::size_t>(a)] += step / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
        if (!std::isfinite(std::abs(y[0])) || !std::isfinite(std::abs(y[1])))
            throw ShootingError("shooting: wall solution overflowed before reaching the matching node");
        path.push_back(y);
    }
    return path;
}

struct WallSolutions {
    std::vector<State> left;   // nodes 0..mid
    std::vector<State> right;  // nodes n-1..mid (reversed order)
    int mid = 0;
};

WallSolutions integrate_walls(const CoefficientTable& table, const Grid1D& grid, cplx e) {
    const int n = grid.size();
    WallSolutions w;
    w.mid = (n - 1) / 2;
    const State wall{1.0, 1.0};  // phi_+ = phi_- at a hard wall
    w.left = propagate(table, grid.spacing(), e, 0, w.mid, wall);
    w.right = propagate(table, grid.spacing(), e, n - 1, w.mid, wall);
    return w;
}

cplx determinant(const WallSolutions& w) {
    const State& l = w.left.back();
    const State& r = w.right.back();
    return l[0] * r[1] - l[1] * r[0];
}

void validate(const Grid1D& grid, const LorentzPotential& pot, const GridFunction& mass) {
    if (!(pot.grid() == grid) || !(mass.grid() == grid))
        throw std::invalid_argument("shooting: potential and mass must be sampled on the given grid");
    if (grid.periodic()) throw std::invalid_argument("shooting: only dirichlet (hard-wall) problems are supported");
}

}  // namespace

cplx matching_determinant(const LorentzPotential& pot, const GridFunction& mass, cplx energy) {
    validate(mass.grid(), pot, mass);
    const CoefficientTable table(pot, mass);
    return determinant(integrate_walls(table, mass.grid(), energy));
}

ShootingResult shooting_solve(const Grid1D& grid, const LorentzPotential& pot, const GridFunction& mass,
                              cplx guess, Boundary bc, const ShootingOptions& options) {
    if (bc != Boundary::dirichlet) throw std::invalid_argument("shooting: only dirichlet walls are supported");
    validate(grid, pot, mass);
    const CoefficientTable table(pot, mass);

    // Fixed normalization so the scaled determinant stays analytic in E.
    const WallSolutions at_guess = integrate_walls(table, grid, guess);
    const double scale = std::hypot(std::abs(at_guess.left.back()[0]), std::abs(at_guess.left.back()[1])) *
                         std::hypot(std::abs(at_guess.right.back()[0]), std::abs(at_guess.right.back()[1]));
    if (!(scale > 0.0)) throw ShootingError("shooting: wall solutions vanish at the matching node");
    auto f = [&](cplx e) { return determinant(integrate_walls(table, grid, e)) / scale; };

    const bool real_problem = guess.imag() == 0.0 && pot.all_real() && mass.is_real();
    const double delta = 1e-4 * std::max(1.0, std::abs(guess));
    auto converged = [&](cplx a, cplx b) { return std::abs(a - b) <= options.energy_tol * std::max(1.0, std::abs(b)); };
    auto out_of_range = [&](cplx e, int it) {
        std::ostringstream os;
        os << "shooting: no root within |E - " << guess << "| <= " << options.search_radius << " (iterate " << e
           << " after " << it << " iterations)";
        return ShootingError(os.str());
    };

    cplx root = guess;
    int iterations = 0;
    bool done = false;
    if (real_problem) {
        cplx e0 = guess, e1 = guess + delta;
        cplx f0 = f(e0), f1 = f(e1);
        if (f0 == cplx(0.0) && f1 == cplx(0.0)) throw ShootingError("shooting: matching determinant is identically zero");
        for (iterations = 1; iterations <= options.max_iterations; ++iterations) {
            if (f1 == f0) throw ShootingError("shooting: matching determinant is degenerate (secant slope is zero)");
            const cplx e2 = e1 - f1 * (e1 - e0) / (f1 - f0);
            if (!(std::abs(e2 - guess) <= options.search_radius)) throw out_of_range(e2, iterations);
            if (converged(e1, e2) || f1 == cplx(0.0)) {
                root = e2;
                done = true;
                break;
            }
            e0 = e1;
            f0 = f1;
            e1 = e2;
            f1 = f(e1);
        }
    } else {
        cplx x0 = guess - delta, x1 = guess + delta, x2 = guess;
        cplx f0 = f(x0), f1 = f(x1), f2 = f(x2);
        if (f0 == cplx(0.0) && f1 == cplx(0.0) && f2 == cplx(0.0))
            throw ShootingError("shooting: matching determinant is identically zero");
        for (iterations = 1; iterations <= options.max_iterations; ++iterations) {
            // Muller step through the last three iterates.
            const cplx q = (x2 - x1) / (x1 - x0);
            const cplx a = q * f2 - q * (1.0 + q) * f1 + q * q * f0;
            const cplx b = (2.0 * q + 1.0) * f2 - (1.0 + q) * (1.0 + q) * f1 + q * q * f0;
            const cplx c = (1.0 + q) * f2;
            const cplx disc = std::sqrt(b * b - 4.0 * a * c);
            const cplx den = std::abs(b + disc) >= std::abs(b - disc) ? b + disc : b - disc;
            if (den == cplx(0.0)) throw ShootingError("shooting: matching determinant is degenerate (Muller denominator is zero)");
            const cplx x3 = x2 - (x2 - x1) * 2.0 * c / den;
            if (!(std::abs(x3 - guess) <= options.search_radius)) throw out_of_range(x3, iterations);
            if (converged(x2, x3) || f2 == cplx(0.0)) {
                root = x3;
                done = true;
                break;
            }
            x0 = x1;
            f0 = f1;
            x1 = x2;
            f1 = f2;
            x2 = x3;
            f2 = f(x2);
        }
    }
    if (!done) {
        std::ostringstream os;
        os << "shooting: no root found within " << options.max_iterations << " iterations from E_guess=" << guess;
        throw ShootingError(os.str());
    }

    // Glue the two wall solutions at the matching node.
    const WallSolutions w = integrate_walls(table, grid, root);
    const State& l = w.left.back();
    const State& r = w.right.back();
    const double rr = std::norm(r[0]) + std::norm(r[1]);
    if (!(rr > 0.0)) throw ShootingError("shooting: right wall solution vanishes at the matching node");
    const cplx c = (l[0] * std::conj(r[0]) + l[1] * std::conj(r[1])) / rr;

    const int n = grid.size();
    std::vector<cplx> p(static_cast<std::size_t>(n)), m(static_cast<std::size_t>(n));
    for (int j = 0; j <= w.mid; ++j) {
        p[static_cast<std::size_t>(j)] = w.left[static_cast<std::size_t>(j)][0];
        m[static_cast<std::size_t>(j)] = w.left[static_cast<std::size_t>(j)][1];
    }
    for (int j = w.mid + 1; j < n; ++j) {
        const State& s = w.right[static_cast<std::size_t>(n - 1 - j)];
        p[static_cast<std::size_t>(j)] = c * s[0];
        m[static_cast<std::size_t>(j)] = c * s[1];
    }
    return {root, Spinor(GridFunction(grid, std::move(p)), GridFunction(grid, std::move(m)), root), iterations};
}

}  // namespace ptdirac
