#include "ptdirac/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ptdirac {

const char* to_string(Boundary b) {
    return b == Boundary::periodic ? "periodic" : "dirichlet";
}

Grid1D::Grid1D(double x_min, double x_max, int n_points, Boundary boundary)
    : x_min_(x_min), x_max_(x_max), n_(n_points), h_(0.0), boundary_(boundary) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
        std::ostringstream os;
        os << "grid: domain must satisfy x_min < x_max (got x_min=" << x_min
           << ", x_max=" << x_max << ")";
        throw std::invalid_argument(os.str());
    }
    if (n_points < 8) {
        std::ostringstream os;
        os << "grid: n_points must be >= 8 (got " << n_points << ")";
        throw std::invalid_argument(os.str());
    }
    h_ = periodic() ? (x_max - x_min) / n_points : (x_max - x_min) / (n_points - 1);
}

Grid1D build_grid(double x_min, double x_max, int n_points, Boundary boundary) {
    return Grid1D(x_min, x_max, n_points, boundary);
}

std::vector<double> Grid1D::nodes() const {
    std::vector<double> x(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) x[static_cast<std::size_t>(j)] = node(j);
    return x;
}

double Grid1D::weight(int j) const {
    if (!periodic() && (j == 0 || j == n_ - 1)) return 0.5 * h_;
    return h_;
}

NodeRange Grid1D::window(double a, double b) const {
    const double upper = periodic() ? node(n_ - 1) : x_max_;
    if (!(a < b) || a < x_min_ - 1e-12 * h_ || b > upper + 1e-12 * h_) {
        std::ostringstream os;
        os << "grid: window [" << a << ", " << b << "] must be increasing and lie inside ["
           << x_min_ << ", " << upper << "]";
        throw std::invalid_argument(os.str());
    }
    NodeRange r;
    r.first = std::clamp(static_cast<int>(std::lround((a - x_min_) / h_)), 0, n_ - 1);
    r.last = std::clamp(static_cast<int>(std::lround((b - x_min_) / h_)), 0, n_ - 1);
    if (r.last - r.first < 2)
        throw std::invalid_argument("grid: window must span at least three nodes");
    return r;
}

bool Grid1D::symmetric_about_origin(double rel_tol) const {
    const double scale = std::max({1.0, std::abs(x_min_), std::abs(x_max_)});
    return std::abs(x_min_ + x_max_) <= rel_tol * scale;
}

int Grid1D::mirror(int j) const {
    if (!symmetric_about_origin())
        throw std::invalid_argument("grid: reflection x -> -x requires x_min = -x_max");
    if (periodic()) return (n_ - j) % n_;
    return n_ - 1 - j;
}

GridFunction::GridFunction(Grid1D grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_.size()) {
        std::ostringstream os;
        os << "grid function: expected " << grid_.size() << " values, got " << values_.size();
        throw std::invalid_argument(os.str());
    }
    for (std::size_t j = 0; j < values_.size(); ++j) {
        if (!std::isfinite(values_[j].real()) || !std::isfinite(values_[j].imag())) {
            std::ostringstream os;
            os << "grid function: non-finite value at node " << j << " (x=" << grid_.node(static_cast<int>(j))
               << ")";
            throw std::invalid_argument(os.str());
        }
    }
}

GridFunction GridFunction::constant(const Grid1D& grid, cplx value) {
    return GridFunction(grid, std::vector<cplx>(static_cast<std::size_t>(grid.size()), value));
}

GridFunction GridFunction::sample(const Grid1D& grid, const std::function<cplx(double)>& f) {
    std::vector<cplx> v(static_cast<std::size_t>(grid.size()));
    for (int j = 0; j < grid.size(); ++j) v[static_cast<std::size_t>(j)] = f(grid.node(j));
    return GridFunction(grid, std::move(v));
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool GridFunction::is_real(double tol) const {
    return std::all_of(values_.begin(), values_.end(),
                       [tol](const cplx& v) { return std::abs(v.imag()) <= tol; });
}

GridFunction GridFunction::conj() const {
    std::vector<cplx> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(), [](const cplx& z) { return std::conj(z); });
    return GridFunction(grid_, std::move(v));
}

namespace {

template <typename Op>
GridFunction combine(const GridFunction& a, const GridFunction& b, Op op) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("grid function: operands live on different grids");
    std::vector<cplx> v(static_cast<std::size_t>(a.size()));
    for (int j = 0; j < a.size(); ++j) v[static_cast<std::size_t>(j)] = op(a[j], b[j]);
    return GridFunction(a.grid(), std::move(v));
}

}  // namespace

GridFunction GridFunction::operator+(const GridFunction& o) const {
    return combine(*this, o, std::plus<>());
}
GridFunction GridFunction::operator-(const GridFunction& o) const {
    return combine(*this, o, std::minus<>());
}
GridFunction GridFunction::operator*(const GridFunction& o) const {
    return combine(*this, o, std::multiplies<>());
}
GridFunction GridFunction::operator*(cplx s) const {
    std::vector<cplx> v(values_);
    for (auto& z : v) z *= s;
    return GridFunction(grid_, std::move(v));
}

GridFunction differentiate(const GridFunction& f, DiffScheme scheme) {
    const Grid1D& g = f.grid();
    const int n = g.size();
    const double h = g.spacing();
    auto at = [&](int j) { return f[g.periodic() ? (j % n + n) % n : j]; };
    std::vector<cplx> d(static_cast<std::size_t>(n));

    for (int j = 0; j < n; ++j) {
        const bool left = !g.periodic() && j == 0;
        const bool right = !g.periodic() && j == n - 1;
        cplx v;
        switch (scheme) {
        case DiffScheme::central:
            if (left)
                v = (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
            else if (right)
                v = (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * h);
            else
                v = (at(j + 1) - at(j - 1)) / (2.0 * h);
            break;
        case DiffScheme::forward:
            v = right ? (at(j) - at(j - 1)) / h : (at(j + 1) - at(j)) / h;
            break;
        case DiffScheme::backward:
            v = left ? (at(j + 1) - at(j)) / h : (at(j) - at(j - 1)) / h;
            break;
        case DiffScheme::second_central:
            if (left)
                v = (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) / (h * h);
            else if (right)
                v = (2.0 * at(n - 1) - 5.0 * at(n - 2) + 4.0 * at(n - 3) - at(n - 4)) / (h * h);
            else
                v = (at(j + 1) - 2.0 * at(j) + at(j - 1)) / (h * h);
            break;
        }
        d[static_cast<std::size_t>(j)] = v;
    }
    return GridFunction(g, std::move(d));
}

cplx integrate(const GridFunction& f) {
    const Grid1D& g = f.grid();
    // Sum with unit weights first, then scale by L / intervals, so constants integrate exactly.
    cplx s = 0.0;
    for (int j = 0; j < g.size(); ++j) s += (g.weight(j) == g.spacing() ? 1.0 : 0.5) * f[j];
    const int intervals = g.periodic() ? g.size() : g.size() - 1;
    return s * (g.x_max() - g.x_min()) / static_cast<double>(intervals);
}

cplx integrate(const GridFunction& f, NodeRange w) {
    const double h = f.grid().spacing();
    if (w.first < 0 || w.last >= f.size() || w.last <= w.first)
        throw std::invalid_argument("integrate: node window out of range");
    cplx s = 0.5 * (f[w.first] + f[w.last]);
    for (int j = w.first + 1; j < w.last; ++j) s += f[j];
    return s * h;
}

}  // namespace ptdirac
