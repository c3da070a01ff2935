#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace ptdirac {

using cplx = std::complex<double>;

enum class Boundary { dirichlet, periodic };

const char* to_string(Boundary b);

/// Closed range of node indices [first, last].
struct NodeRange {
    int first = 0;
    int last = 0;
    int count() const { return last - first + 1; }
};

/// Uniform 1D grid. Dirichlet grids include both endpoints as nodes;
/// periodic grids cover [x_min, x_max) with x_max identified with x_min.
class Grid1D {
public:
    Grid1D(double x_min, double x_max, int n_points, Boundary boundary);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    int size() const { return n_; }
    double spacing() const { return h_; }
    Boundary boundary() const { return boundary_; }
    bool periodic() const { return boundary_ == Boundary::periodic; }

    double node(int j) const { return x_min_ + j * h_; }
    std::vector<double> nodes() const;

    /// Quadrature weight of node j (trapezoid for dirichlet, equal weights for periodic).
    double weight(int j) const;

    /// Nodes nearest to a and b; requires x_min <= a < b <= x_max.
    NodeRange window(double a, double b) const;
    NodeRange all_nodes() const { return {0, n_ - 1}; }

    /// Index of the node at -x_j. Requires a grid symmetric about the origin.
    int mirror(int j) const;
    bool symmetric_about_origin(double rel_tol = 1e-12) const;

    bool operator==(const Grid1D&) const = default;

private:
    double x_min_;
    double x_max_;
    int n_;
    double h_;
    Boundary boundary_;
};

Grid1D build_grid(double x_min, double x_max, int n_points, Boundary boundary);

/// Complex samples of a function on a Grid1D; values are always finite.
class GridFunction {
public:
    GridFunction(Grid1D grid, std::vector<cplx> values);

    static GridFunction constant(const Grid1D& grid, cplx value);
    static GridFunction sample(const Grid1D& grid, const std::function<cplx(double)>& f);

    const Grid1D& grid() const { return grid_; }
    std::span<const cplx> values() const { return values_; }
    int size() const { return static_cast<int>(values_.size()); }
    cplx operator[](int j) const { return values_[static_cast<std::size_t>(j)]; }

    double max_abs() const;
    bool is_real(double tol = 0.0) const;

    GridFunction conj() const;
    GridFunction operator+(const GridFunction& o) const;
    GridFunction operator-(const GridFunction& o) const;
    /// Pointwise product.
    GridFunction operator*(const GridFunction& o) const;
    GridFunction operator*(cplx s) const;

private:
    Grid1D grid_;
    std::vector<cplx> values_;
};

inline GridFunction operator*(cplx s, const GridFunction& f) { return f * s; }

enum class DiffScheme { central, forward, backward, second_central };

/// Finite-difference derivative. Periodic grids wrap; dirichlet endpoints use
/// one-sided second-order stencils for central and second_central.
GridFunction differentiate(const GridFunction& f, DiffScheme scheme);

/// Trapezoid (dirichlet) or rectangle (periodic) rule over the whole grid.
cplx integrate(const GridFunction& f);

/// Trapezoid rule over a node window.
cplx integrate(const GridFunction& f, NodeRange window);

}  // namespace ptdirac
