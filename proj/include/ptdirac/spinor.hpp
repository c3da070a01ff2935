#pragma once

#include "ptdirac/grid.hpp"

namespace ptdirac {

/// Two-component eigenfunction phi = (phi_+, phi_-) with its energy.
struct Spinor {
    GridFunction plus;
    GridFunction minus;
    cplx energy;

    Spinor(GridFunction plus_component, GridFunction minus_component, cplx e);

    const Grid1D& grid() const { return plus.grid(); }
    /// Discrete l2 norm sqrt(sum |phi_+|^2 + |phi_-|^2) over all nodes.
    double l2_norm() const;
};

}  // namespace ptdirac
