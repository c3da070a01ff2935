#include "ptdirac/spinor.hpp"

#include <cmath>
#include <stdexcept>

namespace ptdirac {

Spinor::Spinor(GridFunction plus_component, GridFunction minus_component, cplx e)
    : plus(std::move(plus_component)), minus(std::move(minus_component)), energy(e) {
    if (!(plus.grid() == minus.grid()))
        throw std::invalid_argument("spinor: components must share a grid");
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
        throw std::invalid_argument("spinor: energy must be finite");
}

double Spinor::l2_norm() const {
    double s = 0.0;
    for (int j = 0; j < plus.size(); ++j) s += std::norm(plus[j]) + std::norm(minus[j]);
    return std::sqrt(s);
}

}  // namespace ptdirac
