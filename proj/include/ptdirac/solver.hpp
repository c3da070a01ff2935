#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptdirac/dirac_operator.hpp"
#include "ptdirac/spinor.hpp"

namespace ptdirac {

enum class Reality { real, complex_pair_member, unmatched_complex };

const char* to_string(Reality r);

struct SpectrumResult {
    /// Returned eigenpairs (unnormalized), sorted by |Re E| then Im E.
    std::vector<Spinor> eigenpairs;
    /// ||H phi - E phi|| / ||phi|| for each returned pair.
    std::vector<double> residuals;
    /// Tags of the returned pairs; filled by classify_reality.
    std::vector<Reality> classification;
    /// Whole spectrum of the operator in the same order, with its tags.
    std::vector<cplx> all_eigenvalues;
    std::vector<Reality> all_classification;

    double solver_tolerance = 1e-9;
    DiracScheme scheme = DiracScheme::central_wilson;
    double wilson_r = 1.0;
    bool hermitian_path = false;
    int matrix_dimension = 0;

    int size() const { return static_cast<int>(eigenpairs.size()); }
};

/// Thrown when an eigenpair misses the residual bound.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, std::vector<double> failing_residuals)
        : std::runtime_error(what), residuals_(std::move(failing_residuals)) {}
    const std::vector<double>& residuals() const { return residuals_; }

private:
    std::vector<double> residuals_;
};

/// Sort order used for spectra: |Re E| ascending, then Im E, then Re E.
bool spectrum_order(const cplx& a, const cplx& b);

/// Dense eigen-decomposition. Eigenvalues of the whole matrix come from
/// Hessenberg reduction and shifted QR; eigenvectors are computed only for the
/// max_pairs lowest eigenvalues. Exactly Hermitian operators take a Hermitian
/// path. Throws SolverError if any returned pair has residual > tol.
SpectrumResult solve_spectrum(const DiracOperator& op, double tol = 1e-9, int max_pairs = 20,
                              bool hermitian_fast_path = true);

/// Tag each eigenvalue real when |Im E| <= tol * max(1, |Re E|); the rest are
/// matched greedily into conjugate pairs by |E_i - conj(E_j)|, leftovers are
/// flagged as unmatched.
std::vector<Reality> classify_eigenvalues(std::span<const cplx> eigenvalues, double tol);

/// Applies classify_eigenvalues to the whole spectrum and to the returned pairs.
SpectrumResult classify_reality(SpectrumResult result, double tol);

struct ClassificationSummary {
    int real = 0;
    int complex_pairs = 0;
    int unmatched = 0;
    double max_abs_imag = 0.0;
};

ClassificationSummary summarize(std::span<const cplx> eigenvalues, std::span<const Reality> tags);

// ---------------------------------------------------------------------------
// Shooting

struct ShootingOptions {
    int max_iterations = 60;
    /// Iterates may not leave the disc |E - E_guess| <= search_radius.
    double search_radius = 0.5;
    double energy_tol = 1e-12;
};

struct ShootingResult {
    cplx energy;
    Spinor spinor;
    int iterations = 0;
};

class ShootingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Determinant of the two wall solutions at the matching node, for energy E.
/// Each wall solution starts from the hard-wall condition phi_+ = phi_- and
/// is propagated inward with classical RK4; coefficients between nodes are
/// obtained by four-point Lagrange interpolation.
cplx matching_determinant(const LorentzPotential& potential, const GridFunction& mass, cplx energy);

/// Root of the matching determinant near E_guess (secant for real guesses on
/// operators with real channels, Muller iteration otherwise) and the matched spinor.
ShootingResult shooting_solve(const Grid1D& grid, const LorentzPotential& potential, const GridFunction& mass,
                              cplx energy_guess, Boundary bc = Boundary::dirichlet,
                              const ShootingOptions& options = {});

}  // namespace ptdirac
