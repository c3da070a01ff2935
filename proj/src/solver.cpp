#include "ptdirac/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <complex>
#include <lapacke.h>

namespace ptdirac {

namespace {

void check_info(lapack_int info, const char* routine) {
    if (info != 0) {
        std::ostringstream os;
        os << "eigensolver: LAPACK " << routine << " failed with info=" << info;
        throw SolverError(os.str(), {});
    }
}

std::vector<int> lowest_indices(const std::vector<cplx>& w, int count) {
    std::vector<int> idx(w.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return spectrum_order(w[static_cast<std::size_t>(a)], w[static_cast<std::size_t>(b)]);
    });
    idx.resize(static_cast<std::size_t>(std::min<int>(count, static_cast<int>(w.size()))));
    return idx;
}

struct RawPairs {
    std::vector<cplx> all;
    std::vector<cplx> values;
    Eigen::MatrixXcd vectors;
};

RawPairs hermitian_pairs(const Eigen::MatrixXcd& h, int max_pairs) {
    const lapack_int n = static_cast<lapack_int>(h.rows());
    RawPairs out;

    Eigen::MatrixXcd a = h;
    std::vector<double> w(static_cast<std::size_t>(n));
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(n));
    lapack_int found = 0;
    check_info(LAPACKE_zheevr(LAPACK_COL_MAJOR, 'N', 'A', 'U', n, a.data(), n, 0.0, 0.0, 0, 0, 0.0, &found,
                              w.data(), nullptr, 1, isuppz.data()),
               "zheevr");
    out.all.assign(w.begin(), w.begin() + found);

    // The lowest-|E| eigenvalues form a contiguous block of the ascending list.
    const std::vector<int> pick = lowest_indices(out.all, max_pairs);
    if (pick.empty()) return out;
    const auto [lo, hi] = std::minmax_element(pick.begin(), pick.end());
    const lapack_int il = *lo + 1, iu = *hi + 1;
    const lapack_int block = iu - il + 1;

    a = h;
    std::vector<double> wb(static_cast<std::size_t>(n));
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(n, block);
    check_info(LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'I', 'U', n, a.data(), n, 0.0, 0.0, il, iu, 0.0, &found,
                              wb.data(), z.data(), n, isuppz.data()),
               "zheevr");

    out.values.reserve(pick.size());
    out.vectors.resize(n, static_cast<Eigen::Index>(pick.size()));
    for (std::size_t k = 0; k < pick.size(); ++k) {
        const int col = pick[k] - (il - 1);
        out.values.push_back(wb[static_cast<std::size_t>(col)]);
        out.vectors.col(static_cast<Eigen::Index>(k)) = z.col(col);
    }
    return out;
}

RawPairs general_pairs(const Eigen::MatrixXcd& h, int max_pairs) {
    const lapack_int n = static_cast<lapack_int>(h.rows());
    RawPairs out;

    // Hessenberg reduction; `a` keeps the reflectors for the back-transform.
    Eigen::MatrixXcd a = h;
    std::vector<cplx> tau(static_cast<std::size_t>(std::max<lapack_int>(n - 1, 1)));
    check_info(LAPACKE_zgehrd(LAPACK_COL_MAJOR, n, 1, n, a.data(), n, tau.data()), "zgehrd");
    Eigen::MatrixXcd hess = a.triangularView<Eigen::Upper>();
    for (lapack_int j = 0; j + 1 < n; ++j) hess(j + 1, j) = a(j + 1, j);

    // Eigenvalues by shifted QR on a copy of the Hessenberg matrix.
    Eigen::MatrixXcd work = hess;
    std::vector<cplx> w(static_cast<std::size_t>(n));
    check_info(LAPACKE_zhseqr(LAPACK_COL_MAJOR, 'E', 'N', n, 1, n, work.data(), n, w.data(), nullptr, 1), "zhseqr");
    out.all = w;

    const std::vector<int> pick = lowest_indices(out.all, max_pairs);
    if (pick.empty()) return out;

    // Inverse iteration on the Hessenberg matrix for the selected eigenvalues.
    std::vector<lapack_logical> select(static_cast<std::size_t>(n), 0);
    for (int k : pick) select[static_cast<std::size_t>(k)] = 1;
    const lapack_int mm = static_cast<lapack_int>(pick.size());
    Eigen::MatrixXcd vr = Eigen::MatrixXcd::Zero(n, mm);  // LAPACKE NaN-checks this buffer
    std::vector<cplx> w_work = w;
    std::vector<lapack_int> ifaill(static_cast<std::size_t>(mm)), ifailr(static_cast<std::size_t>(mm));
    lapack_int m = 0;
    const lapack_int info = LAPACKE_zhsein(LAPACK_COL_MAJOR, 'R', 'N', 'N', select.data(), n, hess.data(), n,
                                           w_work.data(), nullptr, 1, vr.data(), n, mm, &m, ifaill.data(),
                                           ifailr.data());
    if (info < 0) check_info(info, "zhsein");
    check_info(LAPACKE_zunmhr(LAPACK_COL_MAJOR, 'L', 'N', n, mm, 1, n, a.data(), n, tau.data(), vr.data(), n),
               "zunmhr");

    // zhsein stores columns in increasing eigenvalue index order.
    std::vector<int> by_index = pick;
    std::sort(by_index.begin(), by_index.end());
    out.values.reserve(pick.size());
    out.vectors.resize(n, mm);
    for (std::size_t k = 0; k < pick.size(); ++k) {
        const auto col = std::distance(by_index.begin(), std::find(by_index.begin(), by_index.end(), pick[k]));
        out.values.push_back(w[static_cast<std::size_t>(pick[k])]);
        out.vectors.col(static_cast<Eigen::Index>(k)) = vr.col(static_cast<Eigen::Index>(col));
    }
    return out;
}

}  // namespace

const char* to_string(Reality r) {
    switch (r) {
    case Reality::real: return "real";
    case Reality::complex_pair_member: return "complex_pair_member";
    case Reality::unmatched_complex: return "unmatched_complex";
    }
    return "unknown";
}

bool spectrum_order(const cplx& a, const cplx& b) {
    const double ra = std::abs(a.real()), rb = std::abs(b.real());
    if (ra != rb) return ra < rb;
    if (a.imag() != b.imag()) return a.imag() < b.imag();
    return a.real() < b.real();
}

SpectrumResult solve_spectrum(const DiracOperator& op, double tol, int max_pairs, bool hermitian_fast_path) {
    if (!(tol > 0.0)) throw std::invalid_argument("solve_spectrum: tol must be positive");
    if (max_pairs < 1) throw std::invalid_argument("solve_spectrum: max_pairs must be >= 1");

    const Eigen::MatrixXcd& h = op.matrix();
    SpectrumResult result;
    result.solver_tolerance = tol;
    result.scheme = op.scheme();
    result.wilson_r = op.wilson_r();
    result.matrix_dimension = static_cast<int>(h.rows());
    result.hermitian_path = hermitian_fast_path && hermiticity_of_operator(op) == 0.0;

    RawPairs raw = result.hermitian_path ? hermitian_pairs(h, max_pairs) : general_pairs(h, max_pairs);

    result.all_eigenvalues = raw.all;
    std::stable_sort(result.all_eigenvalues.begin(), result.all_eigenvalues.end(), spectrum_order);

    std::vector<double> failing;
    std::ostringstream failures;
    for (std::size_t k = 0; k < raw.values.size(); ++k) {
        Eigen::VectorXcd v = raw.vectors.col(static_cast<Eigen::Index>(k));
        const double nv = v.norm();
        const double res = nv > 0.0 ? (h * v - raw.values[k] * v).norm() / nv : INFINITY;
        if (!(res <= tol)) {
            failing.push_back(res);
            failures << " E=" << raw.values[k] << " residual=" << res << ";";
        }
        result.residuals.push_back(res);
        result.eigenpairs.push_back(op.to_spinor(v, raw.values[k]));
    }
    if (!failing.empty())
        throw SolverError("eigensolver: residual bound " + std::to_string(tol) + " missed for" + failures.str(),
                          failing);

    return classify_reality(std::move(result), tol);
}

std::vector<Reality> classify_eigenvalues(std::span<const cplx> w, double tol) {
    std::vector<Reality> tags(w.size(), Reality::unmatched_complex);
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (std::abs(w[i].imag()) <= tol * std::max(1.0, std::abs(w[i].real())))
            tags[i] = Reality::real;
        else
            open.push_back(i);
    }

    struct Candidate {
        double distance;
        std::size_t i, j;
    };
    std::vector<Candidate> candidates;
    for (std::size_t a = 0; a < open.size(); ++a)
        for (std::size_t b = a + 1; b < open.size(); ++b) {
            const std::size_t i = open[a], j = open[b];
            const double d = std::abs(w[i] - std::conj(w[j]));
            if (d <= tol * std::max(1.0, std::abs(w[i]))) candidates.push_back({d, i, j});
        }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& x, const Candidate& y) { return x.distance < y.distance; });
    for (const auto& c : candidates) {
        if (tags[c.i] != Reality::unmatched_complex || tags[c.j] != Reality::unmatched_complex) continue;
        tags[c.i] = Reality::complex_pair_member;
        tags[c.j] = Reality::complex_pair_member;
    }
    return tags;
}

SpectrumResult classify_reality(SpectrumResult result, double tol) {
    result.all_classification = classify_eigenvalues(result.all_eigenvalues, tol);

    // Returned pairs inherit the tag of the matching entry of the full spectrum.
    result.classification.clear();
    std::vector<bool> used(result.all_eigenvalues.size(), false);
    for (const auto& pair : result.eigenpairs) {
        std::size_t best = 0;
        double best_d = INFINITY;
        for (std::size_t i = 0; i < result.all_eigenvalues.size(); ++i) {
            if (used[i]) continue;
            const double d = std::abs(result.all_eigenvalues[i] - pair.energy);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        if (best_d == INFINITY) {
            result.classification.push_back(
                classify_eigenvalues(std::span<const cplx>(&pair.energy, 1), tol).front());
            continue;
        }
        used[best] = true;
        result.classification.push_back(result.all_classification[best]);
    }
    return result;
}

ClassificationSummary summarize(std::span<const cplx> w, std::span<const Reality> tags) {
    ClassificationSummary s;
    for (std::size_t i = 0; i < w.size() && i < tags.size(); ++i) {
        s.max_abs_imag = std::max(s.max_abs_imag, std::abs(w[i].imag()));
        switch (tags[i]) {
        case Reality::real: ++s.real; break;
        case Reality::complex_pair_member: ++s.complex_pairs; break;
        case Reality::unmatched_complex: ++s.unmatched; break;
        }
    }
    s.complex_pairs /= 2;
    return s;
}

}  // namespace ptdirac
