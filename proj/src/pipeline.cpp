#include "ptdirac/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ptdirac::cli {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const SolverError&) {
        throw;
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("stage ") + name + ": " + e.what());
    }
}

void pt_stage(RunReport& r, const Problem& p) {
    r.pt_applicable = p.grid.symmetric_about_origin();
    if (r.pt_applicable) {
        const double tol = r.config.pt_tol;
        r.pt_checks = {{"mass", check_pt_symmetry(p.mass, tol)},
                       {"v_t", check_pt_symmetry(p.potential.v_t, tol)},
                       {"v_sp", check_pt_symmetry(p.potential.v_sp, tol)},
                       {"v_s", check_pt_symmetry(p.potential.v_s, tol)},
                       {"v_p", check_pt_symmetry(p.potential.v_p, tol)}};
    }
    r.gamma0_residual = gamma0_hermiticity_residual(p.potential, GammaRep::standard());

    CheckOutcome pt{"pt_symmetry", r.config.strict_pt || r.mode == Mode::check_pt, false, ""};
    if (!r.pt_applicable) {
        pt.detail = "grid is not symmetric about x = 0";
    } else {
        pt.passed = true;
        for (const auto& c : r.pt_checks) {
            if (!c.check.symmetric) {
                pt.passed = false;
                pt.detail += (pt.detail.empty() ? "" : "; ") + c.channel + " residual " + fmt(c.check.residual);
            }
        }
        if (pt.passed) pt.detail = "all channels satisfy f(-x) = conj f(x)";
    }
    r.checks.push_back(pt);

    // Informational: a complex potential is expected to break conservation.
    r.checks.push_back({"current_conservation", false, r.gamma0_residual <= r.config.pt_tol,
                        "gamma0-Hermiticity residual " + fmt(r.gamma0_residual)});
}

}  // namespace

const char* to_string(Mode m) {
    switch (m) {
    case Mode::spectrum: return "spectrum";
    case Mode::diagnose: return "diagnose";
    case Mode::check_pt: return "check-pt";
    }
    return "diagnose";
}

int RunReport::exit_code() const { return failed_checks().empty() ? 0 : 2; }

std::vector<std::string> RunReport::failed_checks() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
        if (c.enabled && !c.passed) out.push_back(c.name);
    return out;
}

RunReport run(const RunConfig& config, Mode mode) {
    RunReport r;
    r.mode = mode;
    r.config = config;

    const Problem p = stage("validate", [&] { return materialize(config); });
    r.spacing = p.grid.spacing();
    stage("pt-check", [&] { pt_stage(r, p); });
    if (mode == Mode::check_pt) return r;

    const DiracOperator op = stage("assemble", [&] {
        return assemble_hamiltonian(p.grid, p.potential, p.mass, config.scheme, config.wilson_r);
    });
    r.operator_hermiticity = hermiticity_of_operator(op);

    try {
        r.spectrum = solve_spectrum(op, config.tol, config.max_pairs, config.hermitian_fast_path);
    } catch (const SolverError& e) {
        r.checks.push_back({"eigen_residual", true, false, std::string("stage solve: ") + e.what()});
        return r;
    }
    r.solved = true;
    r.checks.push_back({"eigen_residual", true, true,
                        "all returned pairs have residual <= " + fmt(config.tol)});

    stage("classify", [&] {
        r.spectrum = classify_reality(std::move(r.spectrum), config.reality_tol);
        r.summary = summarize(r.spectrum.all_eigenvalues, r.spectrum.all_classification);
    });
    r.checks.push_back({"conjugate_pairing", false, r.summary.unmatched == 0,
                        std::to_string(r.summary.unmatched) + " unmatched complex eigenvalues"});

    stage("reduced-equations", [&] {
        const double bound = config.oracle_factor * config.tol;
        double worst = 0.0;
        for (const auto& s : r.spectrum.eigenpairs) {
            const double res =
                reduced_equations_rhs(s.energy, s, p.potential, p.mass, config.scheme, config.wilson_r).relative_norm;
            r.reduced_residuals.push_back(res);
            worst = std::max(worst, res);
        }
        r.checks.push_back({"reduced_equations", true, worst <= bound,
                            "max relative residual " + fmt(worst) + " (bound " + fmt(bound) + ")"});
    });
    if (mode == Mode::spectrum) return r;

    stage("diagnostics", [&] {
        r.spectrum = normalize_all(std::move(r.spectrum));
        const GammaRep rep = GammaRep::standard();

        for (int k = 0; k < r.spectrum.size(); ++k) {
            const Spinor& s = r.spectrum.eigenpairs[static_cast<std::size_t>(k)];
            const CurrentDensity j = current_density(s, rep);
            const GridFunction dj1 = differentiate(j.j1, DiffScheme::central);
            const GridFunction res = continuity_residual(s, p.potential, rep);
            r.continuity.push_back({k, res.max_abs(), dj1.max_abs(), 2.0 * s.energy.imag()});
            if (k == 0) {
                for (int i = 0; i < p.grid.size(); ++i)
                    r.continuity_profile.push_back({p.grid.node(i), j.j0[i].real(), j.j1[i].real(), dj1[i].real(),
                                                    res[i].real(), res[i].imag()});
            }
        }

        r.gram = gram_matrix(r.spectrum, rep);
        double off = 0.0;
        for (Eigen::Index i = 0; i < r.gram.rows(); ++i)
            for (Eigen::Index j = 0; j < r.gram.cols(); ++j)
                if (i != j) off = std::max(off, std::abs(r.gram(i, j)));
        r.checks.push_back({"gram_orthogonality", false, off <= 1e-8, "max off-diagonal " + fmt(off)});

        BalanceOptions opts;
        opts.window = config.window;
        opts.restore_tol = config.restore_tol;
        opts.identity_tol = config.identity_tol;
        const int states = std::min(config.balance_states, r.spectrum.size());
        double worst = 0.0;
        bool ok = true;
        for (int k = 0; k < states; ++k)
            for (int kp = 0; kp < states; ++kp) {
                if (k == kp) continue;
                r.balance.push_back(orthogonality_balance(r.spectrum, k, kp, p.potential, rep, opts));
                worst = std::max(worst, r.balance.back().identity_residual);
                ok = ok && r.balance.back().identity_ok;
            }
        r.checks.push_back({"balance_identity", true, ok,
                            std::to_string(r.balance.size()) + " pairs, max identity residual " + fmt(worst)});
    });
    r.diagnosed = true;
    return r;
}

int SweepResult::exit_code() const {
    int code = 0;
    for (const auto& row : rows) code = std::max(code, row.exit_code);
    return code;
}

SweepResult sweep(const RunConfig& config, const std::string& parameter, const std::vector<std::string>& values,
                  Mode mode) {
    if (!config.entries.count(parameter))
        (void)with_override(config, parameter, "");  // throws a ConfigError naming the nearest key

    SweepResult out;
    out.parameter = parameter;
    for (const auto& value : values) {
        SweepRow row;
        row.value = value;
        try {
            const RunConfig c = with_override(config, parameter, value);
            RunReport rep = run(c, mode);
            row.exit_code = rep.exit_code();
            row.ok = row.exit_code == 0;
            if (!row.ok) {
                for (const auto& n : rep.failed_checks()) row.error += (row.error.empty() ? "" : ";") + n;
            }
            if (rep.solved) {
                const auto& w = rep.spectrum.all_eigenvalues;
                if (!w.empty()) row.lowest_abs_imag = std::abs(w.front().imag());
                row.max_abs_imag = rep.summary.max_abs_imag;
                row.complex_pairs = rep.summary.complex_pairs;
            }
            for (const auto& b : rep.balance) row.max_identity_residual = std::max(row.max_identity_residual, b.identity_residual);
            out.reports.emplace_back(std::move(rep));
        } catch (const ConfigError& e) {
            row.exit_code = 1;
            row.error = e.what();
            out.reports.emplace_back(std::nullopt);
        } catch (const std::exception& e) {
            row.exit_code = 2;
            row.error = e.what();
            out.reports.emplace_back(std::nullopt);
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace ptdirac::cli
