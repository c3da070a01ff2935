#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ptdirac/config.hpp"
#include "ptdirac/diagnostics.hpp"
#include "ptdirac/solver.hpp"

namespace ptdirac::cli {

enum class Mode { spectrum, diagnose, check_pt };

const char* to_string(Mode m);

/// A named invariant check. Only enabled checks decide the exit status.
struct CheckOutcome {
    std::string name;
    bool enabled = false;
    bool passed = false;
    std::string detail;
};

struct ChannelPt {
    std::string channel;
    PtCheck check;
};

/// Per-eigenpair continuity figures.
struct ContinuityStats {
    int index = 0;
    double max_residual = 0.0;
    double max_flux_divergence = 0.0;
    double growth_rate = 0.0;  // 2 Im E
};

struct RunReport {
    Mode mode = Mode::diagnose;
    RunConfig config;
    double spacing = 0.0;

    bool solved = false;
    SpectrumResult spectrum;
    ClassificationSummary summary;
    std::vector<double> reduced_residuals;

    bool pt_applicable = false;
    std::vector<ChannelPt> pt_checks;
    double gamma0_residual = 0.0;
    double operator_hermiticity = 0.0;

    bool diagnosed = false;
    std::vector<ContinuityStats> continuity;
    /// Ground-state continuity profile: x, J0, J1, dJ1/dx, Re R, Im R.
    std::vector<std::array<double, 6>> continuity_profile;
    Eigen::MatrixXcd gram;
    std::vector<BalanceReport> balance;

    std::vector<CheckOutcome> checks;

    /// 0 when every enabled check passed, 2 otherwise.
    int exit_code() const;
    std::vector<std::string> failed_checks() const;
};

/// Executes the pipeline for one configuration. Module errors are rethrown
/// as std::runtime_error naming the failing stage.
RunReport run(const RunConfig& config, Mode mode = Mode::diagnose);

struct SweepRow {
    std::string value;
    bool ok = false;
    int exit_code = 0;
    std::string error;
    double lowest_abs_imag = 0.0;
    double max_abs_imag = 0.0;
    int complex_pairs = 0;
    double max_identity_residual = 0.0;
};

struct SweepResult {
    std::string parameter;
    std::vector<std::optional<RunReport>> reports;
    std::vector<SweepRow> rows;
    int exit_code() const;
};

/// Independent runs with one key ("section.key") replaced by each value.
/// Per-run failures are recorded in the rows and the sweep continues.
SweepResult sweep(const RunConfig& config, const std::string& parameter, const std::vector<std::string>& values,
                  Mode mode = Mode::diagnose);

}  // namespace ptdirac::cli
