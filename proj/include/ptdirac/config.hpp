#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ptdirac/dirac_operator.hpp"
#include "ptdirac/grid.hpp"
#include "ptdirac/lorentz.hpp"

namespace ptdirac::cli {

/// Invalid or incomplete run configuration (exit status 1).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json, both };

/// How one potential channel is produced.
struct ChannelSpec {
    enum class Kind { zero, constant, linear, abs, quadratic, i_constant, i_linear, pt_from_mass, file };
    Kind kind = Kind::zero;
    double parameter = 0.0;
    std::filesystem::path path;
};

/// Fully validated run configuration. `entries` holds every key (defaults
/// applied) in canonical "section.key" form and is what gets echoed.
struct RunConfig {
    double x_min = 0.0;
    double x_max = 0.0;
    int n_points = 0;
    Boundary boundary = Boundary::dirichlet;

    MassProfile mass;
    ChannelSpec v_t, v_sp, v_s, v_p;

    double tol = 1e-9;
    int max_pairs = 20;
    DiracScheme scheme = DiracScheme::central_wilson;
    double wilson_r = 1.0;
    double reality_tol = 1e-8;
    bool hermitian_fast_path = true;

    int balance_states = 6;
    double identity_tol = -1.0;  // negative: 100 h^2
    double restore_tol = 1e-8;
    double pt_tol = 1e-12;
    double oracle_factor = 10.0;
    std::optional<std::pair<double, double>> window;
    bool strict_pt = false;

    std::filesystem::path output_directory = "out";
    OutputFormat format = OutputFormat::both;

    std::map<std::string, std::string> entries;
    std::filesystem::path base_dir = ".";
};

/// Every accepted key with its default ("" for mandatory keys).
const std::vector<std::pair<std::string, std::string>>& config_keys();

RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir = ".");

/// Rebuilds a configuration with one canonical key replaced ("section.key").
RunConfig with_override(const RunConfig& config, const std::string& key, const std::string& value);

/// Grid, mass samples and potential channels described by a configuration.
struct Problem {
    Grid1D grid;
    GridFunction mass;
    LorentzPotential potential;
    bool uses_pt_potential = false;
};

/// Evaluates all module preconditions; throws ConfigError on violation.
Problem materialize(const RunConfig& config);

std::string to_string(const ChannelSpec& spec);
const char* to_string(OutputFormat f);

/// Levenshtein distance, used for key suggestions.
std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace ptdirac::cli
