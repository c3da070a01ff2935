#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ptdirac/config.hpp"
#include "ptdirac/pipeline.hpp"
#include "ptdirac/report_io.hpp"

using namespace ptdirac::cli;

namespace {

struct Overrides {
    std::string out;
    bool strict_pt = false;
    std::string tol;
    std::string format;
};

RunConfig load(const std::string& path, const Overrides& o) {
    RunConfig c = parse_config(path);
    if (o.strict_pt) c = with_override(c, "diagnostics.strict_pt", "true");
    if (!o.tol.empty()) c = with_override(c, "solver.tol", o.tol);
    if (!o.format.empty()) c = with_override(c, "output.format", o.format);
    if (!o.out.empty()) c = with_override(c, "output.directory", o.out);
    return c;
}

void print_summary(const RunReport& r) {
    if (r.solved) {
        std::cout << "eigenvalues: " << r.spectrum.all_eigenvalues.size() << " (" << r.summary.real << " real, "
                  << r.summary.complex_pairs << " complex pairs, " << r.summary.unmatched << " unmatched)\n";
        const int show = std::min(r.spectrum.size(), 6);
        for (int k = 0; k < show; ++k) {
            const auto e = r.spectrum.eigenpairs[static_cast<std::size_t>(k)].energy;
            std::cout << "  E[" << k << "] = " << format_number(e.real()) << " + " << format_number(e.imag()) << "i\n";
        }
    }
    for (const auto& c : r.checks)
        std::cout << (c.enabled ? "check " : "info  ") << c.name << ": " << (c.passed ? "pass" : "fail") << " ("
                  << c.detail << ")\n";
}

int run_single(const std::string& path, const Overrides& o, Mode mode) {
    const RunConfig c = load(path, o);
    const RunReport r = run(c, mode);
    for (const auto& f : write_outputs(r, c.output_directory, c.format)) std::cout << "wrote " << f.string() << "\n";
    print_summary(r);
    for (const auto& name : r.failed_checks()) std::cerr << "error: check failed: " << name << "\n";
    return r.exit_code();
}

std::vector<std::string> split_values(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        out.push_back(item.substr(b, item.find_last_not_of(" \t") - b + 1));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirac eigenproblems with position-dependent mass and PT-symmetric potentials"};
    app.require_subcommand(1);

    Overrides o;
    std::string config_path, param, values;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "Run configuration file")->required();
        sub->add_option("--out", o.out, "Output directory (overrides output.directory)");
        sub->add_flag("--strict-pt", o.strict_pt, "Fail when the potential is not PT-symmetric");
        sub->add_option("--tol", o.tol, "Eigenpair residual tolerance (overrides solver.tol)");
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json", "both"}));
    };
    CLI::App* spectrum = app.add_subcommand("spectrum", "Solve and classify the spectrum");
    CLI::App* diagnose = app.add_subcommand("diagnose", "Spectrum plus current, Gram and balance diagnostics");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Repeat a run over values of one parameter");
    CLI::App* check_pt = app.add_subcommand("check-pt", "PT-symmetry and gamma0-Hermiticity checks only");
    for (auto* sub : {spectrum, diagnose, sweep_cmd, check_pt}) add_common(sub);
    sweep_cmd->add_option("--param", param, "Parameter as section.key")->required();
    sweep_cmd->add_option("--values", values, "Comma-separated values")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (spectrum->parsed()) return run_single(config_path, o, Mode::spectrum);
        if (diagnose->parsed()) return run_single(config_path, o, Mode::diagnose);
        if (check_pt->parsed()) return run_single(config_path, o, Mode::check_pt);

        const RunConfig c = load(config_path, o);
        const SweepResult s = sweep(c, param, split_values(values), Mode::diagnose);
        for (const auto& f : write_sweep(s, c.output_directory, c.format)) std::cout << "wrote " << f.string() << "\n";
        std::cout << sweep_csv(s);
        return s.exit_code();
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
