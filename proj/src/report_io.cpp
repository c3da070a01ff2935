#include "ptdirac/report_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ptdirac::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string csv_field(std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json config_json(const RunConfig& c) {
    Json j = Json::object();
    for (const auto& [key, _] : config_keys()) j[key] = c.entries.count(key) ? c.entries.at(key) : "";
    return j;
}

Json spectrum_json(const RunReport& r) {
    Json pairs = Json::array();
    for (int k = 0; k < r.spectrum.size(); ++k) {
        const auto i = static_cast<std::size_t>(k);
        Json p = Json::object();
        p["index"] = k;
        p["energy"] = complex_json(r.spectrum.eigenpairs[i].energy);
        p["residual"] = r.spectrum.residuals[i];
        p["reduced_residual"] = i < r.reduced_residuals.size() ? Json(r.reduced_residuals[i]) : Json();
        p["classification"] = to_string(r.spectrum.classification[i]);
        pairs.push_back(p);
    }
    Json all = Json::array();
    for (std::size_t i = 0; i < r.spectrum.all_eigenvalues.size(); ++i)
        all.push_back({r.spectrum.all_eigenvalues[i].real(), r.spectrum.all_eigenvalues[i].imag(),
                       to_string(r.spectrum.all_classification[i])});
    Json j = Json::object();
    j["pairs"] = pairs;
    j["all_eigenvalues"] = all;
    return j;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string sanitize(const std::string& v) {
    std::string s;
    for (char c : v) s += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+') ? c : '_';
    return s;
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string spectrum_csv(const RunReport& r) {
    std::string s = "index,re_e,im_e,residual,classification\n";
    for (int k = 0; k < r.spectrum.size(); ++k) {
        const auto i = static_cast<std::size_t>(k);
        const cplx e = r.spectrum.eigenpairs[i].energy;
        s += std::to_string(k) + "," + format_number(e.real()) + "," + format_number(e.imag()) + "," +
             format_number(r.spectrum.residuals[i]) + "," + to_string(r.spectrum.classification[i]) + "\n";
    }
    return s;
}

std::string eigenvalues_csv(const RunReport& r) {
    std::string s = "index,re_e,im_e,classification\n";
    for (std::size_t i = 0; i < r.spectrum.all_eigenvalues.size(); ++i) {
        const cplx e = r.spectrum.all_eigenvalues[i];
        s += std::to_string(i) + "," + format_number(e.real()) + "," + format_number(e.imag()) + "," +
             to_string(r.spectrum.all_classification[i]) + "\n";
    }
    return s;
}

std::string gram_csv(const RunReport& r) {
    std::string s = "row";
    for (Eigen::Index j = 0; j < r.gram.cols(); ++j) s += ",re_" + std::to_string(j) + ",im_" + std::to_string(j);
    s += "\n";
    for (Eigen::Index i = 0; i < r.gram.rows(); ++i) {
        s += std::to_string(i);
        for (Eigen::Index j = 0; j < r.gram.cols(); ++j)
            s += "," + format_number(r.gram(i, j).real()) + "," + format_number(r.gram(i, j).imag());
        s += "\n";
    }
    return s;
}

std::string balance_csv(const RunReport& r) {
    std::string s =
        "k,k_prime,term_energy_re,term_energy_im,term_boundary_re,term_boundary_im,term_potential_re,"
        "term_potential_im,identity_residual,identity_tol,identity_ok,restored_condition\n";
    for (const auto& b : r.balance) {
        s += std::to_string(b.k) + "," + std::to_string(b.k_prime);
        for (cplx z : {b.term_energy, b.term_boundary, b.term_potential})
            s += "," + format_number(z.real()) + "," + format_number(z.imag());
        s += "," + format_number(b.identity_residual) + "," + format_number(b.identity_tol) + "," +
             (b.identity_ok ? "true" : "false") + "," + (b.restored_condition ? "true" : "false") + "\n";
    }
    return s;
}

std::string continuity_csv(const RunReport& r) {
    std::string s = "x,j0,j1,dj1_dx,residual_re,residual_im\n";
    for (const auto& row : r.continuity_profile) {
        for (std::size_t c = 0; c < row.size(); ++c) s += (c ? "," : "") + format_number(row[c]);
        s += "\n";
    }
    return s;
}

std::string report_json(const RunReport& r) {
    Json j = Json::object();
    j["mode"] = to_string(r.mode);
    j["config"] = config_json(r.config);
    j["grid_spacing"] = r.spacing;
    j["exit_code"] = r.exit_code();
    j["failed_checks"] = r.failed_checks();

    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"enabled", c.enabled}, {"passed", c.passed}, {"detail", c.detail}});
    j["checks"] = checks;

    Json pt = Json::object();
    pt["applicable"] = r.pt_applicable;
    for (const auto& c : r.pt_checks) pt[c.channel] = {{"residual", c.check.residual}, {"symmetric", c.check.symmetric}};
    j["pt_symmetry"] = pt;
    j["gamma0_hermiticity_residual"] = r.gamma0_residual;

    if (r.solved) {
        j["operator"] = {{"dimension", r.spectrum.matrix_dimension},
                         {"scheme", to_string(r.spectrum.scheme)},
                         {"wilson_r", r.spectrum.wilson_r},
                         {"hermiticity", r.operator_hermiticity},
                         {"hermitian_path", r.spectrum.hermitian_path}};
        j["classification"] = {{"real", r.summary.real},
                               {"complex_pairs", r.summary.complex_pairs},
                               {"unmatched", r.summary.unmatched},
                               {"max_abs_imag", r.summary.max_abs_imag}};
        j["spectrum"] = spectrum_json(r);
    }
    if (r.diagnosed) {
        Json cont = Json::array();
        for (const auto& c : r.continuity)
            cont.push_back({{"index", c.index},
                            {"max_residual", c.max_residual},
                            {"max_flux_divergence", c.max_flux_divergence},
                            {"growth_rate", c.growth_rate}});
        j["continuity"] = cont;

        Json gram = Json::array();
        for (Eigen::Index i = 0; i < r.gram.rows(); ++i) {
            Json row = Json::array();
            for (Eigen::Index k = 0; k < r.gram.cols(); ++k) row.push_back(complex_json(r.gram(i, k)));
            gram.push_back(row);
        }
        j["gram"] = gram;

        Json bal = Json::array();
        for (const auto& b : r.balance)
            bal.push_back({{"k", b.k},
                           {"k_prime", b.k_prime},
                           {"gram", complex_json(b.gram)},
                           {"term_energy", complex_json(b.term_energy)},
                           {"term_boundary", complex_json(b.term_boundary)},
                           {"term_potential", complex_json(b.term_potential)},
                           {"identity_residual", b.identity_residual},
                           {"identity_tol", b.identity_tol},
                           {"identity_ok", b.identity_ok},
                           {"restored_condition", b.restored_condition},
                           {"x_first", b.x_first},
                           {"x_last", b.x_last}});
        j["balance"] = bal;
    }
    return j.dump(2) + "\n";
}

std::string sweep_csv(const SweepResult& result) {
    std::string s =
        "value,status,exit_code,lowest_abs_im_e,max_abs_im_e,complex_pairs,max_identity_residual,error\n";
    for (const auto& row : result.rows)
        s += csv_field(row.value) + "," + (row.ok ? "ok" : "failed") + "," + std::to_string(row.exit_code) + "," +
             format_number(row.lowest_abs_imag) + "," + format_number(row.max_abs_imag) + "," +
             std::to_string(row.complex_pairs) + "," + format_number(row.max_identity_residual) + "," +
             csv_field(row.error) + "\n";
    return s;
}

std::string sweep_json(const SweepResult& result) {
    Json rows = Json::array();
    for (const auto& row : result.rows)
        rows.push_back({{"value", row.value},
                        {"status", row.ok ? "ok" : "failed"},
                        {"exit_code", row.exit_code},
                        {"lowest_abs_im_e", row.lowest_abs_imag},
                        {"max_abs_im_e", row.max_abs_imag},
                        {"complex_pairs", row.complex_pairs},
                        {"max_identity_residual", row.max_identity_residual},
                        {"error", row.error}});
    Json j = {{"parameter", result.parameter}, {"exit_code", result.exit_code()}, {"runs", rows}};
    return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_outputs(const RunReport& r, const std::filesystem::path& dir,
                                                 OutputFormat format) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto put = [&](const char* name, const std::string& content) {
        written.push_back(dir / name);
        write_file(written.back(), content);
    };
    if (format != OutputFormat::json && r.solved) {
        put("spectrum.csv", spectrum_csv(r));
        put("eigenvalues.csv", eigenvalues_csv(r));
        if (r.diagnosed) {
            put("gram.csv", gram_csv(r));
            put("balance.csv", balance_csv(r));
            put("continuity.csv", continuity_csv(r));
        }
    }
    if (format != OutputFormat::csv) put("report.json", report_json(r));
    return written;
}

std::vector<std::filesystem::path> write_sweep(const SweepResult& result, const std::filesystem::path& dir,
                                               OutputFormat format) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        if (!result.reports[i]) continue;
        const auto sub = dir / ("run_" + std::to_string(i) + "_" + sanitize(result.rows[i].value));
        const auto files = write_outputs(*result.reports[i], sub, format);
        written.insert(written.end(), files.begin(), files.end());
    }
    if (format != OutputFormat::json) {
        written.push_back(dir / "sweep_summary.csv");
        write_file(written.back(), sweep_csv(result));
    }
    if (format != OutputFormat::csv) {
        written.push_back(dir / "sweep_summary.json");
        write_file(written.back(), sweep_json(result));
    }
    return written;
}

}  // namespace ptdirac::cli
