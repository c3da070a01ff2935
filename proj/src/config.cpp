#include "ptdirac/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace ptdirac::cli {

namespace {

using Entries = std::map<std::string, std::string>;

const std::vector<std::pair<std::string, std::string>> kKeys = {
    {"grid.x_min", ""},
    {"grid.x_max", ""},
    {"grid.n_points", ""},
    {"grid.boundary", ""},
    {"mass.family", ""},
    {"mass.m0", "1"},
    {"mass.lambda", "0"},
    {"mass.alpha", "0"},
    {"mass.a", "0"},
    {"mass.require_positive", "true"},
    {"potential.v_t", "zero"},
    {"potential.v_sp", "zero"},
    {"potential.v_s", "zero"},
    {"potential.v_p", "zero"},
    {"solver.tol", "1e-9"},
    {"solver.max_pairs", "20"},
    {"solver.scheme", "central_wilson"},
    {"solver.wilson_r", "1"},
    {"solver.reality_tol", "1e-8"},
    {"solver.hermitian_fast_path", "true"},
    {"diagnostics.balance_states", "6"},
    {"diagnostics.identity_tol", "auto"},
    {"diagnostics.restore_tol", "1e-8"},
    {"diagnostics.pt_tol", "1e-12"},
    {"diagnostics.oracle_factor", "10"},
    {"diagnostics.window", "none"},
    {"diagnostics.strict_pt", "false"},
    {"output.directory", "out"},
    {"output.format", "both"},
};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

bool is_known(const std::string& key) {
    return std::any_of(kKeys.begin(), kKeys.end(), [&](const auto& k) { return k.first == key; });
}

std::string nearest_key(const std::string& key) {
    std::string best;
    std::size_t best_d = std::string::npos;
    const std::string bare = key.substr(key.find('.') + 1);
    for (const auto& [k, _] : kKeys) {
        const std::string kb = k.substr(k.find('.') + 1);
        const std::size_t d = std::min(edit_distance(key, k), edit_distance(bare, kb));
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

/// Collects every problem so that one error lists them all.
class Problems {
public:
    void add(std::string msg) { list_.push_back(std::move(msg)); }
    bool empty() const { return list_.empty(); }
    [[noreturn]] void raise() const {
        std::ostringstream os;
        os << "invalid configuration:";
        for (const auto& m : list_) os << "\n  " << m;
        throw ConfigError(os.str());
    }

private:
    std::vector<std::string> list_;
};

std::optional<double> to_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<int> to_int(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size() || errno == ERANGE || v < -2147483647L || v > 2147483647L) return std::nullopt;
    return static_cast<int>(v);
}

std::optional<bool> to_bool(const std::string& s) {
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    return std::nullopt;
}

class Reader {
public:
    Reader(const Entries& e, Problems& p) : e_(e), p_(p) {}

    double real(const std::string& key) {
        const auto v = to_double(e_.at(key));
        if (!v) p_.add(key + ": expected a finite number, got '" + e_.at(key) + "'");
        return v.value_or(0.0);
    }
    int integer(const std::string& key) {
        const auto v = to_int(e_.at(key));
        if (!v) p_.add(key + ": expected an integer, got '" + e_.at(key) + "'");
        return v.value_or(0);
    }
    bool flag(const std::string& key) {
        const auto v = to_bool(e_.at(key));
        if (!v) p_.add(key + ": expected true or false, got '" + e_.at(key) + "'");
        return v.value_or(false);
    }
    template <class T>
    T choice(const std::string& key, const std::vector<std::pair<std::string, T>>& options) {
        const std::string& s = e_.at(key);
        for (const auto& [name, value] : options)
            if (name == s) return value;
        std::string names;
        for (const auto& o : options) names += (names.empty() ? "" : ", ") + o.first;
        p_.add(key + ": expected one of {" + names + "}, got '" + s + "'");
        return options.front().second;
    }
    void positive(const std::string& key, double v) {
        if (!(v > 0.0)) p_.add(key + " must be > 0");
    }

private:
    const Entries& e_;
    Problems& p_;
};

std::optional<ChannelSpec> parse_channel(const std::string& text, const std::filesystem::path& base, std::string& why) {
    using K = ChannelSpec::Kind;
    ChannelSpec spec;
    if (text == "zero") return spec;
    if (text == "pt_from_mass") {
        spec.kind = K::pt_from_mass;
        return spec;
    }
    const auto open = text.find('(');
    if (open == std::string::npos || text.back() != ')') {
        why = "expected zero, pt_from_mass or name(argument)";
        return std::nullopt;
    }
    const std::string name = trim(text.substr(0, open));
    const std::string arg = trim(text.substr(open + 1, text.size() - open - 2));
    if (name == "file") {
        if (arg.empty()) {
            why = "file() needs a path";
            return std::nullopt;
        }
        spec.kind = K::file;
        spec.path = std::filesystem::path(arg).is_absolute() ? std::filesystem::path(arg) : base / arg;
        return spec;
    }
    static const std::vector<std::pair<std::string, K>> named = {
        {"constant", K::constant}, {"linear", K::linear},         {"abs", K::abs},
        {"quadratic", K::quadratic}, {"i_constant", K::i_constant}, {"i_linear", K::i_linear},
    };
    const auto it = std::find_if(named.begin(), named.end(), [&](const auto& p) { return p.first == name; });
    if (it == named.end()) {
        why = "unknown channel function '" + name + "'";
        return std::nullopt;
    }
    const auto v = to_double(arg);
    if (!v) {
        why = "argument of " + name + "() must be a finite number";
        return std::nullopt;
    }
    spec.kind = it->second;
    spec.parameter = *v;
    return spec;
}

std::vector<cplx> read_table(const std::filesystem::path& path, int expected) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read potential file " + path.string());
    std::vector<cplx> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        std::istringstream is(t);
        std::string a, b, extra;
        is >> a >> b >> extra;
        const auto re = to_double(a);
        const auto im = b.empty() ? std::optional<double>(0.0) : to_double(b);
        if (!re || !im || !extra.empty())
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected 're' or 're im'");
        values.emplace_back(*re, *im);
    }
    if (static_cast<int>(values.size()) != expected)
        throw ConfigError(path.string() + ": has " + std::to_string(values.size()) + " values, grid has " +
                          std::to_string(expected) + " nodes");
    return values;
}

RunConfig build(Entries entries, const std::filesystem::path& base_dir) {
    Problems problems;
    for (const auto& [key, _] : entries)
        if (!is_known(key)) problems.add("unknown key '" + key + "' (nearest valid key: '" + nearest_key(key) + "')");

    std::vector<std::string> missing;
    for (const auto& [key, def] : kKeys) {
        if (entries.count(key)) continue;
        if (def.empty())
            missing.push_back(key);
        else
            entries[key] = def;
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& k : missing) list += (list.empty() ? "" : ", ") + k;
        problems.add("missing mandatory keys: " + list);
        problems.raise();
    }

    RunConfig c;
    c.base_dir = base_dir;
    Reader r(entries, problems);

    c.x_min = r.real("grid.x_min");
    c.x_max = r.real("grid.x_max");
    c.n_points = r.integer("grid.n_points");
    c.boundary = r.choice<Boundary>("grid.boundary", {{"dirichlet", Boundary::dirichlet}, {"periodic", Boundary::periodic}});
    if (!(c.x_min < c.x_max)) problems.add("grid: x_min < x_max is required");
    if (c.n_points < 8) problems.add("grid.n_points must be >= 8 (got " + entries.at("grid.n_points") + ")");

    c.mass.family = r.choice<MassFamily>("mass.family", {{"constant", MassFamily::constant},
                                                         {"linear", MassFamily::linear},
                                                         {"inverse_linear", MassFamily::inverse_linear},
                                                         {"quadratic_even", MassFamily::quadratic_even},
                                                         {"double_well", MassFamily::double_well}});
    c.mass.m0 = r.real("mass.m0");
    c.mass.lambda = r.real("mass.lambda");
    c.mass.alpha = r.real("mass.alpha");
    c.mass.a = r.real("mass.a");
    c.mass.require_positive = r.flag("mass.require_positive");

    for (auto [key, slot] : {std::pair{"potential.v_t", &c.v_t}, std::pair{"potential.v_sp", &c.v_sp},
                             std::pair{"potential.v_s", &c.v_s}, std::pair{"potential.v_p", &c.v_p}}) {
        std::string why;
        const auto spec = parse_channel(entries.at(key), base_dir, why);
        if (spec)
            *slot = *spec;
        else
            problems.add(std::string(key) + ": " + why);
    }

    c.tol = r.real("solver.tol");
    r.positive("solver.tol", c.tol);
    c.max_pairs = r.integer("solver.max_pairs");
    if (c.max_pairs < 1) problems.add("solver.max_pairs must be >= 1");
    c.scheme = r.choice<DiracScheme>("solver.scheme",
                                     {{"central_wilson", DiracScheme::central_wilson}, {"central", DiracScheme::central}});
    c.wilson_r = r.real("solver.wilson_r");
    if (c.wilson_r < 0.0) problems.add("solver.wilson_r must be >= 0");
    c.reality_tol = r.real("solver.reality_tol");
    r.positive("solver.reality_tol", c.reality_tol);
    c.hermitian_fast_path = r.flag("solver.hermitian_fast_path");

    c.balance_states = r.integer("diagnostics.balance_states");
    if (c.balance_states < 0) problems.add("diagnostics.balance_states must be >= 0");
    if (entries.at("diagnostics.identity_tol") != "auto") {
        c.identity_tol = r.real("diagnostics.identity_tol");
        r.positive("diagnostics.identity_tol", c.identity_tol);
    }
    c.restore_tol = r.real("diagnostics.restore_tol");
    r.positive("diagnostics.restore_tol", c.restore_tol);
    c.pt_tol = r.real("diagnostics.pt_tol");
    r.positive("diagnostics.pt_tol", c.pt_tol);
    c.oracle_factor = r.real("diagnostics.oracle_factor");
    r.positive("diagnostics.oracle_factor", c.oracle_factor);
    if (const std::string& w = entries.at("diagnostics.window"); w != "none") {
        const auto comma = w.find(',');
        const auto a = comma == std::string::npos ? std::nullopt : to_double(trim(w.substr(0, comma)));
        const auto b = comma == std::string::npos ? std::nullopt : to_double(trim(w.substr(comma + 1)));
        if (!a || !b || !(*a < *b))
            problems.add("diagnostics.window: expected 'none' or 'a, b' with a < b, got '" + w + "'");
        else
            c.window = std::pair{*a, *b};
    }
    c.strict_pt = r.flag("diagnostics.strict_pt");

    c.output_directory = entries.at("output.directory");
    if (c.output_directory.empty()) problems.add("output.directory must not be empty");
    c.format = r.choice<OutputFormat>("output.format",
                                      {{"both", OutputFormat::both}, {"csv", OutputFormat::csv}, {"json", OutputFormat::json}});

    if (!problems.empty()) problems.raise();
    c.entries = std::move(entries);

    // Module preconditions: sampling the problem validates grid, mass and channels.
    (void)materialize(c);
    return c;
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& config_keys() { return kKeys; }

std::size_t edit_distance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

RunConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir) {
    Entries entries;
    Problems problems;
    static const std::set<std::string> sections = {"grid", "mass", "potential", "solver", "diagnostics", "output"};
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string where = "line " + std::to_string(lineno) + ": ";
        const auto hash = raw.find_first_of("#;");
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                problems.add(where + "malformed section header");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            if (!sections.count(section)) {
                std::string best;
                std::size_t best_d = std::string::npos;
                for (const auto& s : sections)
                    if (edit_distance(section, s) < best_d) best_d = edit_distance(section, s), best = s;
                problems.add(where + "unknown section [" + section + "] (nearest valid section: [" + best + "])");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            problems.add(where + "expected 'key = value'");
            continue;
        }
        if (section.empty()) {
            problems.add(where + "key outside of any section");
            continue;
        }
        const std::string key = section + "." + trim(line.substr(0, eq));
        if (entries.count(key)) {
            problems.add(where + "duplicate key '" + key + "'");
            continue;
        }
        entries[key] = trim(line.substr(eq + 1));
    }
    if (!problems.empty()) problems.raise();
    return build(std::move(entries), base_dir);
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read configuration file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    const std::filesystem::path base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    return parse_config_text(text.str(), base);
}

RunConfig with_override(const RunConfig& config, const std::string& key, const std::string& value) {
    if (!is_known(key)) throw ConfigError("unknown parameter '" + key + "' (nearest valid key: '" + nearest_key(key) + "')");
    Entries e = config.entries;
    e[key] = value;
    return build(std::move(e), config.base_dir);
}

Problem materialize(const RunConfig& c) {
    try {
        const Grid1D grid = build_grid(c.x_min, c.x_max, c.n_points, c.boundary);
        GridFunction mass = sample_mass(c.mass, grid);
        bool uses_pt = false;
        auto channel = [&](const ChannelSpec& s) -> GridFunction {
            using K = ChannelSpec::Kind;
            const double p = s.parameter;
            switch (s.kind) {
            case K::zero: return GridFunction::constant(grid, 0.0);
            case K::constant: return GridFunction::constant(grid, p);
            case K::linear: return GridFunction::sample(grid, [p](double x) { return cplx(p * x); });
            case K::abs: return GridFunction::sample(grid, [p](double x) { return cplx(p * std::abs(x)); });
            case K::quadratic: return GridFunction::sample(grid, [p](double x) { return cplx(p * x * x); });
            case K::i_constant: return GridFunction::constant(grid, cplx(0.0, p));
            case K::i_linear: return GridFunction::sample(grid, [p](double x) { return cplx(0.0, p * x); });
            case K::pt_from_mass: uses_pt = true; return pt_vector_potential(c.mass, grid);
            case K::file: return GridFunction(grid, read_table(s.path, grid.size()));
            }
            throw std::logic_error("unhandled channel kind");
        };
        LorentzPotential pot(channel(c.v_t), channel(c.v_sp), channel(c.v_s), channel(c.v_p));
        return {grid, std::move(mass), std::move(pot), uses_pt};
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
}

std::string to_string(const ChannelSpec& s) {
    using K = ChannelSpec::Kind;
    std::ostringstream os;
    os.precision(17);
    switch (s.kind) {
    case K::zero: return "zero";
    case K::pt_from_mass: return "pt_from_mass";
    case K::file: return "file(" + s.path.string() + ")";
    case K::constant: os << "constant("; break;
    case K::linear: os << "linear("; break;
    case K::abs: os << "abs("; break;
    case K::quadratic: os << "quadratic("; break;
    case K::i_constant: os << "i_constant("; break;
    case K::i_linear: os << "i_linear("; break;
    }
    os << s.parameter << ")";
    return os.str();
}

const char* to_string(OutputFormat f) {
    switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::both: return "both";
    }
    return "both";
}

}  // namespace ptdirac::cli
