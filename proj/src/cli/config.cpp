#include "qimp/cli.hpp"

#include "qimp/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>

namespace qimp::cli {
namespace {

std::string default_out_dir() {
    if (const char* env = std::getenv("QIMP_OUT"); env != nullptr && *env != '\0') {
        return env;
    }
    return "qimp_out";
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const KeyValues& kv, const std::string& key) {
    const std::string s = trim(kv.at(key));
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConfigError(key + ": expected a number, got '" + s + "'");
    }
    return out;
}

std::optional<double> parse_optional_double(const KeyValues& kv, const std::string& key) {
    if (trim(kv.at(key)).empty()) {
        return std::nullopt;
    }
    return parse_double(kv, key);
}

std::size_t parse_count(const KeyValues& kv, const std::string& key) {
    const std::string s = trim(kv.at(key));
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConfigError(key + ": expected a non-negative integer, got '" + s + "'");
    }
    return out;
}

bool parse_bool(const KeyValues& kv, const std::string& key) {
    const std::string s = trim(kv.at(key));
    if (s == "true" || s == "1" || s == "yes" || s == "on") {
        return true;
    }
    if (s == "false" || s == "0" || s == "no" || s == "off") {
        return false;
    }
    throw ConfigError(key + ": expected a boolean, got '" + s + "'");
}

InverseTemperature parse_beta(const KeyValues& kv) {
    const std::string s = trim(kv.at("params.beta"));
    if (s == "infinite" || s == "inf-temp") {
        return InverseTemperature::infinite_temperature();
    }
    return InverseTemperature{parse_double(kv, "params.beta")};
}

std::vector<Approach> parse_approaches(const KeyValues& kv, const std::string& key) {
    const std::string s = trim(kv.at(key));
    if (s == "local") {
        return {Approach::Local};
    }
    if (s == "global") {
        return {Approach::Global};
    }
    if (s == "both") {
        return {Approach::Local, Approach::Global};
    }
    throw ConfigError(key + ": expected local|global|both, got '" + s + "'");
}

Integrator parse_integrator(const KeyValues& kv, const std::string& key) {
    const std::string s = trim(kv.at(key));
    if (s == "expm") {
        return Integrator::Exponential;
    }
    if (s == "rk45") {
        return Integrator::RungeKutta;
    }
    throw ConfigError(key + ": expected expm|rk45, got '" + s + "'");
}

std::vector<double> parse_list(const KeyValues& kv, const std::string& key) {
    std::vector<double> out;
    const std::string s = kv.at(key);
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t comma = std::min(s.find(',', pos), s.size());
        const std::string item = trim(std::string_view(s).substr(pos, comma - pos));
        if (!item.empty()) {
            KeyValues tmp{{key, item}};
            out.push_back(parse_double(tmp, key));
        } else if (comma < s.size()) {
            throw ConfigError(key + ": empty list element");
        }
        pos = comma + 1;
    }
    return out;
}

TimeGridSpec parse_grid(const KeyValues& kv, const std::string& section) {
    TimeGridSpec g;
    g.t_start = parse_double(kv, section + ".t_start");
    g.t_end = parse_optional_double(kv, section + ".t_end");
    g.t_end_gamma = parse_double(kv, section + ".t_end_gamma");
    g.points = parse_count(kv, section + ".points");
    if (g.points == 0) {
        throw ConfigError(section + ".points: time grid is empty");
    }
    if (!std::isfinite(g.t_start) || g.t_start < 0.0) {
        throw ConfigError(section + ".t_start: must be finite and >= 0");
    }
    return g;
}

}  // namespace

KeyValues default_entries() {
    return {
        {"params.epsilon", "20"},
        {"params.delta", "0"},
        {"params.v", "2"},
        {"params.epsilon_I", "20"},
        {"params.beta", "infinite"},
        {"params.gamma_minus", "0.33333333333333331"},  // g = 6 at v = 2
        {"params.delta_p0", "0"},
        {"params.qubit_pop0", "0.5"},
        {"params.qubit_coh0_re", "0.5"},
        {"params.qubit_coh0_im", "0"},

        {"simulate.approach", "local"},
        {"simulate.integrator", "expm"},
        {"simulate.t_start", "0"},
        {"simulate.t_end", ""},
        {"simulate.t_end_gamma", "10"},
        {"simulate.points", "200"},

        {"sweep.g_list", "0.5,2,6"},
        {"sweep.approach", "both"},
        {"sweep.integrator", "expm"},
        {"sweep.t_start", "0"},
        {"sweep.t_end", ""},
        {"sweep.t_end_gamma", "10"},
        {"sweep.points", "200"},
        {"sweep.fit_window_gamma", "0.5"},

        {"diagram.v_min", "0.05"},
        {"diagram.v_max", "10"},
        {"diagram.v_steps", "50"},
        {"diagram.gamma_min", "0.05"},
        {"diagram.gamma_max", "40"},
        {"diagram.gamma_steps", "50"},
        {"diagram.eta", "0.1"},

        {"validate.tolerance", ""},
        {"validate.runtime_budget", "5"},

        {"output.dir", default_out_dir()},
        {"output.format", "csv"},
        {"output.plot_script", "false"},
    };
}

void set_entry(KeyValues& kv, const std::string& key, const std::string& value) {
    const auto it = kv.find(key);
    if (it == kv.end()) {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
    it->second = trim(value);
}

void merge_ini(KeyValues& kv, const std::filesystem::path& path) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::read_ini(path.string(), tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(std::string("cannot read config: ") + e.what());
    }
    for (const auto& [section, body] : tree) {
        if (body.empty()) {
            throw ConfigError("config entry '" + section + "' is outside any section");
        }
        for (const auto& [key, value] : body) {
            set_entry(kv, section + "." + key, value.data());
        }
    }
}

void apply_assignment(KeyValues& kv, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("expected section.key=value, got '" + std::string(assignment) + "'");
    }
    set_entry(kv, trim(assignment.substr(0, eq)), std::string(assignment.substr(eq + 1)));
}

std::string config_hash(const KeyValues& kv) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const auto feed = [&h](std::string_view s) {
        for (const unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& [k, v] : kv) {
        // The output directory does not influence any result.
        if (k == "output.dir") {
            continue;
        }
        feed(k);
        feed("=");
        feed(v);
        feed("\n");
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<double> TimeGridSpec::values(double gamma) const {
    const double end = t_end.value_or(t_end_gamma / gamma);
    if (!std::isfinite(end) || (points > 1 && !(end > t_start))) {
        throw ConfigError("time grid end must be finite and greater than its start");
    }
    return linspace(t_start, end, points);
}

RunConfig resolve(const KeyValues& kv) {
    RunConfig c;
    c.entries = kv;
    c.hash = config_hash(kv);

    SystemParams& p = c.params;
    p.epsilon = parse_double(kv, "params.epsilon");
    p.delta = parse_double(kv, "params.delta");
    p.v = parse_double(kv, "params.v");
    p.epsilon_I = parse_double(kv, "params.epsilon_I");
    p.beta = parse_beta(kv);
    p.gamma_minus = parse_double(kv, "params.gamma_minus");
    p.delta_p0 = parse_double(kv, "params.delta_p0");
    p.validate();
    c.prep.population = parse_double(kv, "params.qubit_pop0");
    c.prep.coherence = {parse_double(kv, "params.qubit_coh0_re"), parse_double(kv, "params.qubit_coh0_im")};

    c.simulate_approaches = parse_approaches(kv, "simulate.approach");
    c.simulate_integrator = parse_integrator(kv, "simulate.integrator");
    c.simulate_grid = parse_grid(kv, "simulate");

    c.g_list = parse_list(kv, "sweep.g_list");
    for (const double g : c.g_list) {
        if (!(g > 0.0) || !std::isfinite(g)) {
            throw ConfigError("sweep.g_list: entries must be finite and > 0");
        }
    }
    c.sweep_approaches = parse_approaches(kv, "sweep.approach");
    c.sweep_integrator = parse_integrator(kv, "sweep.integrator");
    c.sweep_grid = parse_grid(kv, "sweep");
    c.fit_window_gamma = parse_double(kv, "sweep.fit_window_gamma");
    if (!(c.fit_window_gamma > 0.0)) {
        throw ConfigError("sweep.fit_window_gamma: must be > 0");
    }

    c.diagram.fixed = p;
    c.diagram.v_range = {parse_double(kv, "diagram.v_min"), parse_double(kv, "diagram.v_max"),
                         parse_count(kv, "diagram.v_steps")};
    c.diagram.gamma_range = {parse_double(kv, "diagram.gamma_min"), parse_double(kv, "diagram.gamma_max"),
                             parse_count(kv, "diagram.gamma_steps")};
    c.diagram.eta = parse_double(kv, "diagram.eta");
    c.diagram.validate();

    c.validation.tolerance_override = parse_optional_double(kv, "validate.tolerance");
    if (c.validation.tolerance_override && !(*c.validation.tolerance_override >= 0.0)) {
        throw ConfigError("validate.tolerance: must be >= 0");
    }
    c.validation.runtime_budget_seconds = parse_double(kv, "validate.runtime_budget");

    c.out_dir = kv.at("output.dir");
    if (c.out_dir.empty()) {
        throw ConfigError("output.dir: must not be empty");
    }
    const std::string fmt = trim(kv.at("output.format"));
    if (fmt == "csv") {
        c.format = OutputFormat::Csv;
    } else if (fmt == "json") {
        c.format = OutputFormat::Json;
    } else if (fmt == "both") {
        c.format = OutputFormat::Both;
    } else {
        throw ConfigError("output.format: expected csv|json|both, got '" + fmt + "'");
    }
    c.plot_script = parse_bool(kv, "output.plot_script");
    return c;
}

}  // namespace qimp::cli
