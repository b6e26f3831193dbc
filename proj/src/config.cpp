#include "lamsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "lamsim/errors.hpp"

namespace lamsim {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
        return s.substr(1, s.size() - 2);
    return s;
}

double parse_double(const std::string& key, const std::string& value) {
    const std::string v = unquote(value);
    double out = 0.0;
    const char* last = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), last, out);
    if (ec != std::errc() || ptr != last)
        fail("TypeMismatch", "key '" + key + "' expects a number, got '" + value + "'");
    return out;
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    const int i = int(v);
    if (double(i) != v)
        fail("TypeMismatch", "key '" + key + "' expects an integer, got '" + value + "'");
    return i;
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::string v = unquote(value);
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            fail("TypeMismatch", "key '" + key + "' has an empty list element");
        out.push_back(parse_double(key, item));
    }
    if (out.empty()) fail("TypeMismatch", "key '" + key + "' expects a nonempty list");
    return out;
}

void check_grid(const std::string& what, double start, double stop, int points) {
    if (points < 1 || !(stop >= start))
        fail("InvalidParams", what + " grid must be monotone and nonempty");
    if (points > 1 && stop == start)
        fail("InvalidParams", what + " grid has repeated points");
    if (double(points) > 1e6)
        fail("InvalidParams", what + " grid exceeds 1e6 cells");
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail("ConfigParse", "line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            fail("ConfigParse", "line " + std::to_string(lineno) + ": empty key or value");
        if (kv.count(key))
            fail("ConfigParse", "line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        kv[key] = value;
    }

    RunConfig c;
    const auto require = [&](const char* key) -> std::string {
        const auto it = kv.find(key);
        if (it == kv.end())
            fail("MissingKey", std::string("required key '") + key + "' not found");
        return it->second;
    };
    c.omega_q_ghz = parse_double("omega_q_GHz", require("omega_q_GHz"));
    c.omega_r_ghz = parse_double("omega_r_GHz", require("omega_r_GHz"));
    c.omega_d_ghz = parse_double("omega_d_GHz", require("omega_d_GHz"));
    c.g_mhz = parse_double("g_MHz", require("g_MHz"));
    c.kappa_mhz = parse_double("kappa_MHz", require("kappa_MHz"));
    c.gamma_mhz = parse_double("gamma_MHz", require("gamma_MHz"));

    const std::vector<std::string> known = {
        "omega_q_GHz", "omega_r_GHz", "omega_d_GHz", "g_MHz", "kappa_MHz",
        "gamma_MHz", "rabi_MHz", "n_max", "workers", "rabi_start_MHz",
        "rabi_stop_MHz", "rabi_points", "probe_start_GHz", "probe_stop_GHz",
        "probe_points", "probe_GHz", "probe_flux_photons_per_s",
        "freq_start_GHz", "freq_stop_GHz", "freq_points",
        "flux_list_photons_per_s"};
    for (const auto& [key, value] : kv)
        if (std::find(known.begin(), known.end(), key) == known.end())
            fail("UnknownKey", "unknown key '" + key + "'");

    const auto opt = [&](const char* key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (const auto* v = opt("rabi_MHz")) c.rabi_mhz = parse_double("rabi_MHz", *v);
    if (const auto* v = opt("n_max")) c.n_max = parse_int("n_max", *v);
    if (const auto* v = opt("workers")) c.workers = parse_int("workers", *v);
    if (const auto* v = opt("rabi_start_MHz")) c.rabi_start_mhz = parse_double("rabi_start_MHz", *v);
    if (const auto* v = opt("rabi_stop_MHz")) c.rabi_stop_mhz = parse_double("rabi_stop_MHz", *v);
    if (const auto* v = opt("rabi_points")) c.rabi_points = parse_int("rabi_points", *v);
    if (const auto* v = opt("probe_start_GHz")) c.probe_start_ghz = parse_double("probe_start_GHz", *v);
    if (const auto* v = opt("probe_stop_GHz")) c.probe_stop_ghz = parse_double("probe_stop_GHz", *v);
    if (const auto* v = opt("probe_points")) c.probe_points = parse_int("probe_points", *v);
    if (const auto* v = opt("probe_GHz")) c.probe_ghz = parse_double("probe_GHz", *v);
    if (const auto* v = opt("probe_flux_photons_per_s"))
        c.probe_flux = parse_double("probe_flux_photons_per_s", *v);
    if (const auto* v = opt("freq_start_GHz")) c.freq_start_ghz = parse_double("freq_start_GHz", *v);
    if (const auto* v = opt("freq_stop_GHz")) c.freq_stop_ghz = parse_double("freq_stop_GHz", *v);
    if (const auto* v = opt("freq_points")) c.freq_points = parse_int("freq_points", *v);
    if (const auto* v = opt("flux_list_photons_per_s"))
        c.flux_list = parse_list("flux_list_photons_per_s", *v);

    check_grid("rabi", c.rabi_start_mhz, c.rabi_stop_mhz, c.rabi_points);
    check_grid("probe", c.probe_start_ghz, c.probe_stop_ghz, c.probe_points);
    if (c.freq_points > 0)
        check_grid("freq", c.freq_start_ghz, c.freq_stop_ghz, c.freq_points);
    if (c.workers < 0) fail("InvalidParams", "workers must be nonnegative");
    if (double(c.rabi_points) * double(c.probe_points) > 1e6)
        fail("InvalidParams", "sweep exceeds 1e6 cells");
    for (double f : c.flux_list)
        if (!(f > 0.0)) fail("InvalidParams", "flux list entries must be positive");

    std::ostringstream canon;
    for (const auto& [key, value] : kv) canon << key << "=" << unquote(value) << "\n";
    c.canonical_text = canon.str();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("ConfigParse", "cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

SystemParams to_system_params(const RunConfig& c) {
    SystemParams p;
    p.omega_q = ghz(c.omega_q_ghz);
    p.omega_r = ghz(c.omega_r_ghz);
    p.omega_d = ghz(c.omega_d_ghz);
    p.g = mhz(c.g_mhz);
    p.kappa = mhz(c.kappa_mhz);
    p.gamma = mhz(c.gamma_mhz);
    p.n_max = c.n_max;
    if (!std::isnan(c.rabi_mhz)) p = with_rabi(p, mhz(c.rabi_mhz));
    if (!(p.kappa > 0.0) || !(p.gamma > 0.0))
        fail("InvalidParams", "kappa and gamma must be positive");
    if (!p.validate())
        std::fprintf(stderr,
                     "warning: qubit-resonator detuning below 5 g; "
                     "dispersive treatment is marginal\n");
    return p;
}

void SweepResult::check_shape() const {
    if (axes.size() != axis_names.size() || axes.empty() || axes.size() > 2)
        fail("DimensionMismatch", "sweep needs one or two named axes");
    const Eigen::Index rows = axes[0].size();
    const Eigen::Index cols = axes.size() == 2 ? axes[1].size() : 1;
    if (values.rows() != rows || values.cols() != cols)
        fail("DimensionMismatch", "sweep value shape does not match its axes");
}

std::uint64_t config_hash(const RunConfig& c) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char b : c.canonical_text) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace lamsim
