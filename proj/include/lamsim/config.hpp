// config.hpp — Strict flat key-value configuration files

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "lamsim/model.hpp"

namespace lamsim {

inline constexpr const char* kVersion = "0.1.0";

// Frequencies in the file are ordinary GHz/MHz as quoted in the literature;
// conversion to angular rad/s happens exactly once, in to_system_params().
struct RunConfig {
    // physical parameters (required)
    double omega_q_ghz = 0.0;
    double omega_r_ghz = 0.0;
    double omega_d_ghz = 0.0;
    double g_mhz = 0.0;
    double kappa_mhz = 0.0;
    double gamma_mhz = 0.0;

    // optional drive; NaN = unset (subcommands may auto-match)
    double rabi_mhz = std::numeric_limits<double>::quiet_NaN();

    int n_max = 4;    // only defaulted key besides workers
    int workers = 0;  // 0 = all hardware threads

    // sweep grids
    double rabi_start_mhz = 0.0, rabi_stop_mhz = 50.0;
    int rabi_points = 200;
    double probe_start_ghz = 9.90, probe_stop_ghz = 10.15;
    int probe_points = 200;

    // spectrum settings; NaN probe = on the |1~>->|4~> resonance
    double probe_ghz = std::numeric_limits<double>::quiet_NaN();
    double probe_flux = 1e5;  // photons/s
    double freq_start_ghz = std::numeric_limits<double>::quiet_NaN();
    double freq_stop_ghz = std::numeric_limits<double>::quiet_NaN();
    int freq_points = 0;  // 0 = auto grid

    // efficiency sweep
    std::vector<double> flux_list = {1e5, 1e6, 1e7};

    std::string canonical_text;  // normalized key=value lines, for hashing
};

// Gridded sweep output with provenance. The timestamp is in-memory
// provenance only; CSV files carry just the hash and version so identical
// configs produce identical bytes.
struct SweepResult {
    std::vector<std::string> axis_names;  // includes units, e.g. "rabi_MHz"
    std::vector<RealVector> axes;
    RealMatrix values;  // rows pair with axes[0], columns with axes[1]
    std::uint64_t config_hash = 0;
    std::string version;
    std::string timestamp;

    // Throws DimensionMismatch unless the value shape matches the axes.
    void check_shape() const;
};

// Parses `key = value` lines ('#' comments allowed). Unknown keys are
// rejected; missing required keys and type errors name the offending key.
RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

SystemParams to_system_params(const RunConfig& c);

// FNV-1a hash of the canonicalized text; stamped into every CSV.
std::uint64_t config_hash(const RunConfig& c);

}  // namespace lamsim
