#include "lamsim/cli.hpp"

#include <cmath>
#include <ctime>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "lamsim/config.hpp"
#include "lamsim/csv.hpp"
#include "lamsim/errors.hpp"
#include "lamsim/matching.hpp"
#include "lamsim/response.hpp"
#include "lamsim/spectrum.hpp"
#include "lamsim/svg.hpp"
#include "lamsim/validate.hpp"

namespace lamsim {

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    int workers = 0;
    bool plot = false;
};

std::string hash_comment(const RunConfig& cfg) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    return std::string("lamsim v") + kVersion + " config_hash=" + buf;
}

std::string out_path(const CommonOpts& opts, const std::string& name) {
    std::filesystem::create_directories(opts.out_dir);
    return (std::filesystem::path(opts.out_dir) / name).string();
}

int effective_workers(const CommonOpts& opts, const RunConfig& cfg) {
    return opts.workers > 0 ? opts.workers : cfg.workers;
}

RealVector linspace(double lo, double hi, int n) {
    if (n == 1) return RealVector::Constant(1, lo);
    return RealVector::LinSpaced(n, lo, hi);
}

// Drive amplitude for spectrum/efficiency runs: explicit rabi_MHz when given,
// otherwise the level-four matching point.
SystemParams params_with_drive(const RunConfig& cfg) {
    SystemParams p = to_system_params(cfg);
    if (!std::isnan(cfg.rabi_mhz)) return p;
    const MatchPoint mp = find_matching_power(p, MatchLevel::Four,
                                              mhz(cfg.rabi_start_mhz),
                                              mhz(cfg.rabi_stop_mhz));
    return with_rabi(p, mp.rabi);
}

double resolve_probe(const RunConfig& cfg, const SystemParams& p) {
    if (!std::isnan(cfg.probe_ghz)) return ghz(cfg.probe_ghz);
    return matched_dip_probe(p);
}

int cmd_levels(const CommonOpts& opts, const RunConfig& cfg) {
    const SystemParams base = to_system_params(cfg);
    RealVector rabi = std::isnan(cfg.rabi_mhz)
                          ? linspace(mhz(cfg.rabi_start_mhz), mhz(cfg.rabi_stop_mhz),
                                     cfg.rabi_points)
                          : RealVector::Constant(1, mhz(cfg.rabi_mhz));

    std::vector<DressedBasis> sweep;
    sweep.reserve(rabi.size());
    for (Eigen::Index k = 0; k < rabi.size(); ++k)
        sweep.push_back(diagonalize_system(with_rabi(base, rabi[k])));
    sweep = track_branches(sweep);

    CsvWriter csv(out_path(opts, "levels.csv"));
    csv.comment(hash_comment(cfg));
    csv.header("rabi_MHz,index,energy_GHz,qubit,photon,overlap");
    for (Eigen::Index k = 0; k < rabi.size(); ++k)
        for (int j = 0; j < base.dim(); ++j)
            csv.row({to_mhz(rabi[k]), double(j + 1), to_ghz(sweep[k].energies[j]),
                     double(sweep[k].labels[j].qubit), double(sweep[k].labels[j].photon),
                     sweep[k].labels[j].weight});

    if (opts.plot) {
        std::vector<RealVector> series(4, RealVector(rabi.size()));
        for (Eigen::Index k = 0; k < rabi.size(); ++k)
            for (int j = 0; j < 4; ++j) series[j][k] = to_ghz(sweep[k].energies[j]);
        RealVector x = rabi.unaryExpr([](double w) { return to_mhz(w); });
        write_line_plot(out_path(opts, "levels.svg"), x, series,
                        {"E1", "E2", "E3", "E4"}, "dressed energies",
                        "Rabi frequency (MHz)", "energy (GHz)");
    }
    return 0;
}

int cmd_rates(const CommonOpts& opts, const RunConfig& cfg) {
    const SystemParams base = to_system_params(cfg);
    const RealVector rabi =
        linspace(mhz(cfg.rabi_start_mhz), mhz(cfg.rabi_stop_mhz), cfg.rabi_points);

    RealMatrix k(rabi.size(), 4);
    for (Eigen::Index i = 0; i < rabi.size(); ++i) {
        const SystemParams q = with_rabi(base, rabi[i]);
        const DressedBasis basis = diagonalize_system(q);
        const DecayTable t = decay_rates(basis, q, build_bare_operators(q));
        k.row(i) << to_mhz(t.kappa_t(2, 0)), to_mhz(t.kappa_t(2, 1)),
            to_mhz(t.kappa_t(3, 0)), to_mhz(t.kappa_t(3, 1));
    }

    CsvWriter csv(out_path(opts, "rates.csv"));
    csv.comment(hash_comment(cfg));
    csv.header("rabi_MHz,k31_MHz,k32_MHz,k41_MHz,k42_MHz");
    for (Eigen::Index i = 0; i < rabi.size(); ++i)
        csv.row({to_mhz(rabi[i]), k(i, 0), k(i, 1), k(i, 2), k(i, 3)});

    if (opts.plot) {
        RealVector x = rabi.unaryExpr([](double w) { return to_mhz(w); });
        write_line_plot(out_path(opts, "rates.svg"), x,
                        {k.col(0), k.col(1), k.col(2), k.col(3)},
                        {"k31", "k32", "k41", "k42"}, "dressed decay rates",
                        "Rabi frequency (MHz)", "rate (MHz)");
    }
    return 0;
}

int cmd_match(const CommonOpts& opts, const RunConfig& cfg) {
    const SystemParams base = to_system_params(cfg);
    CsvWriter csv(out_path(opts, "match.csv"));
    csv.comment(hash_comment(cfg));
    csv.header("level,rabi_MHz,residual");
    for (MatchLevel level : {MatchLevel::Three, MatchLevel::Four}) {
        const MatchPoint mp = find_matching_power(
            base, level, mhz(cfg.rabi_start_mhz), mhz(cfg.rabi_stop_mhz));
        csv.row({double(int(level)), to_mhz(mp.rabi), mp.residual});
    }
    return 0;
}

int cmd_reflect(const CommonOpts& opts, const RunConfig& cfg) {
    const SystemParams base = to_system_params(cfg);
    const RealVector rabi =
        linspace(mhz(cfg.rabi_start_mhz), mhz(cfg.rabi_stop_mhz), cfg.rabi_points);
    const RealVector probe =
        linspace(ghz(cfg.probe_start_ghz), ghz(cfg.probe_stop_ghz), cfg.probe_points);

    SweepResult sweep;
    sweep.axis_names = {"rabi_MHz", "probe_GHz"};
    sweep.axes = {rabi.unaryExpr([](double w) { return to_mhz(w); }),
                  probe.unaryExpr([](double w) { return to_ghz(w); })};
    sweep.values = reflection_map(base, rabi, probe, effective_workers(opts, cfg));
    sweep.config_hash = config_hash(cfg);
    sweep.version = kVersion;
    sweep.timestamp = std::to_string(std::time(nullptr));
    sweep.check_shape();

    CsvWriter csv(out_path(opts, "reflect.csv"));
    csv.comment(hash_comment(cfg));
    csv.header("rabi_MHz,probe_GHz,abs_r");
    for (Eigen::Index i = 0; i < rabi.size(); ++i)
        for (Eigen::Index j = 0; j < probe.size(); ++j)
            csv.row({sweep.axes[0][i], sweep.axes[1][j], sweep.values(i, j)});

    if (opts.plot)
        write_heatmap(out_path(opts, "reflect.svg"), sweep.axes[1], sweep.axes[0],
                      sweep.values, "|r|", "probe frequency (GHz)",
                      "Rabi frequency (MHz)");
    return 0;
}

int cmd_spectrum(const CommonOpts& opts, const RunConfig& cfg) {
    const SystemParams p = params_with_drive(cfg);
    const double probe = resolve_probe(cfg, p);
    RealVector grid;
    if (cfg.freq_points > 0)
        grid = linspace(ghz(cfg.freq_start_ghz), ghz(cfg.freq_stop_ghz), cfg.freq_points);

    const Spectrum spec = output_spectrum(p, probe, std::sqrt(cfg.probe_flux),
                                          std::move(grid), 4,
                                          effective_workers(opts, cfg));

    CsvWriter csv(out_path(opts, "spectrum.csv"));
    csv.comment(hash_comment(cfg));
    csv.raw_row("# coherent_flux=" + format_double(spec.coherent_flux) +
                " photons_per_s at probe_GHz=" + format_double(to_ghz(spec.probe_freq)));
    csv.header("freq_GHz,s_inc");
    for (Eigen::Index i = 0; i < spec.freqs.size(); ++i)
        csv.row({to_ghz(spec.freqs[i]), spec.s_inc[i]});

    if (opts.plot) {
        RealVector x = spec.freqs.unaryExpr([](double w) { return to_ghz(w); });
        write_line_plot(out_path(opts, "spectrum.svg"), x, {spec.s_inc}, {"S_inc"},
                        "output power spectrum", "frequency (GHz)",
                        "S (photons/s per rad/s)");
    }
    return 0;
}

int cmd_efficiency(const CommonOpts& opts, const RunConfig& cfg) {
    const SystemParams p = params_with_drive(cfg);
    const std::vector<EfficiencyPoint> points = down_conversion_efficiency(
        p, cfg.flux_list, 4, effective_workers(opts, cfg));

    CsvWriter csv(out_path(opts, "efficiency.csv"));
    csv.comment(hash_comment(cfg));
    csv.header("input_flux_photons_per_s,eta");
    for (const EfficiencyPoint& pt : points) csv.row({pt.input_flux, pt.eta});

    if (opts.plot) {
        RealVector x(points.size()), y(points.size());
        for (size_t i = 0; i < points.size(); ++i) {
            x[i] = std::log10(points[i].input_flux);
            y[i] = points[i].eta;
        }
        write_line_plot(out_path(opts, "efficiency.svg"), x, {y}, {"eta"},
                        "down-conversion efficiency", "log10 input flux (photons/s)",
                        "eta");
    }
    return 0;
}

int cmd_validate(const CommonOpts& opts, const RunConfig& cfg) {
    const SystemParams p = to_system_params(cfg);
    const std::vector<CheckResult> results =
        run_validation(p, effective_workers(opts, cfg));
    bool all = true;
    for (const CheckResult& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " — " << r.detail
                  << "\n";
        all = all && r.pass;
    }
    std::cout << (all ? "validation passed" : "validation FAILED") << "\n";
    return all ? 0 : 3;
}

// Built-in defaults used by `validate` when no config is given.
const char* kDefaultConfig =
    "omega_q_GHz = 5.0\n"
    "omega_r_GHz = 10.0\n"
    "omega_d_GHz = 4.87\n"
    "g_MHz = 500\n"
    "kappa_MHz = 20\n"
    "gamma_MHz = 1\n";

}  // namespace

int run_command(const std::vector<std::string>& args) {
    CLI::App app{"dressed-state Lambda-system simulator"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string chosen;
    const std::vector<std::string> names = {"levels",   "rates",      "match",
                                            "reflect",  "spectrum",   "efficiency",
                                            "validate"};
    const std::vector<std::string> blurbs = {
        "dressed energies and labels over a drive sweep",
        "dressed decay rates k31, k32, k41, k42 over a drive sweep",
        "impedance-matching drive power for levels 3 and 4",
        "reflection |r| over the (drive, probe) grid",
        "output power spectrum at fixed probe and power",
        "down-conversion efficiency over probe powers",
        "cross-oracle and structural invariant suite"};
    for (size_t i = 0; i < names.size(); ++i) {
        CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
        sub->add_option("--config", opts.config_path, "configuration file");
        sub->add_option("--out", opts.out_dir, "output directory");
        sub->add_option("--workers", opts.workers, "parallel worker count (0 = auto)");
        sub->add_flag("--plot", opts.plot, "also emit SVG plots");
        sub->callback([&chosen, name = names[i]] { chosen = name; });
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg;
        if (!opts.config_path.empty())
            cfg = load_config(opts.config_path);
        else if (chosen == "validate")
            cfg = parse_config_text(kDefaultConfig);
        else
            fail("MissingKey", "--config is required for this subcommand");

        if (chosen == "levels") return cmd_levels(opts, cfg);
        if (chosen == "rates") return cmd_rates(opts, cfg);
        if (chosen == "match") return cmd_match(opts, cfg);
        if (chosen == "reflect") return cmd_reflect(opts, cfg);
        if (chosen == "spectrum") return cmd_spectrum(opts, cfg);
        if (chosen == "efficiency") return cmd_efficiency(opts, cfg);
        if (chosen == "validate") return cmd_validate(opts, cfg);
        return 2;
    } catch (const SimError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return SimError::is_config_kind(e.kind()) ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace lamsim
