#include "lamsim/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

#include "lamsim/errors.hpp"
#include "lamsim/response.hpp"

namespace lamsim {

std::vector<Complex> two_time_correlation(const LindbladModel& model,
                                          const SteadyState& ss,
                                          const ComplexMatrix& opA,
                                          const ComplexMatrix& opB,
                                          const RealVector& tau_grid) {
    const Eigen::Index n = tau_grid.size();
    if (n < 2) fail("InvalidParams", "tau grid needs at least two points");
    const double dtau = tau_grid[1] - tau_grid[0];
    for (Eigen::Index k = 1; k < n; ++k)
        if (std::abs(tau_grid[k] - tau_grid[k - 1] - dtau) > 1e-9 * dtau)
            fail("InvalidParams", "tau grid must be uniform");

    // Substep so the fastest generator scale stays well inside RK4 stability.
    double fast = 0.0;
    const RealVector eigs = hermitian_eig(model.h_eff).eigenvalues;
    fast += std::max(std::abs(eigs.maxCoeff()), std::abs(eigs.minCoeff())) * 2.0;
    for (const CollapseChannel& c : model.channels) fast += max_abs(c.opdag_op);
    const int substeps = std::max(1, int(std::ceil(dtau * fast / 0.25)));
    const double h = dtau / substeps;

    std::vector<Complex> corr(n);
    ComplexMatrix x = opB * ss.rho;
    corr[0] = (opA * x).trace();
    for (Eigen::Index k = 1; k < n; ++k) {
        for (int s = 0; s < substeps; ++s) {
            const ComplexMatrix k1 = apply_generator(model, x);
            const ComplexMatrix k2 = apply_generator(model, x + (0.5 * h) * k1);
            const ComplexMatrix k3 = apply_generator(model, x + (0.5 * h) * k2);
            const ComplexMatrix k4 = apply_generator(model, x + h * k3);
            x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        corr[k] = (opA * x).trace();
    }
    return corr;
}

RealVector default_tau_grid(const SystemParams& p) {
    const double slow = p.gamma > 0.0 ? p.gamma : p.kappa;
    if (!(p.kappa > 0.0))
        fail("InvalidParams", "spectrum needs kappa > 0");
    const double dtau = 0.02 / p.kappa;
    const double tau_max = 20.0 / slow;
    const long n = std::lround(std::ceil(tau_max / dtau)) + 1;
    return RealVector::LinSpaced(n, 0.0, (n - 1) * dtau);
}

Spectrum output_spectrum(const SystemParams& p, double probe_freq, Complex probe_amp,
                         RealVector freq_grid, int levels, int workers) {
    const LindbladModel model = build_lindblad_secular(p, probe_freq, probe_amp, levels);
    const SteadyState ss = steady_state(model);

    Spectrum out;
    out.probe_freq = probe_freq;
    out.input_flux = std::norm(probe_amp);
    out.coherent_flux =
        std::norm(probe_amp - Complex(0.0, 1.0) * (model.port1 * ss.rho).trace());

    for (const CollapseChannel& c : model.channels) {
        if (c.waveguide != 2 || c.from < 0) continue;
        if (model.photon_number[c.from] > 0)
            out.wg2_upper_flux += (c.opdag_op * ss.rho).trace().real();
    }

    // Per-channel fluctuation correlations of the waveguide-1 emission,
    // integrated independently per channel and merged by index.
    const RealVector tau = default_tau_grid(p);
    struct ChannelCorr {
        std::vector<Complex> corr;
        double frame_offset;
    };
    std::vector<const CollapseChannel*> picked;
    const double rate_floor = 1e-14 * p.kappa;
    for (const CollapseChannel& c : model.channels) {
        if (c.waveguide != 1) continue;
        if (max_abs(c.op) * max_abs(c.op) < rate_floor) continue;
        picked.push_back(&c);
    }
    std::vector<ChannelCorr> corrs(picked.size());
    const int corr_threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(corr_threads)
    for (size_t k = 0; k < picked.size(); ++k) {
        const CollapseChannel& c = *picked[k];
        const Complex mean = (c.op * ss.rho).trace();
        const ComplexMatrix dc =
            c.op - mean * ComplexMatrix::Identity(model.dim, model.dim);
        corrs[k].corr = two_time_correlation(model, ss, dc.adjoint(), dc, tau);
        corrs[k].frame_offset = c.frame_offset;
    }
    for (const ChannelCorr& cc : corrs) out.incoherent_flux += cc.corr.front().real();

    if (freq_grid.size() == 0) {
        double lo = probe_freq, hi = probe_freq;
        for (const CollapseChannel& c : model.channels) {
            if (c.waveguide != 1 || c.from < 0) continue;
            if (model.photon_number[c.from] == model.photon_number[c.to]) continue;
            lo = std::min(lo, c.lab_frequency);
            hi = std::max(hi, c.lab_frequency);
        }
        lo -= 15.0 * p.kappa;
        hi += 15.0 * p.kappa;
        const long n = std::min(4000L, std::lround((hi - lo) / (p.kappa / 50.0)) + 1);
        freq_grid = RealVector::LinSpaced(n, lo, hi);
    }

    const double dtau = tau[1] - tau[0];
    const Eigen::Index nf = freq_grid.size();
    const Eigen::Index nt = tau.size();
    RealVector s_inc = RealVector::Zero(nf);
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
    for (Eigen::Index k = 0; k < nf; ++k) {
        double val = 0.0;
        for (const ChannelCorr& cc : corrs) {
            const double omega = freq_grid[k] - cc.frame_offset;
            const Complex step = std::exp(Complex(0.0, -omega * dtau));
            Complex phase = 1.0;
            Complex acc = 0.5 * cc.corr[0];
            for (Eigen::Index m = 1; m < nt - 1; ++m) {
                phase *= step;
                acc += phase * cc.corr[m];
            }
            phase *= step;
            acc += 0.5 * phase * cc.corr[nt - 1];
            val += (acc * dtau).real() / M_PI;
        }
        s_inc[k] = val;
    }

    const double peak = s_inc.size() > 0 ? s_inc.maxCoeff() : 0.0;
    if (s_inc.size() > 0 && s_inc.minCoeff() < -1e-6 * std::max(peak, 1e-300))
        fail("NumericalError", "incoherent spectrum below the numerical floor");

    for (Eigen::Index k = 0; k + 1 < nf; ++k)
        out.band_incoherent_flux +=
            0.5 * (s_inc[k] + s_inc[k + 1]) * (freq_grid[k + 1] - freq_grid[k]);

    out.freqs = std::move(freq_grid);
    out.s_inc = std::move(s_inc);
    return out;
}

std::vector<EfficiencyPoint> down_conversion_efficiency(
    const SystemParams& p, const std::vector<double>& flux_list, int levels,
    int workers) {
    const DressedBasis basis = diagonalize_system(p);

    // Operate at the reflection minimum of the 4-1 line rather than the bare
    // transition frequency: interference with the neighboring 3-1 line shifts
    // the matched zero by a few MHz, and probing off the zero over- or
    // under-drives the upper level.
    const double probe_freq = matched_dip_probe(p);
    const double target = probe_freq - (basis.energies[1] - basis.energies[0]);

    const double window = 10.0 * p.kappa;
    const double exclusion = 2.0 * p.kappa;
    if (std::abs(probe_freq - target) <= exclusion + 2.0 * p.kappa)
        fail("WindowOverlap",
             "elastic exclusion zone reaches the down-converted peak core");

    const long n = 2001;
    const RealVector grid = RealVector::LinSpaced(n, target - window, target + window);

    std::vector<EfficiencyPoint> out;
    out.reserve(flux_list.size());
    for (double flux : flux_list) {
        if (!(flux > 0.0)) fail("InvalidParams", "probe flux must be positive");
        const Complex amp = std::sqrt(flux);
        const Spectrum spec = output_spectrum(p, probe_freq, amp, grid, levels, workers);

        EfficiencyPoint pt;
        pt.input_flux = flux;
        pt.target_freq = target;

        // Trapezoid over the window, skipping segments that touch the
        // exclusion zone around the elastic line.
        double integral = 0.0;
        double best = -1.0;
        for (Eigen::Index k = 0; k + 1 < spec.freqs.size(); ++k) {
            const double a = spec.freqs[k], b = spec.freqs[k + 1];
            const bool a_in = std::abs(a - probe_freq) <= exclusion;
            const bool b_in = std::abs(b - probe_freq) <= exclusion;
            if (!a_in && !b_in)
                integral += 0.5 * (spec.s_inc[k] + spec.s_inc[k + 1]) * (b - a);
            if (!a_in && spec.s_inc[k] > best) {
                best = spec.s_inc[k];
                pt.peak_freq = a;
            }
        }
        pt.eta = integral / flux;
        out.push_back(pt);
    }
    return out;
}

}  // namespace lamsim
