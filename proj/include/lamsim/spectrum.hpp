// spectrum.hpp — Output power spectrum and down-conversion efficiency

#pragma once

#include "lamsim/lindblad.hpp"

namespace lamsim {

// Quantum-regression correlation C(tau) = Tr[opA exp(L tau)(opB rho_ss)] on a
// uniform tau grid, integrated with fixed-step RK4. C(0) equals the direct
// steady-state expectation of opA opB.
std::vector<Complex> two_time_correlation(const LindbladModel& model,
                                          const SteadyState& ss,
                                          const ComplexMatrix& opA,
                                          const ComplexMatrix& opB,
                                          const RealVector& tau_grid);

struct Spectrum {
    RealVector freqs;            // lab frame (rad/s)
    RealVector s_inc;            // incoherent density (photons/s per rad/s)
    double probe_freq = 0.0;     // lab frame (rad/s)
    double coherent_flux = 0.0;  // |<b_out>|^2 at the probe frequency (photons/s)
    double incoherent_flux = 0.0;  // total waveguide-1 fluctuation flux (photons/s)
    double band_incoherent_flux = 0.0;  // integral of s_inc over the grid (photons/s)
    double wg2_upper_flux = 0.0;   // qubit-port loss out of the upper manifold (photons/s)
    double input_flux = 0.0;       // |F|^2 (photons/s)
};

// Steady-state emission spectrum of waveguide 1 under a monochromatic probe.
// The coherent line is reported analytically (never binned); the incoherent
// part sums per-channel correlations, each mapped to lab frequencies with its
// own frame offset. Empty freq_grid selects a grid covering the
// cross-manifold emission lines.
Spectrum output_spectrum(const SystemParams& p, double probe_freq, Complex probe_amp,
                         RealVector freq_grid = {}, int levels = 4, int workers = 0);

// Correlation cutoff and step pinned by the spectral scales: resolves both
// kappa-wide and gamma-wide features.
RealVector default_tau_grid(const SystemParams& p);

struct EfficiencyPoint {
    double input_flux = 0.0;  // |F|^2 (photons/s)
    double eta = 0.0;         // down-converted flux / input flux
    double peak_freq = 0.0;   // detected dominant peak position (rad/s, lab)
    double target_freq = 0.0; // omega_d + w41 - w21 transition center (rad/s, lab)
};

// Efficiency of conversion into the |4~> -> |2~> emission line with the probe
// at the reflection minimum of the |1~> -> |4~> line. Integrates the
// incoherent spectrum over +-10 kappa around the down-converted line,
// excluding +-2 kappa around the elastic line. Throws WindowOverlap when the
// exclusion zone would reach the peak core.
std::vector<EfficiencyPoint> down_conversion_efficiency(
    const SystemParams& p, const std::vector<double>& flux_list, int levels = 4,
    int workers = 0);

}  // namespace lamsim
