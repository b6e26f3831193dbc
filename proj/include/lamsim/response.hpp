// response.hpp — Reflection coefficient: resolvent path, sweep kernels, time-domain oracle

#pragma once

#include "lamsim/lindblad.hpp"

namespace lamsim {

enum class ReflectionMethod { Resolvent, TimeDomain };

struct ReflectionResult {
    double probe_freq = 0.0;  // lab frame (rad/s)
    Complex r = 0.0;
    ReflectionMethod method = ReflectionMethod::Resolvent;
};

// First-order sideband response around the driven steady state:
//   (L0 + i Delta_p) rho_+ = i F [port1^dag, rho_ss],   r = 1 - i <port1>_+ / F.
// Exact in the drive, first order in the probe; r is independent of F.
Complex resolvent_reflection(const ComplexMatrix& liouvillian,
                             const ComplexMatrix& rho_ss,
                             const ComplexMatrix& port1, double detuning,
                             Complex probe_amp = 1.0);

ReflectionResult linear_response_reflection(const LindbladModel& model,
                                            const SystemParams& p,
                                            double probe_freq, Complex probe_amp = 1.0);

// |r| over one drive row: shares the Liouvillian factorization inputs across
// probe frequencies.
RealVector reflection_row(const SystemParams& p, const RealVector& probe_freqs);

// |r| on a (rabi x probe) grid. The parallel kernel distributes rows across
// OpenMP threads; results are merged by index, so output is identical to the
// serial reference for any worker count.
RealMatrix reflection_map_serial(const SystemParams& base, const RealVector& rabi_grid,
                                 const RealVector& probe_grid);
RealMatrix reflection_map(const SystemParams& base, const RealVector& rabi_grid,
                          const RealVector& probe_grid, int workers = 0);

// Reflection minimum of the |1~> -> |4~> line: the matched zero sits a few
// MHz off the bare transition because the neighboring |3~> -> |1~> line
// interferes. Scans +-10 MHz around the bare frequency.
double matched_dip_probe(const SystemParams& p);

// Oracle: integrate the rotating-frame master equation with the explicit
// time-dependent probe and extract the e^{-i Delta_p t} harmonic of <port1>
// over `periods` full probe periods after `relax_factor / min(kappa, gamma)`
// of settling time.
ReflectionResult time_domain_reflection(const SystemParams& p, double probe_freq,
                                        Complex probe_amp, double relax_factor = 16.0,
                                        int periods = 64, int points_per_period = 80);

// Frequencies-divided-by-`factor` copy of p (rates untouched); the standard
// configuration for cross-checking the resolvent path against time-domain
// integration at an affordable stiffness.
SystemParams scaled_params(const SystemParams& p, double factor);

}  // namespace lamsim
