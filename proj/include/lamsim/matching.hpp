// matching.hpp — Locating the impedance-matched drive power

#pragma once

#include "lamsim/dressed.hpp"

namespace lamsim {

enum class MatchLevel { Three = 3, Four = 4 };

// Signed rate difference k_{level,1} - k_{level,2} at the drive amplitude in
// p, using energy-ascending dressed labels. Positive at E = 0 in the nesting
// regime (|4~> = |0,1> decays to |1~> = |0,0>).
double rate_mismatch(const SystemParams& p, MatchLevel level);

struct MatchPoint {
    double rabi = 0.0;       // Omega_R at the crossing (rad/s)
    double drive_amp = 0.0;  // |E| (sqrt(photons/s))
    MatchLevel level = MatchLevel::Four;
    double residual = 0.0;   // |k_{l,1} - k_{l,2}| / kappa at the solution
    RegimeClass regime;
};

// Bisection over Omega_R on [rabi_lo, rabi_hi] to residual <= 1e-4.
// A fine prescan tracks branch identity across the bracket before bisecting.
// Throws NotNested outside the nesting regime and NoSignChange when the
// mismatch does not change sign on the bracket.
MatchPoint find_matching_power(const SystemParams& p, MatchLevel level,
                               double rabi_lo, double rabi_hi);

}  // namespace lamsim
