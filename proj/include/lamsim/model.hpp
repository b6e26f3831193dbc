// model.hpp — Physical parameters, bare operators, rotating-frame Hamiltonian

#pragma once

#include "lamsim/linalg.hpp"

namespace lamsim {

// Unit helpers. Everything inside the library is angular frequency (rad/s);
// ordinary GHz/MHz appear only at the config/CSV boundary.
inline double ghz(double f) { return two_pi * f * 1e9; }
inline double mhz(double f) { return two_pi * f * 1e6; }
inline double to_ghz(double w) { return w / (two_pi * 1e9); }
inline double to_mhz(double w) { return w / (two_pi * 1e6); }

struct SystemParams {
    double omega_q = 0.0;   // qubit frequency (rad/s)
    double omega_r = 0.0;   // resonator frequency (rad/s)
    double g = 0.0;         // qubit-resonator coupling (rad/s)
    double kappa = 0.0;     // resonator decay into waveguide 1 (rad/s)
    double gamma = 0.0;     // qubit decay into waveguide 2 (rad/s)
    double omega_d = 0.0;   // drive frequency (rad/s)
    Complex drive_amp = 0.0;  // E, sqrt(photons/s)
    int n_max = 4;          // Fock truncation: photon states 0..n_max

    int dim() const { return 2 * (n_max + 1); }

    // Rabi frequency Omega_R = sqrt(gamma) |E|.
    double rabi() const { return std::sqrt(gamma) * std::abs(drive_amp); }

    // Throws InvalidParams on hard violations; returns true when the
    // dispersive margin is comfortable (|omega_r - omega_q| >= 5 g),
    // false in the warn zone 2g < |Delta| < 5g.
    bool validate() const;
};

// Copy of p with |E| chosen so that sqrt(gamma)|E| = rabi; phase preserved
// when the existing amplitude is nonzero, otherwise real positive.
SystemParams with_rabi(const SystemParams& p, double rabi);

struct BareOperators {
    ComplexMatrix a;      // resonator annihilation on the joint space
    ComplexMatrix sigma;  // qubit annihilation on the joint space
    int dim = 0;
};

// Joint-space index for |m>_q (x) |n>_r with qubit-major ordering.
inline int bare_index(int m, int n, int n_max) { return m * (n_max + 1) + n; }

BareOperators build_bare_operators(const SystemParams& p);

// Static Hamiltonian in the frame rotating at the drive frequency:
//   H = (wq-wd) s^dag s + (wr-wd) a^dag a + g (s^dag a + a^dag s)
//     + sqrt(gamma) (E s^dag + E* s)
ComplexMatrix build_rotating_hamiltonian(const SystemParams& p);

}  // namespace lamsim
