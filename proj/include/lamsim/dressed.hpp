// dressed.hpp — Dressed states, radiative decay tables, nesting classification

#pragma once

#include <vector>

#include "lamsim/model.hpp"

namespace lamsim {

struct StateLabel {
    int qubit = 0;         // dominant bare component |m,n>
    int photon = 0;
    double weight = 0.0;   // overlap |<m,n|j~>|^2
    bool mixed = false;    // weight < 0.5
};

struct DressedBasis {
    RealVector energies;            // ascending, rotating frame (rad/s)
    ComplexMatrix vectors;          // column j = |j~> in the bare basis
    std::vector<StateLabel> labels;
};

// Eigenstates of the rotating-frame Hamiltonian, energy-ascending, with
// dominant-bare-component labels.
DressedBasis diagonalize_system(const SystemParams& p);

struct DecayTable {
    // rate for the |i~> -> |j~> transition (0-based dressed indices):
    //   kappa_t(i,j) = kappa |<i~|a^dag|j~>|^2   (waveguide 1)
    //   gamma_t(i,j) = gamma |<i~|s^dag|j~>|^2   (waveguide 2)
    RealMatrix kappa_t;
    RealMatrix gamma_t;
    RealMatrix frequencies;  // energies[i] - energies[j]
};

DecayTable decay_rates(const DressedBasis& basis, const SystemParams& p,
                       const BareOperators& ops);

enum class Regime { Nesting, Unnesting };

struct RegimeClass {
    Regime kind = Regime::Unnesting;
    double chi = 0.0;        // dispersive shift g^2/(omega_r - omega_q) (rad/s)
    double window_lo = 0.0;  // omega_q - 3 chi
    double window_hi = 0.0;  // omega_q - chi
    bool boundary = false;   // omega_d within 2pi*1 MHz of a window endpoint
};

// Nesting iff omega_q - 3 chi < omega_d < omega_q - chi (strict).
RegimeClass classify_regime(const SystemParams& p);

struct PerturbativeLevel {
    int qubit = 0;
    int photon = 0;
    double energy = 0.0;  // rad/s, rotating frame
};

// Second-order dispersive energies, valid at E = 0:
//   w(0,n) = n (wr - wd + chi),  w(1,n) = wq - wd - chi + n (wr - wd - chi).
// Throws DegenerateDetuning when omega_r == omega_q.
std::vector<PerturbativeLevel> perturbative_energies(const SystemParams& p);

// Relabels a parameter sweep of bases by maximal eigenvector overlap with the
// previous point, anchoring at the first entry. Energies and vectors are left
// untouched; only labels are carried along branches.
// Throws AmbiguousTracking when the best overlap drops below 0.6.
std::vector<DressedBasis> track_branches(const std::vector<DressedBasis>& sweep);

}  // namespace lamsim
