// lindblad.hpp — Open-system generator, steady states, time evolution

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lamsim/dressed.hpp"

namespace lamsim {

enum class Frame { RotatingAtDrive, DressedSecular };

struct CollapseChannel {
    ComplexMatrix op;       // carries sqrt(rate): e.g. sqrt(kappa_ij) |j~><i~|
    ComplexMatrix opdag_op; // cached op^dag op
    int waveguide = 1;      // 1 = resonator port, 2 = qubit port
    int from = -1;          // dressed transition |from~> -> |to~>; -1 = collective
    int to = -1;
    double lab_frequency = 0.0;  // emission carrier in the lab frame (rad/s)
    double frame_offset = 0.0;   // lab frequency = frame_offset + (oscillation frequency in the model frame)
};

struct LindbladModel {
    Frame frame = Frame::RotatingAtDrive;
    ComplexMatrix h_eff;                    // static Hamiltonian in the model frame (rad/s)
    std::vector<CollapseChannel> channels;
    ComplexMatrix port1;  // waveguide-1 lowering operator: b_out = b_in - i <port1>
    int dim = 0;

    // Secular-frame bookkeeping (empty for RotatingAtDrive).
    double omega_d = 0.0;
    double probe_detuning = 0.0;       // Delta_p = omega_p - omega_d
    Complex probe_amp = 0.0;
    std::vector<int> photon_number;    // manifold index n_j per kept level
    RealVector dressed_energies;       // rotating-frame energies of kept levels
};

// Collective channels sqrt(kappa) a and sqrt(gamma) sigma with the
// rotating-frame system Hamiltonian. Exact at any drive strength.
LindbladModel build_lindblad_rotating(const SystemParams& p);

// Effective model on the lowest `levels` dressed states in a frame where the
// probe coupling is static: level j is shifted by n_j * Delta_p (n_j = photon
// number of its manifold), each dressed transition becomes its own collapse
// channel (secular approximation), and only downhill and diagonal channels
// are kept (uphill cross-manifold channels correspond to negative lab
// frequencies and vanish for a vacuum waveguide).
// Throws ManifoldOverlap when within-manifold spacings exceed the gap
// between manifolds.
LindbladModel build_lindblad_secular(const SystemParams& p, double probe_freq,
                                     Complex probe_amp, int levels = 4);

// L(rho) for the static part of the model.
ComplexMatrix apply_generator(const LindbladModel& model, const ComplexMatrix& rho);

// Column-major vectorization and the matching superoperator matrix.
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, int d);
ComplexMatrix superoperator_matrix(const LindbladModel& model);

struct SteadyState {
    ComplexMatrix rho;
    double residual = 0.0;  // max |L(rho)| (1/s)
};

// Unique stationary state via a linear solve with the trace row substituted.
// Throws DegenerateSteadyState when the generator's null space is not
// one-dimensional.
SteadyState steady_state(const LindbladModel& model);

// Time-dependent probe term  amp e^{-i detuning t} raise_op + h.c.
struct ProbeDrive {
    ComplexMatrix raise_op;  // e.g. sqrt(kappa) a^dag
    Complex amplitude;       // F
    double detuning = 0.0;   // Delta_p
};

// Fixed-step RK4 integration of the master equation from t0 to t1.
// The observer (if any) sees every accepted step including the initial state.
// Throws StepTooLarge when the trace drifts by more than 1e-8.
ComplexMatrix time_evolve(const LindbladModel& model, ComplexMatrix rho,
                          double t0, double t1, double dt,
                          const ProbeDrive* probe = nullptr,
                          const std::function<void(double, const ComplexMatrix&)>& observer = {});

// Step size resolving the fastest frequency in the model (plus an optional
// extra detuning) with `points_per_period` samples.
double suggest_dt(const LindbladModel& model, double extra_freq = 0.0,
                  int points_per_period = 80);

}  // namespace lamsim
