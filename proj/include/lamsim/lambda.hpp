// lambda.hpp — Minimal three-level Lambda system used as a structural oracle

#pragma once

#include "lamsim/lindblad.hpp"

namespace lamsim {

struct LambdaParams {
    double gamma_eg = 0.0;      // |e> -> |g> radiative rate into the waveguide (rad/s)
    double gamma_em = 0.0;      // |e> -> |m> radiative rate (rad/s)
    double gamma_mg = 0.0;      // |m> -> |g> recovery rate (rad/s); must be > 0
    double probe_detuning = 0.0;  // delta from the g->e transition (rad/s)
    Complex probe_amp = 0.0;      // F (sqrt(photons/s))
};

// Three-level Lindblad model in the frame rotating at the g->e transition,
// basis order (g, m, e). The probe enters the Hamiltonian only when
// include_probe is set; lambda_reflection uses the probe-free generator.
LindbladModel build_lambda_model(const LambdaParams& p, bool include_probe);

// Weak-probe reflection from the g->e port via the same resolvent machinery
// as the full model.
Complex lambda_reflection(const LambdaParams& p);

// Raman conversion efficiency at finite probe power: inelastic flux on the
// e->m line divided by the input flux |F|^2.
double lambda_efficiency(const LambdaParams& p);

}  // namespace lamsim
