#include "lamsim/model.hpp"

#include <cmath>

#include "lamsim/errors.hpp"

namespace lamsim {

bool SystemParams::validate() const {
    if (!(omega_q > 0.0) || !(omega_r > 0.0) || !(omega_d > 0.0))
        fail("InvalidParams", "frequencies omega_q, omega_r, omega_d must be positive");
    if (g < 0.0 || kappa < 0.0 || gamma < 0.0)
        fail("InvalidParams", "rates g, kappa, gamma must be nonnegative");
    if (n_max < 2)
        fail("InvalidParams", "n_max must be at least 2");
    if (!std::isfinite(std::abs(drive_amp)))
        fail("InvalidParams", "drive amplitude must be finite");
    const double detuning = std::abs(omega_r - omega_q);
    if (g > 0.0 && detuning <= 2.0 * g)
        fail("InvalidParams", "qubit-resonator detuning below 2g: not dispersive");
    return g == 0.0 || detuning >= 5.0 * g;
}

SystemParams with_rabi(const SystemParams& p, double rabi) {
    if (!(p.gamma > 0.0))
        fail("InvalidParams", "with_rabi requires gamma > 0");
    SystemParams out = p;
    const double mag = rabi / std::sqrt(p.gamma);
    const double old = std::abs(p.drive_amp);
    out.drive_amp = (old > 0.0) ? Complex(p.drive_amp * (mag / old)) : Complex(mag, 0.0);
    return out;
}

BareOperators build_bare_operators(const SystemParams& p) {
    p.validate();
    const int nm = p.n_max;
    const int d = p.dim();

    BareOperators ops;
    ops.dim = d;
    ops.a = ComplexMatrix::Zero(d, d);
    ops.sigma = ComplexMatrix::Zero(d, d);

    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < nm; ++n)
            ops.a(bare_index(m, n, nm), bare_index(m, n + 1, nm)) = std::sqrt(double(n + 1));

    for (int n = 0; n <= nm; ++n)
        ops.sigma(bare_index(0, n, nm), bare_index(1, n, nm)) = 1.0;

    return ops;
}

ComplexMatrix build_rotating_hamiltonian(const SystemParams& p) {
    const BareOperators ops = build_bare_operators(p);
    const ComplexMatrix ad = ops.a.adjoint();
    const ComplexMatrix sd = ops.sigma.adjoint();
    const double sqg = std::sqrt(p.gamma);

    ComplexMatrix h = (p.omega_q - p.omega_d) * (sd * ops.sigma)
                    + (p.omega_r - p.omega_d) * (ad * ops.a)
                    + p.g * (sd * ops.a + ad * ops.sigma)
                    + sqg * (p.drive_amp * sd + std::conj(p.drive_amp) * ops.sigma);
    return h;
}

}  // namespace lamsim
