// helpers.hpp — Shared fixtures for the test suite

#pragma once

#include "lamsim/model.hpp"

namespace lamsim::testing {

// Reference configuration: wq/2pi = 5 GHz, wr/2pi = 10 GHz, g/2pi = 500 MHz,
// kappa/2pi = 20 MHz, gamma/2pi = 1 MHz.
inline SystemParams reference_params(double omega_d_ghz = 4.87, int n_max = 4) {
    SystemParams p;
    p.omega_q = ghz(5.0);
    p.omega_r = ghz(10.0);
    p.g = mhz(500.0);
    p.kappa = mhz(20.0);
    p.gamma = mhz(1.0);
    p.omega_d = ghz(omega_d_ghz);
    p.n_max = n_max;
    return p;
}

}  // namespace lamsim::testing
