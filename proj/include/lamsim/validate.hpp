// validate.hpp — Cross-oracle and structural invariant suite

#pragma once

#include <string>
#include <vector>

#include "lamsim/model.hpp"

namespace lamsim {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs the full invariant suite on the given configuration: generator
// algebra, steady-state bounds, decay-table sum rules, rate-inversion
// structure, resolvent-vs-time-domain agreement on the scaled configuration,
// reduced-Lambda cross-check, photon-flux conservation, and truncation
// convergence.
std::vector<CheckResult> run_validation(const SystemParams& p, int workers = 0);

}  // namespace lamsim
