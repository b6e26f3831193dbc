#include "lamsim/matching.hpp"

#include <cmath>

#include "lamsim/errors.hpp"

namespace lamsim {

namespace {

double mismatch_at(const SystemParams& p, double rabi, MatchLevel level) {
    const SystemParams q = with_rabi(p, rabi);
    const DressedBasis basis = diagonalize_system(q);
    const BareOperators ops = build_bare_operators(q);
    const DecayTable table = decay_rates(basis, q, ops);
    const int i = int(level) - 1;
    return table.kappa_t(i, 0) - table.kappa_t(i, 1);
}

}  // namespace

double rate_mismatch(const SystemParams& p, MatchLevel level) {
    return mismatch_at(p, p.rabi(), level);
}

MatchPoint find_matching_power(const SystemParams& p, MatchLevel level,
                               double rabi_lo, double rabi_hi) {
    if (!(rabi_lo >= 0.0) || !(rabi_hi > rabi_lo))
        fail("InvalidParams", "matching bracket must satisfy 0 <= lo < hi");

    const RegimeClass regime = classify_regime(p);
    if (regime.kind != Regime::Nesting)
        fail("NotNested", "impedance matching requires the nesting regime");

    // Fine prescan: confirms stable branch identity across the bracket and
    // narrows the sign change before bisecting.
    constexpr int prescan = 64;
    std::vector<DressedBasis> bases;
    bases.reserve(prescan + 1);
    std::vector<double> values(prescan + 1);
    for (int k = 0; k <= prescan; ++k) {
        const double rabi = rabi_lo + (rabi_hi - rabi_lo) * k / prescan;
        const SystemParams q = with_rabi(p, rabi);
        bases.push_back(diagonalize_system(q));
        const DecayTable table = decay_rates(bases.back(), q, build_bare_operators(q));
        const int i = int(level) - 1;
        values[k] = table.kappa_t(i, 0) - table.kappa_t(i, 1);
    }
    track_branches(bases);  // throws AmbiguousTracking on a crossing too coarse to follow

    int seg = -1;
    for (int k = 0; k < prescan; ++k) {
        if (values[k] == 0.0 || values[k] * values[k + 1] < 0.0) {
            seg = k;
            break;
        }
    }
    if (seg < 0)
        fail("NoSignChange", "rate mismatch does not change sign on the bracket");

    double lo = rabi_lo + (rabi_hi - rabi_lo) * seg / prescan;
    double hi = rabi_lo + (rabi_hi - rabi_lo) * (seg + 1) / prescan;
    double flo = values[seg];

    double mid = 0.5 * (lo + hi);
    double fmid = mismatch_at(p, mid, level);
    for (int it = 0; it < 60 && std::abs(fmid) > 1e-4 * p.kappa; ++it) {
        if ((flo <= 0.0) == (fmid <= 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
        mid = 0.5 * (lo + hi);
        fmid = mismatch_at(p, mid, level);
    }
    if (std::abs(fmid) > 1e-4 * p.kappa)
        fail("NoConvergence", "bisection failed to reach the matching residual");

    MatchPoint out;
    out.rabi = mid;
    out.drive_amp = mid / std::sqrt(p.gamma);
    out.level = level;
    out.residual = std::abs(fmid) / p.kappa;
    out.regime = regime;
    return out;
}

}  // namespace lamsim
