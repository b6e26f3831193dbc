#include <doctest.h>

#include "helpers.hpp"
#include "lamsim/errors.hpp"
#include "lamsim/matching.hpp"
#include "lamsim/response.hpp"
#include "lamsim/spectrum.hpp"

using namespace lamsim;
using lamsim::testing::reference_params;

namespace {

SystemParams matched_reference() {
    const SystemParams p = reference_params(4.87);
    const MatchPoint mp = find_matching_power(p, MatchLevel::Four, 0.0, mhz(50.0));
    return with_rabi(p, mp.rabi);
}

double resonance_41(const SystemParams& p) {
    const DressedBasis basis = diagonalize_system(p);
    return p.omega_d + basis.energies[3] - basis.energies[0];
}

double resonance_42(const SystemParams& p) {
    const DressedBasis basis = diagonalize_system(p);
    return p.omega_d + basis.energies[3] - basis.energies[1];
}

}  // namespace

TEST_CASE("correlation at tau = 0 equals the steady-state expectation") {
    const SystemParams p = matched_reference();
    const LindbladModel sec =
        build_lindblad_secular(p, resonance_41(p), std::sqrt(1e5), 4);
    const SteadyState ss = steady_state(sec);

    const CollapseChannel& c42 = *std::find_if(
        sec.channels.begin(), sec.channels.end(),
        [](const CollapseChannel& c) { return c.from == 3 && c.to == 1; });
    const RealVector tau = RealVector::LinSpaced(32, 0.0, 31 * 0.02 / p.kappa);
    const auto corr =
        two_time_correlation(sec, ss, c42.op.adjoint(), c42.op, tau);
    const Complex direct = (c42.op.adjoint() * c42.op * ss.rho).trace();
    CHECK(std::abs(corr[0] - direct) <= 1e-10 * std::abs(direct));
}

TEST_CASE("empty steady state emits nothing") {
    const SystemParams p = matched_reference();
    const LindbladModel sec = build_lindblad_secular(p, resonance_41(p), 0.0, 4);
    const SteadyState ss = steady_state(sec);

    // collective waveguide-1 fluctuation operator
    ComplexMatrix s_k = ComplexMatrix::Zero(4, 4);
    for (const CollapseChannel& c : sec.channels)
        if (c.waveguide == 1) s_k += c.op;
    const Complex mean = (s_k * ss.rho).trace();
    const ComplexMatrix ds = s_k - mean * ComplexMatrix::Identity(4, 4);

    const RealVector tau = RealVector::LinSpaced(64, 0.0, 63 * 0.02 / p.kappa);
    const auto corr = two_time_correlation(sec, ss, ds.adjoint(), ds, tau);
    for (const Complex& c : corr) CHECK(std::abs(c) <= 1e-10 * p.kappa);
}

TEST_CASE("correlation envelope decays at least at gamma/4 beyond 10/kappa") {
    const SystemParams p = matched_reference();
    const LindbladModel sec =
        build_lindblad_secular(p, resonance_41(p), std::sqrt(1e5), 4);
    const SteadyState ss = steady_state(sec);

    const CollapseChannel& c42 = *std::find_if(
        sec.channels.begin(), sec.channels.end(),
        [](const CollapseChannel& c) { return c.from == 3 && c.to == 1; });
    const Complex mean = (c42.op * ss.rho).trace();
    const ComplexMatrix dc = c42.op - mean * ComplexMatrix::Identity(4, 4);

    const RealVector tau = default_tau_grid(p);
    const auto corr = two_time_correlation(sec, ss, dc.adjoint(), dc, tau);
    const double c0 = std::abs(corr[0]);
    const double t0 = 10.0 / p.kappa;
    for (Eigen::Index k = 0; k < tau.size(); k += 500) {
        if (tau[k] <= t0) continue;
        CHECK(std::abs(corr[k]) <=
              c0 * std::exp(-p.gamma * (tau[k] - t0) / 4.0) + 1e-12 * c0);
    }
}

TEST_CASE("weak-probe spectrum: dominant down-converted peak at the 4-2 line") {
    const SystemParams p = matched_reference();
    const Spectrum spec = output_spectrum(p, resonance_41(p), std::sqrt(1e5));

    Eigen::Index imax = 0;
    spec.s_inc.maxCoeff(&imax);
    CHECK(std::abs(spec.freqs[imax] - resonance_42(p)) <= mhz(5.0));
    CHECK(std::abs(resonance_42(p) - ghz(9.977)) <= mhz(5.0));

    // the peak region carries at least 80% of the incoherent flux
    double peak_flux = 0.0;
    for (Eigen::Index k = 0; k + 1 < spec.freqs.size(); ++k)
        if (std::abs(spec.freqs[k] - resonance_42(p)) <= 10.0 * p.kappa)
            peak_flux += 0.5 * (spec.s_inc[k] + spec.s_inc[k + 1]) *
                         (spec.freqs[k + 1] - spec.freqs[k]);
    CHECK(peak_flux >= 0.80 * spec.incoherent_flux);

    // numerical floor
    CHECK(spec.s_inc.minCoeff() >= -1e-6 * spec.s_inc.maxCoeff());
}

TEST_CASE("probe off: no incoherent emission") {
    const SystemParams p = matched_reference();
    const Spectrum ref = output_spectrum(p, resonance_41(p), std::sqrt(1e5));
    const Spectrum dark = output_spectrum(p, resonance_41(p), 0.0, ref.freqs);
    CHECK(dark.s_inc.cwiseAbs().maxCoeff() <= 1e-10 * ref.s_inc.maxCoeff());
    CHECK(dark.incoherent_flux <= 1e-10 * ref.incoherent_flux);
}

TEST_CASE("photon flux is conserved within 5% at weak probe") {
    const SystemParams p = matched_reference();
    const Spectrum spec = output_spectrum(p, matched_dip_probe(p), std::sqrt(1e5));
    const double total =
        spec.coherent_flux + spec.band_incoherent_flux + spec.wg2_upper_flux;
    CHECK(std::abs(total - spec.input_flux) <= 0.05 * spec.input_flux);
}

TEST_CASE("line broadens as the probe power grows") {
    const SystemParams p = matched_reference();
    const double c42 = resonance_42(p);
    const RealVector grid = RealVector::LinSpaced(1601, c42 - 8 * p.kappa, c42 + 8 * p.kappa);

    const auto fwhm = [&](double flux) {
        const Spectrum spec = output_spectrum(p, resonance_41(p), std::sqrt(flux), grid);
        const double half = 0.5 * spec.s_inc.maxCoeff();
        double lo = c42, hi = c42;
        for (Eigen::Index k = 0; k < grid.size(); ++k)
            if (spec.s_inc[k] >= half) {
                lo = std::min(lo, grid[k]);
                hi = std::max(hi, grid[k]);
            }
        return hi - lo;
    };
    const double w_weak = fwhm(1e5);
    const double w_strong = fwhm(1e7);
    CHECK(w_strong > w_weak);
}

TEST_CASE("saturation populates the metastable dressed state") {
    const SystemParams p = matched_reference();
    const double probe = resonance_41(p);
    const auto pop2 = [&](double flux) {
        const LindbladModel sec = build_lindblad_secular(p, probe, std::sqrt(flux), 4);
        return steady_state(sec).rho(1, 1).real();
    };
    CHECK(pop2(1e5) < 0.02);
    CHECK(pop2(1e7) > 0.1);
}

TEST_CASE("down-conversion efficiency: near unity, then saturating") {
    const SystemParams p = matched_reference();
    const auto points = down_conversion_efficiency(p, {1e5, 1e6, 1e7});
    REQUIRE(points.size() == 3);

    CHECK(points[0].eta >= 0.85);
    CHECK(points[0].eta < 1.0);
    CHECK(points[1].eta < points[0].eta);
    CHECK(points[2].eta < points[1].eta);
    CHECK(points[2].eta < 0.5 * points[0].eta);

    for (const EfficiencyPoint& pt : points)
        CHECK(std::abs(pt.peak_freq - pt.target_freq) <= mhz(5.0));
}

TEST_CASE("efficiency window overlap is detected") {
    // with kappa ~ 30 MHz, 4 kappa exceeds the 2-1 splitting at weak drive
    SystemParams p = reference_params(4.87);
    p.kappa = mhz(30.0);
    const SystemParams q = with_rabi(p, mhz(2.0));
    CHECK_THROWS_WITH_AS(down_conversion_efficiency(q, {1e5}),
                         doctest::Contains("WindowOverlap"), SimError);
}
