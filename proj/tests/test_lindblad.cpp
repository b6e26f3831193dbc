#include <doctest.h>

#include "helpers.hpp"
#include "lamsim/errors.hpp"
#include "lamsim/lindblad.hpp"
#include "lamsim/rng.hpp"

using namespace lamsim;
using lamsim::testing::reference_params;

namespace {

SystemParams matched_reference() {
    return with_rabi(reference_params(4.87), mhz(19.0));
}

}  // namespace

TEST_CASE("damped cavity: <n> decays at exactly kappa") {
    SystemParams p = reference_params();
    p.g = 0.0;
    p.gamma = 0.0;
    p.drive_amp = 0.0;
    const LindbladModel model = build_lindblad_rotating(p);
    const BareOperators ops = build_bare_operators(p);
    const ComplexMatrix num = ops.a.adjoint() * ops.a;

    // start with one photon, qubit ground
    ComplexMatrix rho = ComplexMatrix::Zero(p.dim(), p.dim());
    const int one = bare_index(0, 1, p.n_max);
    rho(one, one) = 1.0;

    std::vector<double> times, values;
    const auto observer = [&](double t, const ComplexMatrix& r) {
        times.push_back(t);
        values.push_back((num * r).trace().real());
    };
    const double dt = suggest_dt(model);
    time_evolve(model, rho, 0.0, 3.0 / p.kappa, dt, nullptr, observer);

    // least-squares slope of log <n> against t
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (size_t k = 0; k < times.size(); ++k) {
        st += times[k];
        sy += std::log(values[k]);
        stt += times[k] * times[k];
        sty += times[k] * std::log(values[k]);
    }
    const double n = double(times.size());
    const double slope = (n * sty - st * sy) / (n * stt - st * st);
    CHECK(-slope == doctest::Approx(p.kappa).epsilon(0.005));
}

TEST_CASE("generator annihilates the trace on random densities") {
    SplitMix64 rng(31);
    const LindbladModel model = build_lindblad_rotating(matched_reference());
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix rho = rng.density(model.dim);
        const ComplexMatrix l = apply_generator(model, rho);
        CHECK(std::abs(l.trace()) <= 1e-12 * max_abs(l) * model.dim);
    }
}

TEST_CASE("superoperator matrix reproduces the operator form") {
    SplitMix64 rng(32);
    const LindbladModel model = build_lindblad_rotating(matched_reference());
    const ComplexMatrix sup = superoperator_matrix(model);
    const ComplexMatrix rho = rng.density(model.dim);
    const ComplexMatrix direct = apply_generator(model, rho);
    const ComplexMatrix via_sup = unvec(ComplexVector(sup * vec(rho)), model.dim);
    CHECK(max_abs(via_sup - direct) <= 1e-10 * max_abs(direct));
}

TEST_CASE("steady state: undriven system relaxes to the joint ground state") {
    SystemParams p = reference_params();
    p.drive_amp = 0.0;
    const LindbladModel model = build_lindblad_rotating(p);
    const SteadyState ss = steady_state(model);
    const int g0 = bare_index(0, 0, p.n_max);
    CHECK(std::abs(ss.rho(g0, g0).real() - 1.0) <= 1e-9);
    CHECK(ss.residual <= 1e-9 * p.kappa);
}

TEST_CASE("steady state at the matching drive: dressed ground state dominates") {
    const SystemParams p = matched_reference();
    const LindbladModel model = build_lindblad_rotating(p);
    const SteadyState ss = steady_state(model);

    const DressedBasis basis = diagonalize_system(p);
    const ComplexMatrix dressed = basis.vectors.adjoint() * ss.rho * basis.vectors;
    CHECK(dressed(0, 0).real() >= 0.95);

    const BareOperators ops = build_bare_operators(p);
    CHECK(((ops.a.adjoint() * ops.a) * ss.rho).trace().real() <= 0.02);

    CHECK(std::abs(ss.rho.trace().real() - 1.0) <= 1e-10);
    CHECK(max_abs(ss.rho - ss.rho.adjoint()) <= 1e-10);
    CHECK(hermitian_eig(ss.rho).eigenvalues.minCoeff() >= -1e-8);
}

TEST_CASE("closed system evolution preserves purity") {
    SystemParams p = reference_params();
    p.kappa = 0.0;
    p.gamma = 0.0;
    p.drive_amp = 0.0;
    const LindbladModel model = build_lindblad_rotating(p);

    SplitMix64 rng(33);
    ComplexMatrix psi = rng.complex_matrix(p.dim(), 1);
    psi /= std::sqrt(psi.squaredNorm());
    const ComplexMatrix rho0 = psi * psi.adjoint();

    const double dt = suggest_dt(model, 0.0, 160);
    std::vector<double> purity;
    time_evolve(model, rho0, 0.0, 1000.0 * dt, dt, nullptr,
                [&](double, const ComplexMatrix& r) {
                    purity.push_back((r * r).trace().real());
                });
    for (double v : purity) CHECK(std::abs(v - 1.0) <= 1e-8);
}

TEST_CASE("steady state requires a one-dimensional null space") {
    SystemParams p = reference_params();
    p.kappa = 0.0;
    p.gamma = 0.0;
    p.drive_amp = 0.0;  // closed system: every eigenstate is stationary
    const LindbladModel model = build_lindblad_rotating(p);
    CHECK_THROWS_WITH_AS(steady_state(model), doctest::Contains("DegenerateSteadyState"),
                         SimError);
}

TEST_CASE("time_evolve rejects steps that lose the trace") {
    const SystemParams p = matched_reference();
    const LindbladModel model = build_lindblad_rotating(p);
    ComplexMatrix rho = ComplexMatrix::Zero(p.dim(), p.dim());
    rho(0, 0) = 1.0;
    const double huge = 100.0 / p.kappa;
    CHECK_THROWS_WITH_AS(time_evolve(model, rho, 0.0, 10.0 * huge, huge),
                         doctest::Contains("StepTooLarge"), SimError);
}

TEST_CASE("secular model: steady state, transition bookkeeping, manifold guard") {
    const SystemParams p = matched_reference();
    const DressedBasis basis = diagonalize_system(p);
    const double probe = p.omega_d + basis.energies[3] - basis.energies[0];

    const LindbladModel sec = build_lindblad_secular(p, probe, 0.0, 4);
    CHECK(sec.dim == 4);
    CHECK(max_abs(sec.h_eff - sec.h_eff.adjoint()) <= 1e-10 * max_abs(sec.h_eff));

    // F = 0: everything funnels into |1~>
    const SteadyState ss = steady_state(sec);
    CHECK(std::abs(ss.rho(0, 0).real() - 1.0) <= 1e-6);

    // lab-frame transition frequencies from the bookkeeping
    double lab41 = 0.0, lab42 = 0.0;
    for (const CollapseChannel& c : sec.channels) {
        if (c.waveguide != 1) continue;
        if (c.from == 3 && c.to == 0) lab41 = c.lab_frequency;
        if (c.from == 3 && c.to == 1) lab42 = c.lab_frequency;
    }
    CHECK(std::abs(lab41 - ghz(10.066)) <= mhz(5.0));
    CHECK(std::abs(lab42 - ghz(9.977)) <= mhz(5.0));

    // uphill cross-manifold channels are absent; downhill ones are present
    for (const CollapseChannel& c : sec.channels)
        if (c.from != c.to)
            CHECK(sec.dressed_energies[c.from] > sec.dressed_energies[c.to]);

    // hybridized manifolds are rejected
    const SystemParams strong = with_rabi(reference_params(4.87), ghz(3.0));
    CHECK_THROWS_WITH_AS(build_lindblad_secular(strong, probe, 0.0, 4),
                         doctest::Contains("ManifoldOverlap"), SimError);
}

TEST_CASE("secular model matches the collective model at zero probe") {
    const SystemParams p = matched_reference();
    const LindbladModel rot = build_lindblad_rotating(p);
    const SteadyState ss = steady_state(rot);
    const DressedBasis basis = diagonalize_system(p);
    const ComplexMatrix dressed = basis.vectors.adjoint() * ss.rho * basis.vectors;
    // exact collective model leaks only marginally out of |1~>
    CHECK(std::abs(dressed(0, 0).real() - 1.0) <= 0.02);
    for (int j = 1; j < 4; ++j) CHECK(dressed(j, j).real() <= 0.02);
}
