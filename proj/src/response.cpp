#include "lamsim/response.hpp"

#include <cmath>

#include <omp.h>

#include "lamsim/errors.hpp"

namespace lamsim {

Complex resolvent_reflection(const ComplexMatrix& liouvillian,
                             const ComplexMatrix& rho_ss,
                             const ComplexMatrix& port1, double detuning,
                             Complex probe_amp) {
    const int d = int(rho_ss.rows());
    const ComplexMatrix source =
        Complex(0.0, 1.0) * probe_amp *
        (port1.adjoint() * rho_ss - rho_ss * port1.adjoint());

    ComplexMatrix shifted = liouvillian;
    shifted.diagonal().array() += Complex(0.0, detuning);

    ComplexVector sideband;
    try {
        sideband = solve_linear(shifted, vec(source));
    } catch (const SimError& e) {
        if (e.kind() != "Singular") throw;
        // The shift can land on the generator's zero mode (detuning -> 0).
        // The sideband is traceless, so deflate: substitute the trace row
        // and verify the deflated solution still solves the original system.
        ComplexMatrix deflated = shifted;
        const double scale = std::max(max_abs(deflated), 1e-300);
        for (int j = 0; j < d * d; ++j) deflated(0, j) = 0.0;
        for (int j = 0; j < d; ++j) deflated(0, j * (d + 1)) = scale;
        ComplexVector rhs = vec(source);
        rhs(0) = 0.0;
        sideband = solve_linear(deflated, rhs);
        const double residual = max_abs(unvec(
            ComplexVector(shifted * sideband - vec(source)), d));
        if (residual > 1e-8 * std::max(max_abs(source), 1e-300))
            fail("ResolventSingular", "probe detuning hits an undamped mode");
    }
    const ComplexMatrix rho_plus = unvec(sideband, d);
    return 1.0 - Complex(0.0, 1.0) * (port1 * rho_plus).trace() / probe_amp;
}

ReflectionResult linear_response_reflection(const LindbladModel& model,
                                            const SystemParams& p,
                                            double probe_freq, Complex probe_amp) {
    const SteadyState ss = steady_state(model);
    const ComplexMatrix sup = superoperator_matrix(model);
    ReflectionResult out;
    out.probe_freq = probe_freq;
    out.r = resolvent_reflection(sup, ss.rho, model.port1, probe_freq - p.omega_d,
                                 probe_amp);
    out.method = ReflectionMethod::Resolvent;
    return out;
}

RealVector reflection_row(const SystemParams& p, const RealVector& probe_freqs) {
    const LindbladModel model = build_lindblad_rotating(p);
    const SteadyState ss = steady_state(model);
    const ComplexMatrix sup = superoperator_matrix(model);

    RealVector row(probe_freqs.size());
    for (Eigen::Index k = 0; k < probe_freqs.size(); ++k)
        row[k] = std::abs(resolvent_reflection(sup, ss.rho, model.port1,
                                               probe_freqs[k] - p.omega_d));
    return row;
}

RealMatrix reflection_map_serial(const SystemParams& base, const RealVector& rabi_grid,
                                 const RealVector& probe_grid) {
    RealMatrix map(rabi_grid.size(), probe_grid.size());
    for (Eigen::Index i = 0; i < rabi_grid.size(); ++i)
        map.row(i) = reflection_row(with_rabi(base, rabi_grid[i]), probe_grid);
    return map;
}

RealMatrix reflection_map(const SystemParams& base, const RealVector& rabi_grid,
                          const RealVector& probe_grid, int workers) {
    RealMatrix map(rabi_grid.size(), probe_grid.size());
    const int rows = int(rabi_grid.size());
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
    for (int i = 0; i < rows; ++i)
        map.row(i) = reflection_row(with_rabi(base, rabi_grid[i]), probe_grid);
    return map;
}

double matched_dip_probe(const SystemParams& p) {
    const DressedBasis basis = diagonalize_system(p);
    const double res41 = p.omega_d + basis.energies[3] - basis.energies[0];
    const RealVector scan =
        RealVector::LinSpaced(161, res41 - mhz(10.0), res41 + mhz(10.0));
    const RealVector row = reflection_row(p, scan);
    Eigen::Index imin = 0;
    row.minCoeff(&imin);
    return scan[imin];
}

SystemParams scaled_params(const SystemParams& p, double factor) {
    SystemParams out = p;
    out.omega_q /= factor;
    out.omega_r /= factor;
    out.omega_d /= factor;
    out.g /= factor;
    out.drive_amp /= factor;  // keeps Omega_R scaled with the frequencies
    return out;
}

ReflectionResult time_domain_reflection(const SystemParams& p, double probe_freq,
                                        Complex probe_amp, double relax_factor,
                                        int periods, int points_per_period) {
    const double detuning = probe_freq - p.omega_d;
    if (std::abs(detuning) <= 0.0)
        fail("InvalidParams", "time-domain extraction needs a nonzero probe detuning");

    const LindbladModel model = build_lindblad_rotating(p);
    ComplexMatrix rho = steady_state(model).rho;

    ProbeDrive probe;
    probe.raise_op = model.port1.adjoint();  // sqrt(kappa) a^dag
    probe.amplitude = probe_amp;
    probe.detuning = detuning;

    // Integer steps per probe period so the harmonic average closes exactly.
    const double period = two_pi / std::abs(detuning);
    double dt = suggest_dt(model, detuning, points_per_period);
    const int per_period = std::max(points_per_period, int(std::ceil(period / dt)));
    dt = period / per_period;

    const double slow = std::min(p.kappa, p.gamma) > 0.0
                            ? std::min(p.kappa, p.gamma)
                            : std::max(p.kappa, p.gamma);
    const long relax_steps =
        std::lround(std::ceil(relax_factor / slow / dt / per_period)) * per_period;
    const double t_relax = relax_steps * dt;
    rho = time_evolve(model, std::move(rho), 0.0, t_relax, dt, &probe);

    // Trapezoid over `periods` full periods of e^{+i detuning t} <port1>(t).
    const double t_avg = periods * period;
    Complex acc = 0.0;
    Complex prev = 0.0;
    double t_prev = 0.0;
    bool first = true;
    const auto observer = [&](double time, const ComplexMatrix& r) {
        const Complex cur =
            std::exp(Complex(0.0, detuning * time)) * (model.port1 * r).trace();
        if (!first) acc += 0.5 * (prev + cur) * (time - t_prev);
        first = false;
        prev = cur;
        t_prev = time;
    };
    rho = time_evolve(model, std::move(rho), t_relax, t_relax + t_avg, dt, &probe,
                      observer);
    const Complex harmonic = acc / t_avg;

    ReflectionResult out;
    out.probe_freq = probe_freq;
    out.r = 1.0 - Complex(0.0, 1.0) * harmonic / probe_amp;
    out.method = ReflectionMethod::TimeDomain;
    return out;
}

}  // namespace lamsim
