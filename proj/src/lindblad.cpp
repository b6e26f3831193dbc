#include "lamsim/lindblad.hpp"

#include <cmath>
#include <limits>

#include "lamsim/errors.hpp"

namespace lamsim {

namespace {

CollapseChannel make_channel(ComplexMatrix op, int waveguide, int from, int to,
                             double lab_frequency, double frame_offset) {
    CollapseChannel c;
    c.op = std::move(op);
    c.opdag_op = c.op.adjoint() * c.op;
    c.waveguide = waveguide;
    c.from = from;
    c.to = to;
    c.lab_frequency = lab_frequency;
    c.frame_offset = frame_offset;
    return c;
}

}  // namespace

LindbladModel build_lindblad_rotating(const SystemParams& p) {
    LindbladModel model;
    model.frame = Frame::RotatingAtDrive;
    model.dim = p.dim();
    model.omega_d = p.omega_d;
    model.h_eff = build_rotating_hamiltonian(p);

    const BareOperators ops = build_bare_operators(p);
    if (p.kappa > 0.0)
        model.channels.push_back(make_channel(std::sqrt(p.kappa) * ops.a, 1, -1, -1,
                                              p.omega_d, p.omega_d));
    if (p.gamma > 0.0)
        model.channels.push_back(make_channel(std::sqrt(p.gamma) * ops.sigma, 2, -1, -1,
                                              p.omega_d, p.omega_d));
    model.port1 = std::sqrt(p.kappa) * ops.a;
    return model;
}

LindbladModel build_lindblad_secular(const SystemParams& p, double probe_freq,
                                     Complex probe_amp, int levels) {
    if (levels < 4)
        fail("InvalidParams", "secular model needs at least the four lowest levels");
    if (levels > p.dim())
        fail("InvalidParams", "secular cut exceeds the Hilbert-space dimension");

    const DressedBasis basis = diagonalize_system(p);
    const BareOperators ops = build_bare_operators(p);
    const DecayTable table = decay_rates(basis, p, ops);
    const double delta_p = probe_freq - p.omega_d;

    // a^dag and a^dag a in the dressed basis, restricted later to the cut.
    const ComplexMatrix adag_dressed =
        basis.vectors.adjoint() * ops.a.adjoint() * basis.vectors;
    const ComplexMatrix num_dressed =
        basis.vectors.adjoint() * (ops.a.adjoint() * ops.a) * basis.vectors;

    const int K = levels;
    std::vector<int> nphot(K);
    for (int j = 0; j < K; ++j) {
        const double n = num_dressed(j, j).real();
        nphot[j] = int(std::lround(n));
        if (std::abs(n - nphot[j]) > 0.2)
            fail("ManifoldOverlap",
                 "dressed level " + std::to_string(j + 1) +
                     " has no sharp photon number; manifolds are hybridized");
    }

    // Secular validity: manifolds must be spectrally separated.
    double max_within = 0.0;
    double min_cross = std::numeric_limits<double>::max();
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < i; ++j) {
            const double gap = basis.energies[i] - basis.energies[j];
            if (nphot[i] == nphot[j])
                max_within = std::max(max_within, gap);
            else
                min_cross = std::min(min_cross, std::abs(gap));
        }
    if (max_within >= min_cross)
        fail("ManifoldOverlap", "within-manifold spacing exceeds the manifold gap");

    LindbladModel model;
    model.frame = Frame::DressedSecular;
    model.dim = K;
    model.omega_d = p.omega_d;
    model.probe_detuning = delta_p;
    model.probe_amp = probe_amp;
    model.photon_number = nphot;
    model.dressed_energies = basis.energies.head(K);

    // Level energies in the co-rotating frame plus the now-static probe
    // coupling sqrt(kappa) F <i~|a^dag|j~> for n_i = n_j + 1 pairs.
    model.h_eff = ComplexMatrix::Zero(K, K);
    for (int j = 0; j < K; ++j)
        model.h_eff(j, j) = basis.energies[j] - nphot[j] * delta_p;
    const double sqk = std::sqrt(p.kappa);
    model.port1 = ComplexMatrix::Zero(K, K);
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) {
            if (nphot[i] != nphot[j] + 1) continue;
            const Complex aij = adag_dressed(i, j);
            model.h_eff(i, j) += sqk * probe_amp * aij;
            model.h_eff(j, i) += sqk * std::conj(probe_amp) * std::conj(aij);
            model.port1(j, i) = sqk * std::conj(aij);
        }

    // One collapse channel per dressed transition, downhill or diagonal.
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) {
            if (i != j && basis.energies[i] <= basis.energies[j]) continue;
            const double freq = basis.energies[i] - basis.energies[j];
            const double offset = p.omega_d + (nphot[i] - nphot[j]) * delta_p;
            if (table.kappa_t(i, j) > 0.0) {
                ComplexMatrix op = ComplexMatrix::Zero(K, K);
                op(j, i) = std::sqrt(table.kappa_t(i, j));
                model.channels.push_back(
                    make_channel(std::move(op), 1, i, j, p.omega_d + freq, offset));
            }
            if (table.gamma_t(i, j) > 0.0) {
                ComplexMatrix op = ComplexMatrix::Zero(K, K);
                op(j, i) = std::sqrt(table.gamma_t(i, j));
                model.channels.push_back(
                    make_channel(std::move(op), 2, i, j, p.omega_d + freq, offset));
            }
        }
    return model;
}

ComplexMatrix apply_generator(const LindbladModel& model, const ComplexMatrix& rho) {
    ComplexMatrix out = Complex(0.0, -1.0) * (model.h_eff * rho - rho * model.h_eff);
    for (const CollapseChannel& c : model.channels) {
        out.noalias() += c.op * rho * c.op.adjoint();
        out.noalias() -= 0.5 * (c.opdag_op * rho + rho * c.opdag_op);
    }
    return out;
}

ComplexVector vec(const ComplexMatrix& m) {
    return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, int d) {
    return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

ComplexMatrix superoperator_matrix(const LindbladModel& model) {
    const int d = model.dim;
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    ComplexMatrix sup = Complex(0.0, -1.0) *
                        (kron(id, model.h_eff) - kron(model.h_eff.transpose(), id));
    for (const CollapseChannel& c : model.channels) {
        sup.noalias() += kron(c.op.conjugate(), c.op);
        sup.noalias() -= 0.5 * kron(id, c.opdag_op);
        sup.noalias() -= 0.5 * kron(c.opdag_op.transpose(), id);
    }
    return sup;
}

SteadyState steady_state(const LindbladModel& model) {
    const int d = model.dim;
    const int n = d * d;
    ComplexMatrix sup = superoperator_matrix(model);

    // Dimensionless copy for the rank test; the null space is unaffected.
    const double scale = std::max(max_abs(sup), 1e-300);
    {
        Eigen::ColPivHouseholderQR<ComplexMatrix> qr(sup / scale);
        qr.setThreshold(1e-10);
        const int nullity = n - int(qr.rank());
        if (nullity != 1)
            fail("DegenerateSteadyState",
                 "generator null space has dimension " + std::to_string(nullity));
    }

    // Replace one row by the trace constraint Tr rho = 1.
    for (int j = 0; j < n; ++j) sup(0, j) = 0.0;
    for (int j = 0; j < d; ++j) sup(0, j * (d + 1)) = scale;
    ComplexVector rhs = ComplexVector::Zero(n);
    rhs(0) = scale;

    ComplexMatrix rho = unvec(vec(solve_linear(sup, rhs)), d);
    rho = 0.5 * (rho + ComplexMatrix(rho.adjoint()));
    rho /= rho.trace().real();

    SteadyState out;
    out.residual = max_abs(apply_generator(model, rho));
    out.rho = std::move(rho);

    const RealVector eigs = hermitian_eig(out.rho).eigenvalues;
    if (eigs.minCoeff() < -1e-8)
        fail("NumericalError", "steady state has eigenvalue " +
                                   std::to_string(eigs.minCoeff()));
    return out;
}

ComplexMatrix time_evolve(const LindbladModel& model, ComplexMatrix rho,
                          double t0, double t1, double dt,
                          const ProbeDrive* probe,
                          const std::function<void(double, const ComplexMatrix&)>& observer) {
    if (!(dt > 0.0) || !(t1 >= t0))
        fail("InvalidParams", "time_evolve needs dt > 0 and t1 >= t0");

    const double trace0 = rho.trace().real();
    const auto rhs = [&](double t, const ComplexMatrix& r) -> ComplexMatrix {
        ComplexMatrix out = apply_generator(model, r);
        if (probe) {
            const Complex phase =
                probe->amplitude * std::exp(Complex(0.0, -probe->detuning * t));
            const ComplexMatrix hp =
                phase * probe->raise_op + std::conj(phase) * probe->raise_op.adjoint();
            out += Complex(0.0, -1.0) * (hp * r - r * hp);
        }
        return out;
    };

    const long steps = std::lround(std::ceil((t1 - t0) / dt - 1e-12));
    double t = t0;
    if (observer) observer(t, rho);
    for (long s = 0; s < steps; ++s) {
        const double h = std::min(dt, t1 - t);
        const ComplexMatrix k1 = rhs(t, rho);
        const ComplexMatrix k2 = rhs(t + 0.5 * h, rho + (0.5 * h) * k1);
        const ComplexMatrix k3 = rhs(t + 0.5 * h, rho + (0.5 * h) * k2);
        const ComplexMatrix k4 = rhs(t + h, rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
        if (std::abs(rho.trace().real() - trace0) > 1e-8 * std::max(1.0, std::abs(trace0)) ||
            !rho.allFinite())
            fail("StepTooLarge", "trace drift exceeded 1e-8 at t = " + std::to_string(t));
        if (observer) observer(t, rho);
    }
    return rho;
}

double suggest_dt(const LindbladModel& model, double extra_freq, int points_per_period) {
    double fast = std::abs(extra_freq);
    const RealVector eigs = hermitian_eig(model.h_eff).eigenvalues;
    fast += std::max(std::abs(eigs.maxCoeff()), std::abs(eigs.minCoeff()));
    for (const CollapseChannel& c : model.channels) fast += max_abs(c.opdag_op);
    if (fast <= 0.0) fail("InvalidParams", "model has no dynamics to resolve");
    return two_pi / fast / points_per_period;
}

}  // namespace lamsim
