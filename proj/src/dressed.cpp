#include "lamsim/dressed.hpp"

#include <cmath>

#include "lamsim/errors.hpp"

namespace lamsim {

DressedBasis diagonalize_system(const SystemParams& p) {
    const ComplexMatrix h = build_rotating_hamiltonian(p);
    EigenDecomposition eig = hermitian_eig(h);

    DressedBasis basis;
    basis.energies = std::move(eig.eigenvalues);
    basis.vectors = std::move(eig.eigenvectors);

    const int d = p.dim();
    basis.labels.resize(d);
    for (int j = 0; j < d; ++j) {
        int best = 0;
        double w = 0.0;
        for (int b = 0; b < d; ++b) {
            const double overlap = std::norm(basis.vectors(b, j));
            if (overlap > w) {
                w = overlap;
                best = b;
            }
        }
        StateLabel& label = basis.labels[j];
        label.qubit = best / (p.n_max + 1);
        label.photon = best % (p.n_max + 1);
        label.weight = w;
        label.mixed = w < 0.5;
    }
    return basis;
}

DecayTable decay_rates(const DressedBasis& basis, const SystemParams& p,
                       const BareOperators& ops) {
    const int d = ops.dim;
    if (basis.vectors.rows() != d)
        fail("DimensionMismatch", "basis and operators disagree on dimension");

    // <i~|a^dag|j~> and <i~|s^dag|j~> for all dressed pairs
    const ComplexMatrix ad = basis.vectors.adjoint() * ops.a.adjoint() * basis.vectors;
    const ComplexMatrix sd = basis.vectors.adjoint() * ops.sigma.adjoint() * basis.vectors;

    DecayTable table;
    table.kappa_t = p.kappa * ad.cwiseAbs2();
    table.gamma_t = p.gamma * sd.cwiseAbs2();
    table.frequencies.resize(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            table.frequencies(i, j) = basis.energies[i] - basis.energies[j];
    return table;
}

RegimeClass classify_regime(const SystemParams& p) {
    p.validate();
    if (p.omega_r == p.omega_q)
        fail("DegenerateDetuning", "dispersive shift undefined at omega_r == omega_q");

    RegimeClass out;
    out.chi = p.g * p.g / (p.omega_r - p.omega_q);
    out.window_lo = p.omega_q - 3.0 * out.chi;
    out.window_hi = p.omega_q - out.chi;
    out.kind = (p.omega_d > out.window_lo && p.omega_d < out.window_hi)
                   ? Regime::Nesting
                   : Regime::Unnesting;
    const double edge = std::min(std::abs(p.omega_d - out.window_lo),
                                 std::abs(p.omega_d - out.window_hi));
    out.boundary = edge < mhz(1.0);
    return out;
}

std::vector<PerturbativeLevel> perturbative_energies(const SystemParams& p) {
    if (p.omega_r == p.omega_q)
        fail("DegenerateDetuning", "perturbative energies undefined at omega_r == omega_q");
    const double chi = p.g * p.g / (p.omega_r - p.omega_q);

    std::vector<PerturbativeLevel> out;
    out.reserve(2 * (p.n_max + 1));
    for (int n = 0; n <= p.n_max; ++n)
        out.push_back({0, n, n * (p.omega_r - p.omega_d + chi)});
    for (int n = 0; n <= p.n_max; ++n)
        out.push_back({1, n, p.omega_q - p.omega_d - chi + n * (p.omega_r - p.omega_d - chi)});
    return out;
}

std::vector<DressedBasis> track_branches(const std::vector<DressedBasis>& sweep) {
    std::vector<DressedBasis> out = sweep;
    for (size_t t = 1; t < out.size(); ++t) {
        const ComplexMatrix& prev = out[t - 1].vectors;
        const ComplexMatrix& cur = out[t].vectors;
        if (prev.rows() != cur.rows())
            fail("DimensionMismatch", "sweep points have different dimensions");
        const int d = int(cur.cols());

        // Greedy assignment on the overlap matrix; near-identity steps make
        // the greedy choice equal to the optimal one.
        const RealMatrix overlap = (prev.adjoint() * cur).cwiseAbs();
        std::vector<int> match(d, -1);
        std::vector<bool> used_prev(d, false), used_cur(d, false);
        for (int pass = 0; pass < d; ++pass) {
            int bi = -1, bj = -1;
            double best = -1.0;
            for (int i = 0; i < d; ++i) {
                if (used_prev[i]) continue;
                for (int j = 0; j < d; ++j) {
                    if (used_cur[j]) continue;
                    if (overlap(i, j) > best) {
                        best = overlap(i, j);
                        bi = i;
                        bj = j;
                    }
                }
            }
            if (best < 0.6)
                fail("AmbiguousTracking",
                     "best eigenvector overlap " + std::to_string(best) +
                         " below 0.6; refine the sweep step");
            used_prev[bi] = used_cur[bj] = true;
            match[bj] = bi;
        }
        for (int j = 0; j < d; ++j) out[t].labels[j] = out[t - 1].labels[match[j]];
    }
    return out;
}

}  // namespace lamsim
