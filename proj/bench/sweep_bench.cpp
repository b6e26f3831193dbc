// sweep_bench.cpp — Serial vs OpenMP timings for the sweep kernels

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "lamsim/response.hpp"
#include "lamsim/spectrum.hpp"

using namespace lamsim;

namespace {

SystemParams reference() {
    SystemParams p;
    p.omega_q = ghz(5.0);
    p.omega_r = ghz(10.0);
    p.g = mhz(500.0);
    p.kappa = mhz(20.0);
    p.gamma = mhz(1.0);
    p.omega_d = ghz(4.87);
    return p;
}

template <typename F>
double seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
    const SystemParams base = reference();
    const RealVector rabi = RealVector::LinSpaced(24, 0.0, mhz(50.0));
    const RealVector probe = RealVector::LinSpaced(64, ghz(9.95), ghz(10.15));

    std::printf("reflection map %ldx%ld, hardware threads %d\n",
                long(rabi.size()), long(probe.size()), omp_get_max_threads());

    RealMatrix serial, parallel;
    const double t_serial =
        seconds([&] { serial = reflection_map_serial(base, rabi, probe); });
    std::printf("  serial reference   %8.3f s\n", t_serial);

    for (int workers : {1, 2, omp_get_max_threads()}) {
        const double t =
            seconds([&] { parallel = reflection_map(base, rabi, probe, workers); });
        const double diff = (parallel - serial).cwiseAbs().maxCoeff();
        std::printf("  openmp x%-2d         %8.3f s  speedup %5.2f  max|diff| %.3g\n",
                    workers, t, t_serial / t, diff);
    }

    const SystemParams matched = with_rabi(base, mhz(19.0));
    const DressedBasis basis = diagonalize_system(matched);
    const double probe_at = matched.omega_d + basis.energies[3] - basis.energies[0];
    std::printf("output spectrum (auto grid)\n");
    for (int workers : {1, omp_get_max_threads()}) {
        const double t = seconds([&] {
            output_spectrum(matched, probe_at, std::sqrt(1e5), {}, 4, workers);
        });
        std::printf("  openmp x%-2d         %8.3f s\n", workers, t);
    }
    return 0;
}
