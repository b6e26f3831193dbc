// rng.hpp — Deterministic splitmix64 stream for reproducible random matrices

#pragma once

#include <cstdint>

#include "lamsim/linalg.hpp"

namespace lamsim {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return double(next() >> 11) * 0x1.0p-53; }  // [0,1)
    double symmetric() { return 2.0 * uniform() - 1.0; }           // (-1,1)

    ComplexMatrix complex_matrix(int rows, int cols) {
        ComplexMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = Complex(symmetric(), symmetric());
        return m;
    }

    ComplexMatrix hermitian(int n) {
        const ComplexMatrix a = complex_matrix(n, n);
        return 0.5 * (a + a.adjoint());
    }

    ComplexMatrix density(int n) {
        const ComplexMatrix g = complex_matrix(n, n);
        ComplexMatrix rho = g * g.adjoint();
        rho /= rho.trace().real();
        return rho;
    }
};

}  // namespace lamsim
