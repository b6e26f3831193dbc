// linalg.hpp — Dense complex matrix algebra: eigendecomposition, solves, Kronecker products

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace lamsim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double two_pi = 6.283185307179586476925286766559;

struct EigenDecomposition {
    RealVector eigenvalues;      // ascending
    ComplexMatrix eigenvectors;  // column j pairs with eigenvalues[j]; orthonormal
};

// Largest entry magnitude; 0 for empty matrices.
double max_abs(const ComplexMatrix& m);

// Throws NonFinite if any entry is NaN or Inf.
void require_finite(const ComplexMatrix& m, const char* where);

// Hermitian eigendecomposition with ascending eigenvalues.
// Throws NonHermitian if ||h - h^dag||_max > 1e-9 * ||h||_max, NoConvergence
// if the iteration fails.
EigenDecomposition hermitian_eig(const ComplexMatrix& h);

// Solves m * x = rhs by LU with partial pivoting.
// Throws DimensionMismatch on shape errors, Singular when the pivot ratio
// indicates rank deficiency.
ComplexMatrix solve_linear(const ComplexMatrix& m, const ComplexMatrix& rhs);

// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

}  // namespace lamsim
