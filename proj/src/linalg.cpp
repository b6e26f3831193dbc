#include "lamsim/linalg.hpp"

#include <Eigen/Eigenvalues>

#include "lamsim/errors.hpp"

namespace lamsim {

double max_abs(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

void require_finite(const ComplexMatrix& m, const char* where) {
    if (!m.allFinite()) fail("NonFinite", std::string("non-finite entry in ") + where);
}

EigenDecomposition hermitian_eig(const ComplexMatrix& h) {
    if (h.rows() != h.cols())
        fail("DimensionMismatch", "hermitian_eig needs a square matrix");
    require_finite(h, "hermitian_eig input");

    const double scale = max_abs(h);
    if (max_abs(h - h.adjoint()) > 1e-9 * std::max(scale, 1e-300))
        fail("NonHermitian", "input exceeds 1e-9 relative symmetry tolerance");

    // Symmetrize so roundoff in the caller cannot leak into the solver.
    const ComplexMatrix hs = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hs);
    if (solver.info() != Eigen::Success)
        fail("NoConvergence", "eigenvalue iteration did not converge");

    EigenDecomposition out;
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    return out;
}

ComplexMatrix solve_linear(const ComplexMatrix& m, const ComplexMatrix& rhs) {
    if (m.rows() != m.cols())
        fail("DimensionMismatch", "solve_linear needs a square matrix");
    if (m.rows() != rhs.rows())
        fail("DimensionMismatch", "rhs row count does not match matrix");
    require_finite(m, "solve_linear matrix");
    require_finite(rhs, "solve_linear rhs");

    Eigen::PartialPivLU<ComplexMatrix> lu(m);
    const RealVector pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double pmax = pivots.maxCoeff();
    if (pmax == 0.0 || pivots.minCoeff() < 1e-14 * pmax)
        fail("Singular", "pivot below threshold in solve_linear");

    ComplexMatrix x = lu.solve(rhs);
    require_finite(x, "solve_linear result");
    return x;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace lamsim
