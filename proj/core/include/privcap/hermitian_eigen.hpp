#pragma once

#include <vector>

#include "privcap/matrix.hpp"

namespace privcap {

struct HermitianEigen {
    /// Sorted descending.
    std::vector<double> eigenvalues;
    /// Column j is the unit eigenvector for eigenvalues[j].
    ComplexMatrix eigenvectors;
    int sweeps = 0;
};

struct JacobiOptions {
    /// Input is rejected when ||h - h^dagger||_F exceeds this times max(1, ||h||_F).
    double hermitian_tol = 1e-10;
    /// Stop once the off-diagonal Frobenius norm is at most this times ||h||_F.
    double convergence_tol = 1e-14;
    int max_sweeps = 100;
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
/// The input is symmetrised as (h + h^dagger)/2 first.
/// Throws DomainError for non-square or non-Hermitian input and
/// NumericalError if the sweep limit is reached.
[[nodiscard]] HermitianEigen hermitian_eigen(const ComplexMatrix& h, JacobiOptions options = {});

/// Eigenvalues only, sorted descending.
[[nodiscard]] std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

}  // namespace privcap
