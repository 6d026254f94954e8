#include "privcap/hermitian_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "privcap/error.hpp"

namespace privcap {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) sum += std::norm(a(i, j));
    return std::sqrt(sum);
}

// Annihilates a(p, q) with the unitary G = diag-phase * real rotation:
//   G_pp = c, G_pq = s, G_qp = -s conj(phase), G_qq = c conj(phase),
// phase = a_pq / |a_pq|. Applies a <- G^dagger a G and v <- v G.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const Complex phase = apq / mag;

    const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(1.0, theta));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const Complex g_pp = c;
    const Complex g_pq = s;
    const Complex g_qp = -s * std::conj(phase);
    const Complex g_qq = c * std::conj(phase);

    const std::size_t n = a.rows();
    for (std::size_t r = 0; r < n; ++r) {
        const Complex x = a(r, p);
        const Complex y = a(r, q);
        a(r, p) = x * g_pp + y * g_qp;
        a(r, q) = x * g_pq + y * g_qq;
    }
    for (std::size_t col = 0; col < n; ++col) {
        const Complex x = a(p, col);
        const Complex y = a(q, col);
        a(p, col) = std::conj(g_pp) * x + std::conj(g_qp) * y;
        a(q, col) = std::conj(g_pq) * x + std::conj(g_qq) * y;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t r = 0; r < n; ++r) {
        const Complex x = v(r, p);
        const Complex y = v(r, q);
        v(r, p) = x * g_pp + y * g_qp;
        v(r, q) = x * g_pq + y * g_qq;
    }
}

}  // namespace

HermitianEigen hermitian_eigen(const ComplexMatrix& h, JacobiOptions options) {
    if (h.empty() || !h.square()) throw DomainError("hermitian_eigen: matrix must be square");
    const double norm = h.frobenius_norm();
    const double asym = hermitian_residual(h);
    if (asym > options.hermitian_tol * std::max(1.0, norm)) {
        throw DomainError("hermitian_eigen: matrix is not Hermitian (||h - h^dagger||_F = " +
                          std::to_string(asym) + ")");
    }

    const std::size_t n = h.rows();
    ComplexMatrix a = h + h.adjoint();
    a *= 0.5;
    ComplexMatrix v = ComplexMatrix::identity(n);

    int sweep = 0;
    const double target = options.convergence_tol * norm;
    while (off_diagonal_norm(a) > target) {
        if (sweep == options.max_sweeps) {
            throw NumericalError("hermitian_eigen: no convergence after " +
                                 std::to_string(options.max_sweeps) + " sweeps (off-diagonal " +
                                 std::to_string(off_diagonal_norm(a)) + ")");
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
        ++sweep;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });

    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n), sweep};
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = a(order[j], order[j]).real();
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, j) = v(r, order[j]);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
    return hermitian_eigen(h).eigenvalues;
}

}  // namespace privcap
