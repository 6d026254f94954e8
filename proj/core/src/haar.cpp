#include "privcap/haar.hpp"

#include <cmath>
#include <numbers>

#include "privcap/error.hpp"

namespace privcap {

ComplexMatrix ginibre(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix z(n, n);
    const double scale = 1.0 / std::numbers::sqrt2;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(r, c) = Complex(re * scale, im * scale);
        }
    return z;
}

// Gram-Schmidt QR of a Ginibre matrix. Each R_jj is the (positive, real) norm
// of the projected column, which is the phase convention that makes Q exactly
// Haar. Projection is done twice per column to keep Q unitary to rounding.
ComplexMatrix haar_unitary(std::size_t n, std::mt19937_64& rng) {
    if (n == 0) throw DomainError("haar_unitary: n must be >= 1");
    ComplexMatrix q = ginibre(n, rng);
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                Complex dot = 0.0;
                for (std::size_t r = 0; r < n; ++r) dot += std::conj(q(r, i)) * q(r, j);
                for (std::size_t r = 0; r < n; ++r) q(r, j) -= dot * q(r, i);
            }
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < n; ++r) norm += std::norm(q(r, j));
        norm = std::sqrt(norm);
        if (norm == 0.0) throw NumericalError("haar_unitary: rank-deficient Gaussian sample");
        for (std::size_t r = 0; r < n; ++r) q(r, j) /= norm;
    }
    return q;
}

ComplexMatrix haar_unitary(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return haar_unitary(n, rng);
}

}  // namespace privcap
