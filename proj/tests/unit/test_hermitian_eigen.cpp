#include <doctest.h>

#include <random>

#include "privcap/error.hpp"
#include "privcap/hermitian_eigen.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace privcap;

namespace {

double reconstruction_residual(const ComplexMatrix& h, const HermitianEigen& e) {
    const ComplexMatrix& v = e.eigenvectors;
    return (v * ComplexMatrix::diagonal(e.eigenvalues) * v.adjoint() - h).frobenius_norm();
}

double orthonormality_residual(const ComplexMatrix& v) {
    return (v.adjoint() * v - ComplexMatrix::identity(v.cols())).frobenius_norm();
}

}  // namespace

TEST_SUITE("hermitian_eigen") {

TEST_CASE("small closed-form examples") {
    const auto real_sym = hermitian_eigen(ComplexMatrix(2, 2, {2.0, 1.0, 1.0, 2.0}));
    CHECK(real_sym.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(real_sym.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-15));

    const auto complex_h =
        hermitian_eigen(ComplexMatrix(2, 2, {1.0, Complex(0, 1), Complex(0, -1), 1.0}));
    CHECK(complex_h.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(std::abs(complex_h.eigenvalues[1]) < 1e-15);
}

TEST_CASE("diagonal input needs no rotations") {
    const std::vector<double> d{0.25, 0.9, 0.5};
    const auto e = hermitian_eigen(ComplexMatrix::diagonal(d));
    CHECK(e.sweeps == 0);
    CHECK(e.eigenvalues == std::vector<double>{0.9, 0.5, 0.25});
}

TEST_CASE("random Hermitian matrices reconstruct") {
    std::mt19937_64 rng(20240517);
    for (std::size_t n : {1U, 2U, 5U, 8U, 16U, 40U}) {
        for (int trial = 0; trial < 5; ++trial) {
            const ComplexMatrix h = gen::random_hermitian(n, rng);
            const auto e = hermitian_eigen(h);
            CHECK(reconstruction_residual(h, e) <= 1e-10 * h.frobenius_norm());
            CHECK(orthonormality_residual(e.eigenvectors) <= 1e-10);
            CHECK(std::is_sorted(e.eigenvalues.rbegin(), e.eigenvalues.rend()));
        }
    }
}

TEST_CASE("seeded 5x5 example") {
    std::mt19937_64 rng(5);
    const ComplexMatrix h = gen::random_hermitian(5, rng);
    const auto e = hermitian_eigen(h);
    CHECK(reconstruction_residual(h, e) <= 1e-10 * h.frobenius_norm());
}

TEST_CASE("agrees with closed-form 2x2 and 3x3 solvers") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const ComplexMatrix h2 = gen::random_hermitian(2, rng);
        const auto ref2 = oracle::eig2(h2);
        const auto got2 = hermitian_eigenvalues(h2);
        for (int i = 0; i < 2; ++i) CHECK(got2[i] == doctest::Approx(ref2[i]).epsilon(1e-9).scale(1.0));

        const ComplexMatrix h3 = gen::random_hermitian(3, rng);
        const auto ref3 = oracle::eig3(h3);
        const auto got3 = hermitian_eigenvalues(h3);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(got3[i] - ref3[i]) <= 1e-9);
    }
}

TEST_CASE("degenerate spectra") {
    std::mt19937_64 rng(3);
    const ComplexMatrix u = haar_unitary(6, rng);
    const std::vector<double> d{1.0, 1.0, 1.0, 0.2, 0.2, 0.0};
    const ComplexMatrix h = u * ComplexMatrix::diagonal(d) * u.adjoint();
    const auto e = hermitian_eigen(h);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(std::abs(e.eigenvalues[i] - d[i]) < 1e-12);
    CHECK(reconstruction_residual(h, e) <= 1e-10 * h.frobenius_norm());
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS((void)hermitian_eigen(ComplexMatrix(2, 3)), DomainError);
    CHECK_THROWS_AS((void)hermitian_eigen(ComplexMatrix(2, 2, {1.0, 1.0, 0.0, 1.0})), DomainError);
    // Tiny asymmetry is tolerated and symmetrised away.
    CHECK_NOTHROW((void)hermitian_eigen(ComplexMatrix(2, 2, {1.0, 0.5, 0.5 + 1e-13, 1.0})));
}

TEST_CASE("sweep limit is reported") {
    std::mt19937_64 rng(1);
    const ComplexMatrix h = gen::random_hermitian(6, rng);
    CHECK_THROWS_AS((void)hermitian_eigen(h, {.max_sweeps = 1}), NumericalError);
}

}  // TEST_SUITE
