#pragma once

// Multi-mode channel algebra: the unitary transition matrix that maps
// (Alice, vacuum) modes to (Bob, Eve) modes, its reduction to parallel
// single-mode channels, and moment bookkeeping for the beam-splitter cascade
// that shows the single-mode channel is degraded when eta > 1/2.

#include <cstddef>
#include <optional>

#include "privcap/matrix.hpp"
#include "privcap/spectrum.hpp"

namespace privcap {

struct UnitarityCheck {
    double residual = 0.0;  ///< ||t^dagger t - I||_F
    bool passed = false;
};

/// Throws DomainError if t is not square.
[[nodiscard]] UnitarityCheck validate_unitary(const ComplexMatrix& t, double tol);

/// Block layout of the transition matrix: m inputs for Alice, k outputs for
/// Bob, l outputs for Eve, k + l - m vacuum inputs.
struct BlockPartition {
    std::size_t m = 0;
    std::size_t k = 0;
    std::size_t l = 0;
};

/// Unitary (k+l)x(k+l) matrix
///   ( t_ab  t_vb )
///   ( t_ae  t_ve )
/// with t_ab of size k x m.
class UnitaryTransition {
public:
    static constexpr double default_tol = 1e-10;

    /// Throws DomainError on inconsistent dimensions or when the unitarity
    /// residual exceeds tol.
    UnitaryTransition(ComplexMatrix t, BlockPartition partition, double tol = default_tol);

    [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return t_; }
    [[nodiscard]] const BlockPartition& partition() const noexcept { return part_; }
    [[nodiscard]] double unitarity_residual() const noexcept { return residual_; }

    [[nodiscard]] ComplexMatrix t_ab() const;
    [[nodiscard]] ComplexMatrix t_vb() const;
    [[nodiscard]] ComplexMatrix t_ae() const;
    [[nodiscard]] ComplexMatrix t_ve() const;

private:
    ComplexMatrix t_;
    BlockPartition part_;
    double residual_;
};

struct ModeDecomposition {
    ModeSpectrum spectrum;
    /// ||t_ab^dagger t_ab + t_ae^dagger t_ae - I||_F
    double completeness_residual;
    double unitarity_residual;
};

/// Eigenvalues of t_ab^dagger t_ab: the transmissivities of the equivalent
/// parallel single-mode channels. Throws NumericalError when the completeness
/// residual exceeds `tol` or an eigenvalue lies outside [-tol, 1 + tol].
[[nodiscard]] ModeDecomposition mode_decompose(const UnitaryTransition& u,
                                               double tol = UnitaryTransition::default_tol);

/// Spectrum of a contraction block directly (eigenvalues of t_ab^dagger t_ab).
[[nodiscard]] ModeSpectrum contraction_spectrum(const ComplexMatrix& t_ab,
                                                double tol = UnitaryTransition::default_tol);

/// Two-port beam splitter, rows (b, e), columns (a, v):
///   b =  sqrt(eta) a + sqrt(1-eta) v
///   e =  sqrt(1-eta) a - sqrt(eta) v
[[nodiscard]] ComplexMatrix beam_splitter(double eta);

/// Transmissivity (1 - eta)/eta of the splitter that regenerates Eve's
/// output from Bob's. Requires eta > 1/2.
[[nodiscard]] double degraded_splitter(double eta);

/// Input to the cascade: mean photon number, and optionally the coherent
/// amplitude alpha (then n_a must equal |alpha|^2).
struct CascadeInput {
    double n_a = 0.0;
    std::optional<Complex> alpha;

    static CascadeInput coherent(Complex alpha) { return {std::norm(alpha), alpha}; }
};

/// First and second moments at every port of the two-splitter cascade:
/// a -> (b, e) through eta, then b -> (e', c) through eta' = (1-eta)/eta,
/// with vacuum on both ancilla ports.
struct CascadeMoments {
    double n_a = 0.0;
    double n_b = 0.0;
    double n_e = 0.0;
    double n_c = 0.0;
    double n_e_prime = 0.0;
    std::optional<Complex> mean_b;
    std::optional<Complex> mean_e;
    std::optional<Complex> mean_c;
    std::optional<Complex> mean_e_prime;
};

[[nodiscard]] CascadeMoments cascade_moments(double eta, const CascadeInput& input);

/// Complex coefficients of each cascade output on the inputs (a, v, v').
/// Rows are (b, e, e', c). Exposed for tests; cascade_moments is built on it.
[[nodiscard]] ComplexMatrix cascade_transfer(double eta);

}  // namespace privcap
