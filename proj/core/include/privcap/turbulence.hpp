#pragma once

// Random transition matrices (turbulence) and the second-moment lower bound.
//
// With the realisation of T_ab known to Alice and Bob, the multi-mode private
// capacity is E[L^M(H, nbar)], H the eigenvalues of T_ab^dagger T_ab. Because
// L^M is convex and Schur-convex, it is bounded below by L^M(mu, nbar) where mu
// are the eigenvalues (or the diagonal) of E[T_ab^dagger T_ab].
//
// The ensembles shipped here are synthetic stand-ins; no physical turbulence
// model is included. Custom samplers can be plugged in via CustomEnsemble.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <string>
#include <variant>
#include <vector>

#include "privcap/allocation.hpp"
#include "privcap/matrix.hpp"

namespace privcap {

/// T_ab is the top-left k x m block of an N x N Haar unitary.
struct HaarSubblock {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t k = 0;
};

enum class Conjugation { None, Haar };

/// T_ab = diag(sqrt(eta)) V^dagger with eta_i = base_i * (1 - jitter * u_i),
/// u_i ~ U[0, 1), and V Haar (or the identity for Conjugation::None).
struct RandomizedSpectrum {
    std::vector<double> base_etas;
    double jitter = 0.0;
    Conjugation conjugation = Conjugation::Haar;
};

struct Deterministic {
    ComplexMatrix t_ab;
};

/// User-supplied sampler; must be a pure function of (seed, index) and return
/// a k x m contraction with the same shape on every call.
struct CustomEnsemble {
    std::function<ComplexMatrix(std::uint64_t seed, std::uint64_t index)> sample;
    std::size_t m = 0;
    std::string label = "custom";
};

using EnsembleKind = std::variant<HaarSubblock, RandomizedSpectrum, Deterministic, CustomEnsemble>;

struct EnsembleSpec {
    EnsembleKind kind;
    std::uint64_t seed = 0;
};

/// Throws DomainError on inconsistent dimensions or parameters.
void validate(const EnsembleSpec& spec);

/// Number of Alice modes (columns of T_ab).
[[nodiscard]] std::size_t input_modes(const EnsembleSpec& spec);

[[nodiscard]] std::string kind_name(const EnsembleSpec& spec);

/// Realisation `index` of T_ab; a pure function of (spec.seed, index).
/// Throws NumericalError if a custom sampler returns a non-contraction.
[[nodiscard]] ComplexMatrix sample_channel(const EnsembleSpec& spec, std::uint64_t index);

struct SecondMomentMatrix {
    ComplexMatrix matrix;  ///< estimate of E[T_ab^dagger T_ab]
    /// Per-entry standard error of the mean (modulus of the complex error).
    std::vector<double> entry_std_error;
    double standard_error = 0.0;  ///< max over entries
    std::size_t n_samples = 0;
};

struct ParallelOptions {
    /// 0 means std::thread::hardware_concurrency().
    unsigned workers = 0;
};

/// Requires n_samples >= 2.
[[nodiscard]] SecondMomentMatrix second_moment(const EnsembleSpec& spec, std::size_t n_samples,
                                               ParallelOptions parallel = {});

enum class MomentBasis { Diagonal, Eigen };

[[nodiscard]] MomentBasis parse_basis(std::string_view name);
[[nodiscard]] const char* basis_name(MomentBasis basis) noexcept;

/// L^M over the diagonal or the eigenvalues of the second-moment matrix.
[[nodiscard]] BoundValue turbulence_lower_bound(const ComplexMatrix& mu, double nbar,
                                                MomentBasis basis);
[[nodiscard]] BoundValue turbulence_lower_bound(const SecondMomentMatrix& mu, double nbar,
                                                MomentBasis basis);

struct MonteCarloEstimate {
    double mean = 0.0;       ///< nats
    double std_error = 0.0;  ///< nats
    std::size_t n_samples = 0;
    double ci_low = 0.0;   ///< mean - 1.96 std_error
    double ci_high = 0.0;  ///< mean + 1.96 std_error
};

/// Streaming mean / variance (Welford). Feed values in a fixed order for
/// reproducible results.
class RunningStats {
public:
    void push(double x) noexcept;
    [[nodiscard]] std::size_t count() const noexcept { return n_; }
    [[nodiscard]] double mean() const noexcept { return mean_; }
    /// Unbiased sample variance; 0 for fewer than two values.
    [[nodiscard]] double variance() const noexcept;
    [[nodiscard]] double std_error() const noexcept;
    [[nodiscard]] MonteCarloEstimate estimate() const noexcept;

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Monte Carlo estimate of E[L^M(H, nbar)], reallocating the budget for each
/// realisation. Requires n_samples >= 30. Allocation failures are rethrown as
/// NumericalError naming the sample index.
[[nodiscard]] MonteCarloEstimate monte_carlo_lower(const EnsembleSpec& spec, double nbar,
                                                   std::size_t n_samples,
                                                   ParallelOptions parallel = {});

/// Per-realisation quantities, for diagnostics and tests of the Schur step.
struct SampleBounds {
    double eigen;     ///< L^M(eigenvalues of T^dagger T)
    double diagonal;  ///< L^M(diagonal of T^dagger T)
};

[[nodiscard]] SampleBounds sample_bounds(const ComplexMatrix& t_ab, double nbar);

/// True iff sorted-descending prefix sums of a dominate those of b and the
/// totals agree within tol. Throws DomainError on length mismatch.
[[nodiscard]] bool majorizes(std::span<const double> a, std::span<const double> b,
                             double tol = 1e-10);

/// Parses {"kind": ..., "params": {...}, "seed": ...}. Kinds:
/// "haar_subblock" {N, m, k}; "randomized_spectrum" {base_etas, jitter,
/// conjugation: "haar"|"none"}; "deterministic" {t_ab: <matrix JSON>}.
/// Throws ParseError.
[[nodiscard]] EnsembleSpec parse_ensemble_spec(std::string_view json_text);

}  // namespace privcap
