#include "privcap/mode_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "privcap/error.hpp"
#include "privcap/hermitian_eigen.hpp"

namespace privcap {

ModeSpectrum::ModeSpectrum(std::vector<double> etas, double clamp_tol) : etas_(std::move(etas)) {
    if (etas_.empty()) throw DomainError("spectrum must contain at least one mode");
    for (double& eta : etas_) {
        if (!std::isfinite(eta) || eta < -clamp_tol || eta > 1.0 + clamp_tol) {
            throw DomainError("transmissivity " + std::to_string(eta) + " outside [0, 1]");
        }
        eta = std::clamp(eta, 0.0, 1.0);
    }
    std::sort(etas_.begin(), etas_.end(), std::greater<>());
}

std::size_t ModeSpectrum::usable_modes() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(etas_.begin(), etas_.end(), [](double e) { return e > 0.5; }));
}

UnitarityCheck validate_unitary(const ComplexMatrix& t, double tol) {
    if (t.empty() || !t.square()) throw DomainError("validate_unitary: matrix must be square");
    const double residual = (gram(t) - ComplexMatrix::identity(t.rows())).frobenius_norm();
    return {residual, residual <= tol};
}

UnitaryTransition::UnitaryTransition(ComplexMatrix t, BlockPartition partition, double tol)
    : t_(std::move(t)), part_(partition), residual_(0.0) {
    const auto [m, k, l] = part_;
    if (m == 0 || k == 0 || l == 0) throw DomainError("block partition: m, k, l must be positive");
    if (m > k + l) throw DomainError("block partition: m must not exceed k + l");
    if (!t_.square() || t_.rows() != k + l) {
        throw DomainError("transition matrix must be (k+l)x(k+l) = " + std::to_string(k + l) + "x" +
                          std::to_string(k + l) + ", got " + std::to_string(t_.rows()) + "x" +
                          std::to_string(t_.cols()));
    }
    const auto check = validate_unitary(t_, tol);
    residual_ = check.residual;
    if (!check.passed) {
        throw DomainError("transition matrix is not unitary: ||t^dagger t - I||_F = " +
                          std::to_string(check.residual));
    }
}

ComplexMatrix UnitaryTransition::t_ab() const { return t_.block(0, 0, part_.k, part_.m); }
ComplexMatrix UnitaryTransition::t_ae() const { return t_.block(part_.k, 0, part_.l, part_.m); }

// Empty when there are no vacuum inputs (m == k + l).
ComplexMatrix UnitaryTransition::t_vb() const {
    const std::size_t vac = part_.k + part_.l - part_.m;
    return vac == 0 ? ComplexMatrix{} : t_.block(0, part_.m, part_.k, vac);
}

ComplexMatrix UnitaryTransition::t_ve() const {
    const std::size_t vac = part_.k + part_.l - part_.m;
    return vac == 0 ? ComplexMatrix{} : t_.block(part_.k, part_.m, part_.l, vac);
}

ModeSpectrum contraction_spectrum(const ComplexMatrix& t_ab, double tol) {
    auto eigenvalues = hermitian_eigenvalues(gram(t_ab));
    for (double lambda : eigenvalues) {
        if (lambda < -tol || lambda > 1.0 + tol) {
            throw NumericalError("eigenvalue " + std::to_string(lambda) +
                                 " of t_ab^dagger t_ab outside [0, 1]; t_ab is not a contraction");
        }
    }
    return ModeSpectrum(std::move(eigenvalues), tol);
}

ModeDecomposition mode_decompose(const UnitaryTransition& u, double tol) {
    const ComplexMatrix ab = u.t_ab();
    const ComplexMatrix ae = u.t_ae();
    const double completeness =
        (gram(ab) + gram(ae) - ComplexMatrix::identity(u.partition().m)).frobenius_norm();
    if (completeness > tol) {
        throw NumericalError("t_ab^dagger t_ab + t_ae^dagger t_ae deviates from identity by " +
                             std::to_string(completeness) + "; inconsistent block partition");
    }
    return {contraction_spectrum(ab, tol), completeness, u.unitarity_residual()};
}

ComplexMatrix beam_splitter(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError("beam_splitter: eta must lie in [0, 1], got " + std::to_string(eta));
    }
    const double t = std::sqrt(eta);
    const double r = std::sqrt(1.0 - eta);
    return ComplexMatrix(2, 2, {t, r, r, -t});
}

double degraded_splitter(double eta) {
    if (!(eta > 0.5 && eta <= 1.0)) {
        throw DomainError("degraded_splitter: requires 1/2 < eta <= 1, got " + std::to_string(eta));
    }
    return (1.0 - eta) / eta;
}

ComplexMatrix cascade_transfer(double eta) {
    const double eta_prime = degraded_splitter(eta);
    const ComplexMatrix first = beam_splitter(eta);         // (a, v) -> (b, e)
    const ComplexMatrix second = beam_splitter(eta_prime);  // (b, v') -> (e', c)

    // Stage one on inputs (a, v, v'), outputs (b, e, v').
    ComplexMatrix s1(3, 3);
    s1(0, 0) = first(0, 0);
    s1(0, 1) = first(0, 1);
    s1(1, 0) = first(1, 0);
    s1(1, 1) = first(1, 1);
    s1(2, 2) = 1.0;
    // Stage two on (b, e, v'), outputs (e', c).
    ComplexMatrix s2(2, 3);
    s2(0, 0) = second(0, 0);
    s2(0, 2) = second(0, 1);
    s2(1, 0) = second(1, 0);
    s2(1, 2) = second(1, 1);
    const ComplexMatrix tail = s2 * s1;

    ComplexMatrix out(4, 3);
    for (std::size_t c = 0; c < 3; ++c) {
        out(0, c) = s1(0, c);
        out(1, c) = s1(1, c);
        out(2, c) = tail(0, c);
        out(3, c) = tail(1, c);
    }
    return out;
}

CascadeMoments cascade_moments(double eta, const CascadeInput& input) {
    if (!(input.n_a >= 0.0) || !std::isfinite(input.n_a)) {
        throw DomainError("cascade_moments: n_a must be finite and >= 0");
    }
    if (input.alpha) {
        const double expected = std::norm(*input.alpha);
        if (std::abs(expected - input.n_a) > 1e-12 * std::max(1.0, input.n_a)) {
            throw DomainError("cascade_moments: coherent input requires n_a = |alpha|^2");
        }
    }
    const ComplexMatrix t = cascade_transfer(eta);

    // Ancillas are vacuum: zero mean, zero photons, uncorrelated with a. Each
    // output photon number is therefore |coefficient on a|^2 n_a.
    auto photons = [&](std::size_t row) { return std::norm(t(row, 0)) * input.n_a; };
    CascadeMoments out;
    out.n_a = input.n_a;
    out.n_b = photons(0);
    out.n_e = photons(1);
    out.n_e_prime = photons(2);
    out.n_c = photons(3);
    if (input.alpha) {
        const Complex alpha = *input.alpha;
        out.mean_b = t(0, 0) * alpha;
        out.mean_e = t(1, 0) * alpha;
        out.mean_e_prime = t(2, 0) * alpha;
        out.mean_c = t(3, 0) * alpha;
    }
    return out;
}

}  // namespace privcap
