#pragma once

// Single-mode bounds on the private capacity of the noiseless bosonic
// wiretap channel. All values are in nats unless a function says otherwise.

#include <cmath>
#include <numbers>
#include <string_view>

namespace privcap {

/// Fraction of input power reaching the legitimate receiver, in [0, 1].
class Transmissivity {
public:
    /// Throws DomainError unless 0 <= eta <= 1.
    explicit Transmissivity(double eta);

    [[nodiscard]] double value() const noexcept { return eta_; }

private:
    double eta_;
};

/// Mean photon number per channel use, finite and >= 0.
class PhotonBudget {
public:
    explicit PhotonBudget(double nbar);

    [[nodiscard]] double value() const noexcept { return nbar_; }

private:
    double nbar_;
};

enum class InfoUnit { Nats, Bits };

/// A capacity bound. Stored in nats; bits only for presentation.
struct BoundValue {
    double nats = 0.0;

    [[nodiscard]] double bits() const noexcept { return nats / std::numbers::ln2; }
    [[nodiscard]] double in(InfoUnit unit) const noexcept {
        return unit == InfoUnit::Nats ? nats : bits();
    }
};

/// Entropy of a thermal state with mean photon number x:
/// g(x) = (1+x) ln(1+x) - x ln x, with g(0) = 0.
/// Throws DomainError for negative or non-finite x.
[[nodiscard]] double thermal_entropy(double x);

/// Achievable rate g(eta n) - g((1-eta) n) for eta > 1/2, zero otherwise.
[[nodiscard]] BoundValue lower_bound(Transmissivity eta, PhotonBudget nbar);

/// Converse g((2 eta - 1) n) for eta > 1/2, zero otherwise.
[[nodiscard]] BoundValue upper_bound(Transmissivity eta, PhotonBudget nbar);

/// Private capacity as nbar -> infinity: max{0, ln eta - ln(1 - eta)}.
/// Returns +infinity at eta = 1.
[[nodiscard]] double capacity_infinite(Transmissivity eta);

/// Bracket on the O(nbar)/nbar term of the low-photon expansion
/// C = (2 eta - 1) nbar ln(1/nbar) + O(nbar).
struct AsymptoticCoefficients {
    double lower;
    double upper;
};

/// Defined for 1/2 < eta <= 1; throws DomainError otherwise.
[[nodiscard]] AsymptoticCoefficients asymptotic_coefficients(Transmissivity eta);

/// bound / nbar in the requested unit. Throws DomainError when nbar == 0.
[[nodiscard]] double photon_efficiency(BoundValue bound, PhotonBudget nbar, InfoUnit unit);

/// Parses "nats" or "bits"; throws DomainError otherwise.
[[nodiscard]] InfoUnit parse_unit(std::string_view name);
[[nodiscard]] const char* unit_name(InfoUnit unit) noexcept;

}  // namespace privcap
