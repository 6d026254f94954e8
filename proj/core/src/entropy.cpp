#include "privcap/entropy.hpp"

#include <limits>
#include <string>

#include "privcap/error.hpp"

namespace privcap {

namespace {

// x ln(1/x), continuously extended by 0 at x = 0.
double x_log_inv(double x) { return x == 0.0 ? 0.0 : -x * std::log(x); }

}  // namespace

Transmissivity::Transmissivity(double eta) : eta_(eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError("transmissivity must lie in [0, 1], got " + std::to_string(eta));
    }
}

PhotonBudget::PhotonBudget(double nbar) : nbar_(nbar) {
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
        throw DomainError("photon budget must be finite and >= 0, got " + std::to_string(nbar));
    }
}

double thermal_entropy(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw DomainError("thermal_entropy: argument must be finite and >= 0, got " +
                          std::to_string(x));
    }
    if (x == 0.0) return 0.0;
    // Both branches add two nonnegative terms. The second form avoids the
    // large cancellation between (1+x)ln(1+x) and x ln x at large x.
    if (x < 1.0) return (1.0 + x) * std::log1p(x) - x * std::log(x);
    return std::log1p(x) + x * std::log1p(1.0 / x);
}

BoundValue lower_bound(Transmissivity eta, PhotonBudget nbar) {
    const double e = eta.value();
    const double n = nbar.value();
    if (!(e > 0.5)) return {0.0};
    return {thermal_entropy(e * n) - thermal_entropy((1.0 - e) * n)};
}

BoundValue upper_bound(Transmissivity eta, PhotonBudget nbar) {
    const double e = eta.value();
    if (!(e > 0.5)) return {0.0};
    return {thermal_entropy((2.0 * e - 1.0) * nbar.value())};
}

double capacity_infinite(Transmissivity eta) {
    const double e = eta.value();
    if (e == 1.0) return std::numeric_limits<double>::infinity();
    if (!(e > 0.5)) return 0.0;
    return std::log(e) - std::log1p(-e);
}

AsymptoticCoefficients asymptotic_coefficients(Transmissivity eta) {
    const double e = eta.value();
    if (!(e > 0.5)) {
        throw DomainError("asymptotic_coefficients: requires eta > 1/2, got " + std::to_string(e));
    }
    const double a = 2.0 * e - 1.0;
    return {
        .lower = (e + x_log_inv(e)) - ((1.0 - e) + x_log_inv(1.0 - e)),
        .upper = a + x_log_inv(a),
    };
}

double photon_efficiency(BoundValue bound, PhotonBudget nbar, InfoUnit unit) {
    if (nbar.value() == 0.0) throw DomainError("photon_efficiency: nbar must be > 0");
    return bound.in(unit) / nbar.value();
}

InfoUnit parse_unit(std::string_view name) {
    if (name == "nats") return InfoUnit::Nats;
    if (name == "bits") return InfoUnit::Bits;
    throw DomainError("unknown unit '" + std::string(name) + "' (expected bits or nats)");
}

const char* unit_name(InfoUnit unit) noexcept { return unit == InfoUnit::Nats ? "nats" : "bits"; }

}  // namespace privcap
