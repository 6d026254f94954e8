#pragma once

// Photon allocation across parallel single-mode wiretap channels.
//
// Coding independently per mode is optimal, so the multi-mode bound is
//   max { sum_i B(eta_i, n_i) : n_i >= 0, sum_i n_i = nbar }
// with B the single-mode lower or upper bound. Each B(eta, .) is strictly
// concave for eta > 1/2 and identically zero otherwise, so the optimum is the
// KKT point with one scalar multiplier: every usable mode gets the budget at
// which its marginal rate equals lambda.

#include <cstddef>
#include <string_view>
#include <vector>

#include "privcap/entropy.hpp"
#include "privcap/spectrum.hpp"

namespace privcap {

enum class BoundKind { Lower, Upper };

[[nodiscard]] BoundKind parse_bound_kind(std::string_view name);
[[nodiscard]] const char* bound_kind_name(BoundKind kind) noexcept;

/// Single-mode bound of the requested kind.
[[nodiscard]] BoundValue single_mode_bound(double eta, double nbar, BoundKind kind);

/// d/dnbar of the single-mode bound:
///   Lower: eta ln(1 + 1/(eta n)) - (1-eta) ln(1 + 1/((1-eta) n))
///   Upper: (2 eta - 1) ln(1 + 1/((2 eta - 1) n))
/// Requires eta > 1/2 and nbar > 0.
[[nodiscard]] double marginal_rate(double eta, double nbar, BoundKind kind);

struct Allocation {
    /// Indexed like ModeSpectrum::etas() (descending eta).
    std::vector<double> budgets;
    BoundValue value;
    /// KKT multiplier; 0 when no mode is usable or the budget is zero.
    double lagrange_multiplier = 0.0;
    int iterations = 0;
};

struct AllocateOptions {
    /// Stop when |sum n_i(lambda) - nbar| <= tol * nbar.
    double tol = 1e-10;
    int max_iterations = 400;
};

/// Optimal allocation by bisection on the multiplier. Throws NumericalError
/// with diagnostics if the bisection cap is hit before convergence.
[[nodiscard]] Allocation allocate(const ModeSpectrum& etas, double nbar, BoundKind kind,
                                  AllocateOptions options = {});

/// allocate(...).value
[[nodiscard]] BoundValue multi_mode_bound(const ModeSpectrum& etas, double nbar, BoundKind kind);

/// Sum of single-mode bounds at the given budgets.
[[nodiscard]] BoundValue allocation_objective(const ModeSpectrum& etas,
                                              const std::vector<double>& budgets, BoundKind kind);

/// Exhaustive search over budgets nbar * (j_1, ..., j_m) * grid_step on the
/// simplex. Reference implementation for testing allocate(); m <= 4.
/// Ties resolve to the lexicographically smallest budget vector.
[[nodiscard]] Allocation allocate_bruteforce(const ModeSpectrum& etas, double nbar, BoundKind kind,
                                             double grid_step);

/// Leading low-photon term (2 eta_max - 1) nbar ln(1/nbar).
/// Throws DomainError unless eta_max > 1/2 and nbar > 0.
[[nodiscard]] double asymptotic_multimode(const ModeSpectrum& etas, double nbar);

}  // namespace privcap
