#pragma once

// Reference computations used by the tests. Deliberately independent of the
// library's code paths: extended precision, closed forms, finite differences.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "privcap/matrix.hpp"

namespace oracle {

using privcap::Complex;
using privcap::ComplexMatrix;

/// Thermal entropy in long double. Direct formula below 1e4; above it the
/// two terms cancel past extended precision, so expand x ln(1 + 1/x).
inline long double g(long double x) {
    if (x == 0.0L) return 0.0L;
    if (x < 1e4L) return (1.0L + x) * std::log1p(x) - x * std::log(x);
    const long double y = 1.0L / x;
    long double series = 0.0L;
    long double term = 1.0L;
    for (int k = 1; k < 12; ++k, term *= -y) series += term / k;
    return std::log1p(x) + series;
}

inline long double lower(long double eta, long double n) {
    return eta > 0.5L ? g(eta * n) - g((1.0L - eta) * n) : 0.0L;
}

inline long double upper(long double eta, long double n) {
    return eta > 0.5L ? g((2.0L * eta - 1.0L) * n) : 0.0L;
}

/// Central difference f'(x) with step h.
inline double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Eigenvalues (descending) of a 2x2 Hermitian matrix via its characteristic polynomial.
inline std::array<double, 2> eig2(const ComplexMatrix& h) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double mid = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(h(0, 1)));
    return {mid + rad, mid - rad};
}

/// Eigenvalues (descending) of a 3x3 Hermitian matrix: trigonometric solution
/// of the characteristic cubic.
inline std::array<double, 3> eig3(const ComplexMatrix& a) {
    const double p1 = std::norm(a(0, 1)) + std::norm(a(0, 2)) + std::norm(a(1, 2));
    const double q = (a(0, 0).real() + a(1, 1).real() + a(2, 2).real()) / 3.0;
    const double d0 = a(0, 0).real() - q;
    const double d1 = a(1, 1).real() - q;
    const double d2 = a(2, 2).real() - q;
    const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;
    if (p2 == 0.0) return {q, q, q};
    const double p = std::sqrt(p2 / 6.0);
    // det(B), B = (A - qI)/p, Hermitian so the determinant is real.
    ComplexMatrix b = a;
    for (int i = 0; i < 3; ++i) b(i, i) -= q;
    b *= 1.0 / p;
    const Complex det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                        b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                        b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    const double r = std::clamp(det.real() / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    return {e1, 3.0 * q - e1 - e3, e3};
}

}  // namespace oracle
