#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace privcap {

/// Transmissivities of a bank of parallel single-mode channels, sorted
/// descending. Values within `clamp_tol` outside [0, 1] are clamped onto the
/// boundary; anything further out is rejected with DomainError.
class ModeSpectrum {
public:
    static constexpr double default_clamp_tol = 1e-10;

    explicit ModeSpectrum(std::vector<double> etas, double clamp_tol = default_clamp_tol);

    [[nodiscard]] std::span<const double> etas() const noexcept { return etas_; }
    [[nodiscard]] std::size_t size() const noexcept { return etas_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return etas_[i]; }
    [[nodiscard]] double max() const noexcept { return etas_.front(); }

    /// Number of modes with eta > 1/2, the only ones that carry private information.
    [[nodiscard]] std::size_t usable_modes() const noexcept;

private:
    std::vector<double> etas_;
};

}  // namespace privcap
