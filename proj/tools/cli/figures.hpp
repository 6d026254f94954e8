#pragma once

// Data series for the photon-efficiency figures. Rendering is left to
// external tools; see gnuplot_script().

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace privcap::cli {

enum class FigureKind {
    PhotonEffVsNbar,        ///< single mode, fixed eta, sweep nbar
    PhotonEffVsEta,         ///< single mode, fixed nbar, sweep eta
    PhotonEffVsSpectralEff  ///< m identical modes, sweep total nbar
};

[[nodiscard]] FigureKind parse_figure_kind(std::string_view name);
[[nodiscard]] const char* figure_kind_name(FigureKind kind) noexcept;

struct Grid {
    double from = 0.0;
    double to = 0.0;
    std::size_t points = 0;
    bool log_spaced = false;

    /// Throws DomainError unless the grid is strictly increasing with >= 2 points
    /// (and positive endpoints when log-spaced).
    [[nodiscard]] std::vector<double> values() const;
};

struct FigureRequest {
    FigureKind kind = FigureKind::PhotonEffVsNbar;
    double eta = 0.7;
    double nbar = 1e-3;
    std::size_t modes = 1000;
    Grid grid;
};

/// The settings of the reference plots: eta = 0.7 over nbar in [1e-6, 1e-1];
/// nbar = 1e-3 over eta in [0.5, 1]; m = 1000 modes at eta = 0.9.
[[nodiscard]] FigureRequest default_request(FigureKind kind);

struct FigureTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    [[nodiscard]] std::size_t column(std::string_view name) const;
};

/// All efficiencies in bits. For PhotonEffVsSpectralEff, spectral efficiency
/// is total bits per channel use divided by the mode count and photon
/// efficiency is total bits per photon.
[[nodiscard]] FigureTable make_figure(const FigureRequest& request);

/// Header line plus one line per row, 17 significant digits, '\n' endings.
[[nodiscard]] std::string to_csv(const FigureTable& table);

[[nodiscard]] std::string gnuplot_script(const FigureRequest& request, const std::string& csv_path);

}  // namespace privcap::cli
