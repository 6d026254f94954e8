#include "cli/figures.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "privcap/allocation.hpp"
#include "privcap/entropy.hpp"
#include "privcap/error.hpp"

namespace privcap::cli {

namespace {

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

FigureKind parse_figure_kind(std::string_view name) {
    if (name == "nbar" || name == "photon-eff-vs-nbar") return FigureKind::PhotonEffVsNbar;
    if (name == "eta" || name == "photon-eff-vs-eta") return FigureKind::PhotonEffVsEta;
    if (name == "spectral" || name == "photon-eff-vs-spectral-eff") {
        return FigureKind::PhotonEffVsSpectralEff;
    }
    throw DomainError("unknown figure '" + std::string(name) + "' (expected nbar, eta or spectral)");
}

const char* figure_kind_name(FigureKind kind) noexcept {
    switch (kind) {
        case FigureKind::PhotonEffVsNbar: return "photon-eff-vs-nbar";
        case FigureKind::PhotonEffVsEta: return "photon-eff-vs-eta";
        case FigureKind::PhotonEffVsSpectralEff: return "photon-eff-vs-spectral-eff";
    }
    return "?";
}

std::vector<double> Grid::values() const {
    if (points < 2) throw DomainError("grid needs at least 2 points");
    if (!std::isfinite(from) || !std::isfinite(to) || !(to > from)) {
        throw DomainError("grid must be strictly increasing (from < to)");
    }
    if (log_spaced && !(from > 0.0)) throw DomainError("log-spaced grid needs positive endpoints");

    std::vector<double> v(points);
    const double last = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / last;
        v[i] = log_spaced ? from * std::pow(to / from, f) : from + (to - from) * f;
    }
    v.front() = from;
    v.back() = to;
    for (std::size_t i = 1; i < points; ++i) {
        if (!(v[i] > v[i - 1])) throw DomainError("grid is not strictly increasing at double precision");
    }
    return v;
}

FigureRequest default_request(FigureKind kind) {
    FigureRequest r;
    r.kind = kind;
    switch (kind) {
        case FigureKind::PhotonEffVsNbar:
            r.eta = 0.7;
            r.grid = {1e-6, 1e-1, 61, true};
            break;
        case FigureKind::PhotonEffVsEta:
            r.nbar = 1e-3;
            r.grid = {0.5, 1.0, 51, false};
            break;
        case FigureKind::PhotonEffVsSpectralEff:
            r.eta = 0.9;
            r.modes = 1000;
            r.grid = {1e-1, 1e5, 61, true};
            break;
    }
    return r;
}

std::size_t FigureTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw DomainError("no column '" + std::string(name) + "'");
}

FigureTable make_figure(const FigureRequest& request) {
    const auto axis = request.grid.values();
    FigureTable table;
    switch (request.kind) {
        case FigureKind::PhotonEffVsNbar: {
            const Transmissivity eta{request.eta};
            if (!(axis.front() > 0.0)) throw DomainError("nbar grid must be positive");
            table.header = {"nbar", "lower_bits_per_photon", "upper_bits_per_photon"};
            for (double n : axis) {
                const PhotonBudget nbar{n};
                table.rows.push_back(
                    {n, photon_efficiency(lower_bound(eta, nbar), nbar, InfoUnit::Bits),
                     photon_efficiency(upper_bound(eta, nbar), nbar, InfoUnit::Bits)});
            }
            break;
        }
        case FigureKind::PhotonEffVsEta: {
            const PhotonBudget nbar{request.nbar};
            if (!(nbar.value() > 0.0)) throw DomainError("nbar must be positive");
            table.header = {"eta", "lower_bits_per_photon", "upper_bits_per_photon"};
            for (double e : axis) {
                const Transmissivity eta{e};
                table.rows.push_back(
                    {e, photon_efficiency(lower_bound(eta, nbar), nbar, InfoUnit::Bits),
                     photon_efficiency(upper_bound(eta, nbar), nbar, InfoUnit::Bits)});
            }
            break;
        }
        case FigureKind::PhotonEffVsSpectralEff: {
            if (request.modes == 0) throw DomainError("mode count must be positive");
            if (!(axis.front() > 0.0)) throw DomainError("nbar grid must be positive");
            const ModeSpectrum spectrum(std::vector<double>(request.modes, Transmissivity{request.eta}.value()));
            const double m = static_cast<double>(request.modes);
            table.header = {"nbar", "spectral_eff_lower", "photon_eff_lower", "spectral_eff_upper",
                            "photon_eff_upper"};
            for (double n : axis) {
                const double lower = multi_mode_bound(spectrum, n, BoundKind::Lower).bits();
                const double upper = multi_mode_bound(spectrum, n, BoundKind::Upper).bits();
                table.rows.push_back({n, lower / m, lower / n, upper / m, upper / n});
            }
            break;
        }
    }
    return table;
}

std::string to_csv(const FigureTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string gnuplot_script(const FigureRequest& request, const std::string& csv_path) {
    std::ostringstream s;
    s << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set grid\n";
    switch (request.kind) {
        case FigureKind::PhotonEffVsNbar:
            s << "set logscale x\n"
              << "set xlabel 'mean photon number'\n"
              << "set ylabel 'photon efficiency (bits/photon)'\n"
              << "set title 'eta = " << request.eta << "'\n"
              << "plot '" << csv_path << "' using 1:2 with lines, '' using 1:3 with lines\n";
            break;
        case FigureKind::PhotonEffVsEta:
            s << "set xlabel 'transmissivity'\n"
              << "set ylabel 'photon efficiency (bits/photon)'\n"
              << "set title 'nbar = " << request.nbar << "'\n"
              << "plot '" << csv_path << "' using 1:2 with lines, '' using 1:3 with lines\n";
            break;
        case FigureKind::PhotonEffVsSpectralEff:
            s << "set logscale x\n"
              << "set xlabel 'spectral efficiency (bits per use per mode)'\n"
              << "set ylabel 'photon efficiency (bits/photon)'\n"
              << "set title 'm = " << request.modes << ", eta = " << request.eta << "'\n"
              << "plot '" << csv_path << "' using 2:3 with lines title 'lower', '' using 4:5 with lines title 'upper'\n";
            break;
    }
    return s.str();
}

}  // namespace privcap::cli
