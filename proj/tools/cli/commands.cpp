#include "cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/figures.hpp"
#include "privcap/allocation.hpp"
#include "privcap/entropy.hpp"
#include "privcap/error.hpp"
#include "privcap/haar.hpp"
#include "privcap/matrix_io.hpp"
#include "privcap/mode_algebra.hpp"
#include "privcap/turbulence.hpp"

namespace privcap::cli {

namespace {

using nlohmann::json;

struct GlobalOptions {
    bool json = false;
    std::optional<std::uint64_t> seed;
    std::string unit = "bits";
};

struct BoundsArgs {
    double eta = 0.0;
    double nbar = 0.0;
};

struct FigureArgs {
    std::string figure = "nbar";
    std::optional<double> eta;
    std::optional<double> nbar;
    std::optional<std::size_t> modes;
    std::optional<double> from;
    std::optional<double> to;
    std::optional<std::size_t> points;
    std::optional<std::string> scale;
    std::string out_path;
    std::string gnuplot_path;
};

struct DecomposeArgs {
    std::string matrix_path;
    std::optional<std::size_t> haar;
    std::optional<std::size_t> m, k, l;
    double tol = UnitaryTransition::default_tol;
};

struct AllocateArgs {
    std::string etas;
    std::string etas_file;
    double nbar = 0.0;
    std::string kind = "lower";
    double tol = 1e-10;
};

struct TurbulenceArgs {
    std::string spec_path;
    double nbar = 0.0;
    std::size_t samples = 10000;
    std::size_t moment_samples = 0;
    std::string basis = "eigen";
    unsigned threads = 0;
};

// JSON has no infinity; report it as the string "inf".
json number_or_inf(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

void print_rows(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << '\n';
}

std::string fmt(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::ostringstream s;
    s << std::setprecision(12) << x;
    return s.str();
}

int cmd_bounds(const GlobalOptions& g, const BoundsArgs& a, std::ostream& out) {
    const InfoUnit unit = parse_unit(g.unit);
    const Transmissivity eta{a.eta};
    const PhotonBudget nbar{a.nbar};
    const BoundValue lower = lower_bound(eta, nbar);
    const BoundValue upper = upper_bound(eta, nbar);
    const double scale = unit == InfoUnit::Bits ? 1.0 / std::numbers::ln2 : 1.0;
    const double cinf = capacity_infinite(eta) * scale;

    std::optional<double> eff_lower, eff_upper;
    if (nbar.value() > 0.0) {
        eff_lower = photon_efficiency(lower, nbar, unit);
        eff_upper = photon_efficiency(upper, nbar, unit);
    }
    std::optional<AsymptoticCoefficients> coeff;
    if (eta.value() > 0.5) {
        coeff = asymptotic_coefficients(eta);
        coeff->lower *= scale;
        coeff->upper *= scale;
    }

    if (g.json) {
        json j;
        j["eta"] = eta.value();
        j["nbar"] = nbar.value();
        j["unit"] = unit_name(unit);
        j["lower_bound"] = lower.in(unit);
        j["upper_bound"] = upper.in(unit);
        j["photon_efficiency"] = {{"lower", eff_lower ? json(*eff_lower) : json(nullptr)},
                                  {"upper", eff_upper ? json(*eff_upper) : json(nullptr)},
                                  {"unit", std::string(unit_name(unit)) + "/photon"}};
        j["capacity_infinite"] = number_or_inf(cinf);
        j["asymptotic_coefficients"] =
            coeff ? json{{"lower", coeff->lower}, {"upper", coeff->upper}} : json(nullptr);
        out << j.dump(2) << '\n';
        return kOk;
    }
    const std::string u = unit_name(unit);
    const auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string("n/a"); };
    print_rows(out, {
                        {"eta", fmt(eta.value())},
                        {"nbar", fmt(nbar.value())},
                        {"lower_bound [" + u + "]", fmt(lower.in(unit))},
                        {"upper_bound [" + u + "]", fmt(upper.in(unit))},
                        {"lower_photon_eff [" + u + "/photon]", opt(eff_lower)},
                        {"upper_photon_eff [" + u + "/photon]", opt(eff_upper)},
                        {"capacity_infinite [" + u + "]", fmt(cinf)},
                        {"asym_coeff_lower [" + u + "/photon]", coeff ? fmt(coeff->lower) : "n/a"},
                        {"asym_coeff_upper [" + u + "/photon]", coeff ? fmt(coeff->upper) : "n/a"},
                    });
    return kOk;
}

int cmd_figure(const GlobalOptions& g, const FigureArgs& a, std::ostream& out) {
    FigureRequest req = default_request(parse_figure_kind(a.figure));
    if (a.eta) req.eta = *a.eta;
    if (a.nbar) req.nbar = *a.nbar;
    if (a.modes) req.modes = *a.modes;
    if (a.from) req.grid.from = *a.from;
    if (a.to) req.grid.to = *a.to;
    if (a.points) req.grid.points = *a.points;
    if (a.scale) req.grid.log_spaced = *a.scale == "log";

    const std::string csv = to_csv(make_figure(req));
    if (a.out_path.empty() || a.out_path == "-") {
        out << csv;
    } else {
        std::ofstream file(a.out_path, std::ios::binary);
        if (!file || !(file << csv) || !file.flush()) {
            throw std::runtime_error("cannot write '" + a.out_path + "'");
        }
    }
    if (!a.gnuplot_path.empty()) {
        std::ofstream script(a.gnuplot_path, std::ios::binary);
        const std::string data = a.out_path.empty() || a.out_path == "-" ? "data.csv" : a.out_path;
        if (!script || !(script << gnuplot_script(req, data)) || !script.flush()) {
            throw std::runtime_error("cannot write '" + a.gnuplot_path + "'");
        }
    }
    if (g.json && !(a.out_path.empty() || a.out_path == "-")) {
        json j{{"figure", figure_kind_name(req.kind)}, {"path", a.out_path}, {"unit", "bits"},
               {"points", req.grid.points}};
        out << j.dump(2) << '\n';
    }
    return kOk;
}

int cmd_decompose(const GlobalOptions& g, const DecomposeArgs& a, std::ostream& out) {
    MatrixDocument doc;
    if (a.haar) {
        doc.matrix = haar_unitary(*a.haar, g.seed.value_or(0));
    } else {
        doc = load_matrix_file(a.matrix_path);
    }
    BlockPartition part = doc.partition.value_or(BlockPartition{});
    if (a.m) part.m = *a.m;
    if (a.k) part.k = *a.k;
    if (a.l) part.l = *a.l;
    if (part.m == 0 || part.k == 0 || part.l == 0) {
        throw ParseError("block partition required: pass --m, --k, --l or include it in the matrix file");
    }
    const UnitaryTransition u(doc.matrix, part, a.tol);
    const ModeDecomposition d = mode_decompose(u, a.tol);
    const std::vector<double> etas(d.spectrum.etas().begin(), d.spectrum.etas().end());

    if (g.json) {
        json j{{"spectrum", etas},
               {"completeness_residual", d.completeness_residual},
               {"unitarity_residual", d.unitarity_residual},
               {"partition", {{"m", part.m}, {"k", part.k}, {"l", part.l}}},
               {"unit", "transmissivity"}};
        out << j.dump(2) << '\n';
        return kOk;
    }
    std::string spec;
    for (std::size_t i = 0; i < etas.size(); ++i) spec += (i ? ", " : "") + fmt(etas[i]);
    print_rows(out, {{"spectrum", spec},
                     {"completeness_residual", fmt(d.completeness_residual)},
                     {"unitarity_residual", fmt(d.unitarity_residual)}});
    return kOk;
}

int cmd_allocate(const GlobalOptions& g, const AllocateArgs& a, std::ostream& out) {
    const InfoUnit unit = parse_unit(g.unit);
    if (a.etas.empty() == a.etas_file.empty()) {
        throw ParseError("give exactly one of --etas or --etas-file");
    }
    const std::vector<double> raw =
        parse_spectrum(a.etas.empty() ? read_text_file(a.etas_file) : a.etas);
    const ModeSpectrum spectrum(raw);
    const BoundKind kind = parse_bound_kind(a.kind);
    const Allocation alloc = allocate(spectrum, a.nbar, kind, {.tol = a.tol});

    const std::vector<double> etas(spectrum.etas().begin(), spectrum.etas().end());
    json j{{"etas", etas},
           {"nbar", a.nbar},
           {"kind", bound_kind_name(kind)},
           {"budgets", alloc.budgets},
           {"value", alloc.value.in(unit)},
           {"value_nats", alloc.value.nats},
           {"lagrange_multiplier", alloc.lagrange_multiplier},
           {"unit", unit_name(unit)}};
    out << j.dump(2) << '\n';
    return kOk;
}

int cmd_turbulence(const GlobalOptions& g, const TurbulenceArgs& a, std::ostream& out,
                   std::ostream& err) {
    EnsembleSpec spec = parse_ensemble_spec(read_text_file(a.spec_path));
    if (g.seed) spec.seed = *g.seed;
    const MomentBasis basis = parse_basis(a.basis);
    const ParallelOptions parallel{a.threads};

    const MonteCarloEstimate est = monte_carlo_lower(spec, a.nbar, a.samples, parallel);
    const SecondMomentMatrix mu =
        second_moment(spec, a.moment_samples ? a.moment_samples : a.samples, parallel);
    const double bound_diag = turbulence_lower_bound(mu, a.nbar, MomentBasis::Diagonal).nats;
    const double bound_eigen = turbulence_lower_bound(mu, a.nbar, MomentBasis::Eigen).nats;
    const double selected = basis == MomentBasis::Eigen ? bound_eigen : bound_diag;

    const bool chain_ok = est.mean + 3.0 * est.std_error >= bound_eigen &&
                          bound_eigen >= bound_diag - 1e-9 && bound_diag >= 0.0;

    json j{{"ensemble", kind_name(spec)},
           {"seed", spec.seed},
           {"nbar", a.nbar},
           {"n_samples", est.n_samples},
           {"mean_nats", est.mean},
           {"std_error", est.std_error},
           {"confidence_95", {est.ci_low, est.ci_high}},
           {"bound_diagonal", bound_diag},
           {"bound_eigen", bound_eigen},
           {"basis", basis_name(basis)},
           {"bound", selected},
           {"second_moment_std_error", mu.standard_error},
           {"second_moment", json::parse(matrix_to_json(mu.matrix))},
           {"chain_holds", chain_ok},
           {"unit", "nats"}};
    out << j.dump(2) << '\n';
    if (!chain_ok) {
        err << "error: Monte Carlo mean + 3 sigma is below the second-moment bound\n";
        return kDomainError;
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Private-capacity bounds for noiseless bosonic wiretap channels", "privcap"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_flag("--json", g.json, "Emit JSON instead of aligned text");
    app.add_option("--seed", g.seed, "Seed for random ensembles (overrides spec files)");
    app.add_option("--unit", g.unit, "Information unit")->check(CLI::IsMember({"bits", "nats"}));

    BoundsArgs bounds;
    auto* sub_bounds = app.add_subcommand("bounds", "Single-mode lower/upper bounds");
    sub_bounds->add_option("--eta", bounds.eta, "Transmissivity in [0, 1]")->required();
    sub_bounds->add_option("--nbar", bounds.nbar, "Mean photon number per use")->required();

    FigureArgs fig;
    auto* sub_fig = app.add_subcommand("figure", "Emit CSV data for a photon-efficiency plot");
    sub_fig->add_option("--figure", fig.figure, "nbar | eta | spectral")
        ->check(CLI::IsMember({"nbar", "eta", "spectral"}));
    sub_fig->add_option("--eta", fig.eta, "Transmissivity (nbar and spectral figures)");
    sub_fig->add_option("--nbar", fig.nbar, "Photon budget (eta figure)");
    sub_fig->add_option("--modes", fig.modes, "Mode count (spectral figure)");
    sub_fig->add_option("--from", fig.from, "First grid value");
    sub_fig->add_option("--to", fig.to, "Last grid value");
    sub_fig->add_option("--points", fig.points, "Number of grid points");
    sub_fig->add_option("--scale", fig.scale, "log | linear")->check(CLI::IsMember({"log", "linear"}));
    sub_fig->add_option("-o,--out", fig.out_path, "Output CSV path ('-' for stdout)");
    sub_fig->add_option("--gnuplot", fig.gnuplot_path, "Also write a gnuplot script here");

    DecomposeArgs dec;
    auto* sub_dec = app.add_subcommand("decompose", "Reduce a transition matrix to parallel modes");
    auto* dec_matrix = sub_dec->add_option("--matrix", dec.matrix_path, "Matrix file (.json or .csv)");
    auto* dec_haar = sub_dec->add_option("--haar", dec.haar, "Use a Haar-random NxN unitary instead");
    dec_matrix->excludes(dec_haar);
    sub_dec->add_option("--m", dec.m, "Alice modes");
    sub_dec->add_option("--k", dec.k, "Bob modes");
    sub_dec->add_option("--l", dec.l, "Eve modes");
    sub_dec->add_option("--tol", dec.tol, "Unitarity / completeness tolerance");

    AllocateArgs alloc;
    auto* sub_alloc = app.add_subcommand("allocate", "Optimal photon allocation across modes");
    sub_alloc->add_option("--etas", alloc.etas, "Comma-separated transmissivities or JSON array");
    sub_alloc->add_option("--etas-file", alloc.etas_file, "File holding a JSON array of transmissivities");
    sub_alloc->add_option("--nbar", alloc.nbar, "Total photon budget")->required();
    sub_alloc->add_option("--kind", alloc.kind, "lower | upper")->check(CLI::IsMember({"lower", "upper"}));
    sub_alloc->add_option("--tol", alloc.tol, "Relative tolerance on the budget sum");

    TurbulenceArgs turb;
    auto* sub_turb = app.add_subcommand("turbulence", "Monte Carlo and second-moment bounds");
    sub_turb->add_option("--spec", turb.spec_path, "Ensemble spec JSON")->required();
    sub_turb->add_option("--nbar", turb.nbar, "Photon budget")->required();
    sub_turb->add_option("--samples", turb.samples, "Monte Carlo samples (>= 30)");
    sub_turb->add_option("--moment-samples", turb.moment_samples,
                         "Samples for the second-moment estimate (default: --samples)");
    sub_turb->add_option("--basis", turb.basis, "eigen | diagonal")->check(CLI::IsMember({"eigen", "diagonal"}));
    sub_turb->add_option("--threads", turb.threads, "Worker threads (0 = hardware)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty()) reversed.pop_back();  // program name
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (sub_bounds->parsed()) return cmd_bounds(g, bounds, out);
        if (sub_fig->parsed()) return cmd_figure(g, fig, out);
        if (sub_dec->parsed()) {
            if (dec.matrix_path.empty() && !dec.haar) throw ParseError("give --matrix or --haar");
            return cmd_decompose(g, dec, out);
        }
        if (sub_alloc->parsed()) return cmd_allocate(g, alloc, out);
        if (sub_turb->parsed()) return cmd_turbulence(g, turb, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDomainError;
    }
    return kUsageError;
}

}  // namespace privcap::cli
