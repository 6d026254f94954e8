// Acceptance suite. Prints one [PASS]/[FAIL] line per criterion.
//   privcap_acceptance                 run everything
//   privcap_acceptance --criterion 4   run one

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/cli.hpp"
#include "privcap/allocation.hpp"
#include "privcap/entropy.hpp"
#include "privcap/haar.hpp"
#include "privcap/hermitian_eigen.hpp"
#include "privcap/mode_algebra.hpp"
#include "privcap/turbulence.hpp"
#include "support/generators.hpp"

using namespace privcap;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::vector<double> eta_grid() {
    std::vector<double> v(101);
    for (int i = 0; i <= 100; ++i) v[i] = i / 100.0;
    return v;
}

std::vector<double> nbar_grid() {
    std::vector<double> v(30);
    for (int i = 0; i < 30; ++i) v[i] = std::pow(10.0, -6.0 + 9.0 * i / 29.0);
    return v;
}

double L(double eta, double n) { return lower_bound(Transmissivity{eta}, PhotonBudget{n}).nats; }
double U(double eta, double n) { return upper_bound(Transmissivity{eta}, PhotonBudget{n}).nats; }

Outcome criterion_1() {
    Outcome o;
    int violations = 0;
    int nonzero = 0;
    for (double eta : eta_grid()) {
        for (double n : nbar_grid()) {
            const double l = L(eta, n);
            const double u = U(eta, n);
            if (!(0.0 <= l && l <= u)) ++violations;
            if (eta <= 0.5 && (l != 0.0 || u != 0.0)) ++nonzero;
        }
    }
    o.require(violations == 0, std::to_string(violations) + " ordering violations");
    o.require(nonzero == 0, std::to_string(nonzero) + " nonzero values at eta <= 1/2");
    o.detail = o.passed ? "3030 grid points, 0 violations" : o.detail;
    return o;
}

Outcome criterion_2() {
    Outcome o;
    const double eta = 0.7;
    const double n = 1e-8;
    const double scale = n * std::log(1.0 / n);
    const double rl = L(eta, n) / scale;
    const double ru = U(eta, n) / scale;
    const auto c = asymptotic_coefficients(Transmissivity{eta});
    const double gap = (U(eta, n) - L(eta, n)) / n;
    const double expected_gap = c.upper - c.lower;
    const double el = std::abs(rl - 0.4) / 0.4;
    const double eu = std::abs(ru - 0.4) / 0.4;
    const double eg = std::abs(gap - expected_gap) / expected_gap;
    o.require(el <= 0.02, "L ratio " + num(rl) + " off by " + num(100 * el) + "%");
    o.require(eu <= 0.02, "U ratio " + num(ru) + " off by " + num(100 * eu) + "%");
    o.require(eg <= 0.10, "gap off by " + num(100 * eg) + "%");
    if (o.passed) o.detail = "ratios " + num(rl) + ", " + num(ru) + "; gap error " + num(100 * eg) + "%";
    else o.detail += " (gap " + num(gap) + " vs " + num(expected_gap) + ", error " + num(100 * eg) + "%)";
    return o;
}

Outcome criterion_3() {
    Outcome o;
    const auto etas = eta_grid();
    const auto ns = nbar_grid();
    int mono = 0;
    int convex = 0;
    int concave = 0;
    for (std::size_t i = 0; i < etas.size(); ++i) {
        for (std::size_t j = 0; j < ns.size(); ++j) {
            const double l = L(etas[i], ns[j]);
            const double u = U(etas[i], ns[j]);
            if (i > 0) {
                if (l < L(etas[i - 1], ns[j]) - 1e-12) ++mono;
                if (u < U(etas[i - 1], ns[j]) - 1e-12) ++mono;
            }
            if (j > 0) {
                if (l < L(etas[i], ns[j - 1]) - 1e-12) ++mono;
                if (u < U(etas[i], ns[j - 1]) - 1e-12) ++mono;
            }
            if (i > 0 && i + 1 < etas.size()) {
                const double d2 = L(etas[i + 1], ns[j]) - 2.0 * l + L(etas[i - 1], ns[j]);
                if (d2 < -1e-9) ++convex;
            }
            if (j > 0 && j + 1 < ns.size()) {
                // Divided differences: the n grid is log-spaced.
                for (auto f : {L, U}) {
                    const double left = (f(etas[i], ns[j]) - f(etas[i], ns[j - 1])) / (ns[j] - ns[j - 1]);
                    const double right = (f(etas[i], ns[j + 1]) - f(etas[i], ns[j])) / (ns[j + 1] - ns[j]);
                    if (right - left > 1e-9) ++concave;
                }
            }
        }
    }
    o.require(mono == 0, std::to_string(mono) + " monotonicity violations");
    o.require(convex == 0, std::to_string(convex) + " convexity violations in eta");
    o.require(concave == 0, std::to_string(concave) + " concavity violations in nbar");
    if (o.passed) o.detail = "monotone in both arguments, convex in eta, concave in nbar";
    return o;
}

Outcome criterion_4() {
    Outcome o;
    std::mt19937_64 rng(4);
    double worst_completeness = 0.0;
    double worst_reconstruction = 0.0;
    double worst_invariance = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
        std::uniform_int_distribution<std::size_t> pick_k(1, n - 1);
        std::uniform_int_distribution<std::size_t> pick_m(1, n);
        const std::size_t k = pick_k(rng);
        const BlockPartition p{pick_m(rng), k, n - k};
        const UnitaryTransition u(haar_unitary(n, rng), p);
        const auto d = mode_decompose(u);
        worst_completeness = std::max(worst_completeness, d.completeness_residual);

        const ComplexMatrix h = gram(u.t_ab());
        const auto e = hermitian_eigen(h);
        const ComplexMatrix rebuilt =
            e.eigenvectors * ComplexMatrix::diagonal(e.eigenvalues) * e.eigenvectors.adjoint();
        worst_reconstruction = std::max(worst_reconstruction, (rebuilt - h).frobenius_norm());

        ComplexMatrix right = haar_unitary(p.m, rng);
        if (n > p.m) right = direct_sum(right, ComplexMatrix::identity(n - p.m));
        const ComplexMatrix left = direct_sum(haar_unitary(p.k, rng), haar_unitary(p.l, rng));
        const auto moved = mode_decompose(UnitaryTransition(left * u.matrix() * right, p));
        for (std::size_t i = 0; i < d.spectrum.size(); ++i) {
            worst_invariance = std::max(worst_invariance, std::abs(d.spectrum[i] - moved.spectrum[i]));
        }
    }
    o.require(worst_completeness <= 1e-10, "completeness residual " + num(worst_completeness));
    o.require(worst_reconstruction <= 1e-10, "reconstruction residual " + num(worst_reconstruction));
    o.require(worst_invariance <= 1e-10, "invariance error " + num(worst_invariance));
    if (o.passed) {
        o.detail = "max residuals " + num(worst_completeness) + " / " + num(worst_reconstruction) +
                   ", invariance " + num(worst_invariance);
    }
    return o;
}

Outcome criterion_5() {
    Outcome o;
    std::mt19937_64 rng(5);
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) {
        const ModeSpectrum spectrum(gen::random_etas(2 + static_cast<std::size_t>(s % 2), rng));
        for (double nbar : {0.1, 1.0, 10.0}) {
            const double fast = allocate(spectrum, nbar, BoundKind::Lower).value.nats;
            const double slow = allocate_bruteforce(spectrum, nbar, BoundKind::Lower, 1e-3).value.nats;
            worst = std::max(worst, std::abs(fast - slow));
        }
    }
    o.require(worst <= 1e-4, "max gap to exhaustive search " + num(worst) + " nats");

    double asym = 0.0;
    std::uniform_real_distribution<double> usable(0.5, 1.0);
    for (int s = 0; s < 50; ++s) {
        const double a = usable(rng);
        const double b = usable(rng);
        const auto alloc = allocate(ModeSpectrum({a, a, b}), 2.0, BoundKind::Lower);
        const auto& x = alloc.budgets;
        const double d = a >= b ? std::abs(x[0] - x[1]) : std::abs(x[1] - x[2]);
        asym = std::max(asym, d);
    }
    o.require(asym <= 1e-9, "symmetric modes differ by " + num(asym));
    if (o.passed) o.detail = "max gap " + num(worst) + " nats over 150 cases; symmetric spread " + num(asym);
    return o;
}

Outcome criterion_6() {
    Outcome o;
    const ModeSpectrum s({0.9, 0.8});
    const double nbar = 1e-6;
    const auto alloc = allocate(s, nbar, BoundKind::Lower);
    const double share = alloc.budgets[0] / nbar;
    const double asym = asymptotic_multimode(s, nbar);
    const double lower = alloc.value.nats;
    const double upper = multi_mode_bound(s, nbar, BoundKind::Upper).nats;
    const double el = std::abs(asym - lower) / lower;
    const double eu = std::abs(asym - upper) / upper;
    o.require(share >= 0.95, "best-mode share " + num(share));
    o.require(el <= 0.15, "asymptotic vs lower " + num(100 * el) + "%");
    o.require(eu <= 0.15, "asymptotic vs upper " + num(100 * eu) + "%");
    if (o.passed) {
        o.detail = "share " + num(share) + ", asymptotic off by " + num(100 * el) + "% / " + num(100 * eu) + "%";
    }
    return o;
}

Outcome criterion_7() {
    Outcome o;
    std::mt19937_64 rng(7);
    double worst_step = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const ComplexMatrix c = gen::random_psd_contraction(4, rng);
        const ModeSpectrum eig(hermitian_eigenvalues(c), 1e-10);
        const ModeSpectrum diag(c.real_diagonal(), 1e-10);
        for (double nbar : {0.01, 1.0}) {
            const double gap = multi_mode_bound(eig, nbar, BoundKind::Lower).nats -
                               multi_mode_bound(diag, nbar, BoundKind::Lower).nats;
            worst_step = std::min(worst_step, gap);
        }
    }
    o.require(worst_step >= -1e-9, "Schur step violated by " + num(-worst_step));

    const EnsembleSpec spec{HaarSubblock{4, 2, 2}, 2024};
    const auto mc = monte_carlo_lower(spec, 1.0, 10000);
    const auto mu = second_moment(spec, 10000);
    const double eigen = turbulence_lower_bound(mu, 1.0, MomentBasis::Eigen).nats;
    const double diag = turbulence_lower_bound(mu, 1.0, MomentBasis::Diagonal).nats;
    o.require(mc.mean >= eigen - 3.0 * mc.std_error,
              "Monte Carlo " + num(mc.mean) + " below eigen bound " + num(eigen));
    o.require(eigen >= diag, "eigen bound " + num(eigen) + " below diagonal " + num(diag));
    if (o.passed) {
        o.detail = "MC " + num(mc.mean) + " +- " + num(mc.std_error) + " >= eigen " + num(eigen) +
                   " >= diag " + num(diag);
    }
    return o;
}

Outcome criterion_8() {
    Outcome o;
    double worst_c = 0.0;
    double worst_e = 0.0;
    std::mt19937_64 rng(8);
    std::normal_distribution<double> normal;
    for (int i = 1; i <= 200; ++i) {
        const double eta = 0.5 + 0.5 * i / 200.0;
        for (int a = 0; a < 10; ++a) {
            const Complex alpha(normal(rng), normal(rng));
            const auto m = cascade_moments(eta, CascadeInput::coherent(alpha));
            worst_c = std::max(worst_c, std::abs(m.n_c - (2.0 * eta - 1.0) * m.n_a));
            worst_e = std::max(worst_e, std::abs(*m.mean_e - *m.mean_e_prime));
        }
    }
    o.require(worst_c <= 1e-12, "n_c error " + num(worst_c));
    o.require(worst_e <= 1e-12, "Eve amplitude mismatch " + num(worst_e));
    if (o.passed) o.detail = "max errors " + num(worst_c) + " / " + num(worst_e);
    return o;
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    [[nodiscard]] std::size_t col(const std::string& name) const {
        return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
    }
    [[nodiscard]] std::vector<double> column(const std::string& name) const {
        std::vector<double> v;
        for (const auto& r : rows) v.push_back(r.at(col(name)));
        return v;
    }
};

Csv emit(const std::vector<std::string>& args) {
    std::vector<std::string> full{"privcap", "figure"};
    full.insert(full.end(), args.begin(), args.end());
    std::ostringstream out;
    std::ostringstream err;
    if (cli::run(full, out, err) != 0) throw std::runtime_error("figure command failed: " + err.str());
    Csv csv;
    std::istringstream in(out.str());
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::istringstream cells(line);
        std::string cell;
        std::vector<std::string> parts;
        while (std::getline(cells, cell, ',')) parts.push_back(cell);
        if (first) {
            csv.header = parts;
            first = false;
            continue;
        }
        std::vector<double> row;
        for (const auto& p : parts) row.push_back(std::stod(p));
        csv.rows.push_back(row);
    }
    return csv;
}

bool nonincreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[i - 1] + 1e-12) return false;
    return true;
}

bool nondecreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[i - 1] - 1e-12) return false;
    return true;
}

// Least-squares slope of y against log2(1/x) for x in [1e-6, 1e-3].
double efficiency_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] >= 1e-6 * (1 - 1e-9) && x[i] <= 1e-3 * (1 + 1e-9)) {
            xs.push_back(std::log2(1.0 / x[i]));
            ys.push_back(y[i]);
        }
    }
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

Outcome criterion_9() {
    Outcome o;
    const Csv fig2 = emit({"--figure", "nbar", "--eta", "0.7"});
    const auto n2 = fig2.column("nbar");
    const auto l2 = fig2.column("lower_bits_per_photon");
    const auto u2 = fig2.column("upper_bits_per_photon");
    for (std::size_t i = 0; i < l2.size(); ++i) o.require(u2[i] >= l2[i], "fig2 upper < lower");
    o.require(nonincreasing(l2) && nonincreasing(u2), "fig2 efficiency not decreasing in nbar");
    const double s2l = efficiency_slope(n2, l2);
    const double s2u = efficiency_slope(n2, u2);
    o.require(std::abs(s2l - 0.4) <= 0.02 && std::abs(s2u - 0.4) <= 0.02,
              "fig2 slopes " + num(s2l) + ", " + num(s2u));

    const Csv fig3 = emit({"--figure", "eta", "--nbar", "1e-3"});
    const auto l3 = fig3.column("lower_bits_per_photon");
    const auto u3 = fig3.column("upper_bits_per_photon");
    for (std::size_t i = 0; i < l3.size(); ++i) o.require(u3[i] >= l3[i], "fig3 upper < lower");
    o.require(nondecreasing(l3) && nondecreasing(u3), "fig3 efficiency not increasing in eta");

    // Extend the reference sweep down to 1e-6 so the slope window is covered.
    const Csv fig4 = emit({"--figure", "spectral", "--eta", "0.9", "--modes", "1000", "--from", "1e-6",
                           "--to", "1e5", "--points", "67"});
    const auto n4 = fig4.column("nbar");
    const auto sl = fig4.column("spectral_eff_lower");
    const auto su = fig4.column("spectral_eff_upper");
    const auto pl = fig4.column("photon_eff_lower");
    const auto pu = fig4.column("photon_eff_upper");
    for (std::size_t i = 0; i < sl.size(); ++i) {
        o.require(su[i] >= sl[i] && pu[i] >= pl[i], "fig4 upper < lower");
    }
    o.require(nondecreasing(sl) && nondecreasing(su), "fig4 spectral efficiency not increasing");
    o.require(nonincreasing(pl) && nonincreasing(pu), "fig4 photon efficiency not decreasing");
    const double s4 = efficiency_slope(n4, pl);
    o.require(std::abs(s4 - 0.8) <= 0.04, "fig4 slope " + num(s4));

    if (o.passed) {
        o.detail = "slopes " + num(s2l) + " / " + num(s2u) + " (target 0.4), fig4 " + num(s4) + " (target 0.8)";
    }
    return o;
}

struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"privcap acceptance suite"};
    std::vector<int> only;
    app.add_option("--criterion", only, "Run only these criteria (1-9)");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> all{
        {1, "bound ordering and vanishing", 1.0, criterion_1},
        {2, "low-photon asymptotics", 1.0, criterion_2},
        {3, "monotonicity, convexity, concavity", 1.0, criterion_3},
        {4, "mode decomposition", 5.0, criterion_4},
        {5, "optimal allocation", 60.0, criterion_5},
        {6, "concentration on the best mode", 1.0, criterion_6},
        {7, "second-moment bound chain", 120.0, criterion_7},
        {8, "cascade identities", 1.0, criterion_8},
        {9, "figure data", 5.0, criterion_9},
    };

    int failures = 0;
    for (const auto& c : all) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.budget_seconds) {
            o.passed = false;
            o.detail += " (over time budget of " + num(c.budget_seconds) + " s)";
        }
        if (!o.passed) ++failures;
        std::printf("[%s] C%d %s: %s [%.3f s]\n", o.passed ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), secs);
    }
    return failures == 0 ? 0 : 1;
}
