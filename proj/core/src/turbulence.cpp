#include "privcap/turbulence.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <thread>

#include "privcap/error.hpp"
#include "privcap/haar.hpp"
#include "privcap/hermitian_eigen.hpp"
#include "privcap/mode_algebra.hpp"

namespace privcap {

namespace {

constexpr double kContractionTol = 1e-10;
// Second-moment eigenvalues may exceed 1 by accumulated rounding.
constexpr double kMomentClampTol = 1e-8;
// Samples are evaluated in waves of this many, then reduced in index order.
constexpr std::size_t kWave = 4096;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

unsigned resolve_workers(ParallelOptions options) {
    unsigned w = options.workers == 0 ? std::thread::hardware_concurrency() : options.workers;
    return std::max(1U, w);
}

// Computes map(i) for i in [0, n) on `workers` threads and feeds the results
// to reduce(i, value) strictly in index order, so the outcome does not depend
// on the number of workers.
template <class T, class Map, class Reduce>
void ordered_map_reduce(std::size_t n, unsigned workers, Map&& map, Reduce&& reduce) {
    std::vector<T> values;
    std::vector<std::exception_ptr> errors;
    for (std::size_t base = 0; base < n; base += kWave) {
        const std::size_t count = std::min(kWave, n - base);
        values.assign(count, T{});
        errors.assign(count, nullptr);
        auto work = [&](unsigned w, unsigned stride) {
            for (std::size_t j = w; j < count; j += stride) {
                try {
                    values[j] = map(base + j);
                } catch (...) {
                    errors[j] = std::current_exception();
                }
            }
        };
        const unsigned used = static_cast<unsigned>(std::min<std::size_t>(workers, count));
        if (used <= 1) {
            work(0, 1);
        } else {
            std::vector<std::jthread> pool;
            pool.reserve(used);
            for (unsigned w = 0; w < used; ++w) pool.emplace_back(work, w, used);
        }
        for (std::size_t j = 0; j < count; ++j) {
            if (errors[j]) std::rethrow_exception(errors[j]);
            reduce(base + j, values[j]);
        }
    }
}

void require_contraction(const ComplexMatrix& t, const char* who) {
    for (double lambda : hermitian_eigenvalues(gram(t))) {
        if (lambda > 1.0 + kContractionTol || lambda < -kContractionTol) {
            throw NumericalError(std::string(who) + ": sampled T_ab is not a contraction (eigenvalue " +
                                 std::to_string(lambda) + " of T^dagger T)");
        }
    }
}

}  // namespace

void validate(const EnsembleSpec& spec) {
    std::visit(
        overloaded{
            [](const HaarSubblock& h) {
                if (h.n == 0 || h.m == 0 || h.k == 0) {
                    throw DomainError("HaarSubblock: N, m, k must be positive");
                }
                if (h.m > h.n || h.k > h.n) throw DomainError("HaarSubblock: m and k must not exceed N");
            },
            [](const RandomizedSpectrum& r) {
                if (r.base_etas.empty()) throw DomainError("RandomizedSpectrum: base_etas is empty");
                for (double e : r.base_etas) {
                    if (!(e >= 0.0 && e <= 1.0)) {
                        throw DomainError("RandomizedSpectrum: base eta " + std::to_string(e) +
                                          " outside [0, 1]");
                    }
                }
                if (!(r.jitter >= 0.0 && r.jitter <= 1.0)) {
                    throw DomainError("RandomizedSpectrum: jitter must lie in [0, 1]");
                }
            },
            [](const Deterministic& d) {
                if (d.t_ab.empty()) throw DomainError("Deterministic: t_ab is empty");
                require_contraction(d.t_ab, "Deterministic");
            },
            [](const CustomEnsemble& c) {
                if (!c.sample) throw DomainError("CustomEnsemble: sampler is empty");
                if (c.m == 0) throw DomainError("CustomEnsemble: m must be positive");
            },
        },
        spec.kind);
}

std::size_t input_modes(const EnsembleSpec& spec) {
    return std::visit(overloaded{
                          [](const HaarSubblock& h) { return h.m; },
                          [](const RandomizedSpectrum& r) { return r.base_etas.size(); },
                          [](const Deterministic& d) { return d.t_ab.cols(); },
                          [](const CustomEnsemble& c) { return c.m; },
                      },
                      spec.kind);
}

std::string kind_name(const EnsembleSpec& spec) {
    return std::visit(overloaded{
                          [](const HaarSubblock&) { return std::string("haar_subblock"); },
                          [](const RandomizedSpectrum&) { return std::string("randomized_spectrum"); },
                          [](const Deterministic&) { return std::string("deterministic"); },
                          [](const CustomEnsemble& c) { return c.label; },
                      },
                      spec.kind);
}

ComplexMatrix sample_channel(const EnsembleSpec& spec, std::uint64_t index) {
    return std::visit(
        overloaded{
            [&](const HaarSubblock& h) {
                std::mt19937_64 rng(stream_seed(spec.seed, index));
                return haar_unitary(h.n, rng).block(0, 0, h.k, h.m);
            },
            [&](const RandomizedSpectrum& r) {
                std::mt19937_64 rng(stream_seed(spec.seed, index));
                std::uniform_real_distribution<double> unit(0.0, 1.0);
                const std::size_t m = r.base_etas.size();
                ComplexMatrix t(m, m);
                for (std::size_t i = 0; i < m; ++i) {
                    const double u = unit(rng);
                    t(i, i) = std::sqrt(r.base_etas[i] * (1.0 - r.jitter * u));
                }
                if (r.conjugation == Conjugation::Haar) t = t * haar_unitary(m, rng).adjoint();
                return t;
            },
            [](const Deterministic& d) { return d.t_ab; },
            [&](const CustomEnsemble& c) {
                ComplexMatrix t = c.sample(spec.seed, index);
                if (t.cols() != c.m) {
                    throw NumericalError("custom sampler returned " + std::to_string(t.cols()) +
                                         " columns, expected " + std::to_string(c.m));
                }
                require_contraction(t, "custom sampler");
                return t;
            },
        },
        spec.kind);
}

SecondMomentMatrix second_moment(const EnsembleSpec& spec, std::size_t n_samples,
                                 ParallelOptions parallel) {
    validate(spec);
    if (n_samples < 2) throw DomainError("second_moment: need at least 2 samples");
    const std::size_t m = input_modes(spec);

    std::vector<RunningStats> re(m * m);
    std::vector<RunningStats> im(m * m);
    ordered_map_reduce<ComplexMatrix>(
        n_samples, resolve_workers(parallel),
        [&](std::size_t i) { return gram(sample_channel(spec, i)); },
        [&](std::size_t, const ComplexMatrix& g) {
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t c = 0; c < m; ++c) {
                    re[r * m + c].push(g(r, c).real());
                    im[r * m + c].push(g(r, c).imag());
                }
        });

    SecondMomentMatrix out{ComplexMatrix(m, m), std::vector<double>(m * m), 0.0, n_samples};
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) {
            const std::size_t k = r * m + c;
            out.matrix(r, c) = {re[k].mean(), im[k].mean()};
            out.entry_std_error[k] = std::hypot(re[k].std_error(), im[k].std_error());
            out.standard_error = std::max(out.standard_error, out.entry_std_error[k]);
        }
    // Per-sample Gram matrices are exactly Hermitian, and so is their running
    // mean up to rounding in the imaginary parts; enforce it.
    for (std::size_t r = 0; r < m; ++r) {
        out.matrix(r, r) = out.matrix(r, r).real();
        for (std::size_t c = r + 1; c < m; ++c) out.matrix(c, r) = std::conj(out.matrix(r, c));
    }
    return out;
}

MomentBasis parse_basis(std::string_view name) {
    if (name == "diagonal") return MomentBasis::Diagonal;
    if (name == "eigen") return MomentBasis::Eigen;
    throw DomainError("unknown basis '" + std::string(name) + "' (expected diagonal or eigen)");
}

const char* basis_name(MomentBasis basis) noexcept {
    return basis == MomentBasis::Diagonal ? "diagonal" : "eigen";
}

BoundValue turbulence_lower_bound(const ComplexMatrix& mu, double nbar, MomentBasis basis) {
    std::vector<double> etas =
        basis == MomentBasis::Diagonal ? mu.real_diagonal() : hermitian_eigenvalues(mu);
    return multi_mode_bound(ModeSpectrum(std::move(etas), kMomentClampTol), nbar, BoundKind::Lower);
}

BoundValue turbulence_lower_bound(const SecondMomentMatrix& mu, double nbar, MomentBasis basis) {
    return turbulence_lower_bound(mu.matrix, nbar, basis);
}

void RunningStats::push(double x) noexcept {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
}

double RunningStats::variance() const noexcept {
    return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1);
}

double RunningStats::std_error() const noexcept {
    return n_ == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(n_));
}

MonteCarloEstimate RunningStats::estimate() const noexcept {
    const double se = std_error();
    return {mean_, se, n_, mean_ - 1.96 * se, mean_ + 1.96 * se};
}

SampleBounds sample_bounds(const ComplexMatrix& t_ab, double nbar) {
    const ComplexMatrix h = gram(t_ab);
    const ModeSpectrum eigen = contraction_spectrum(t_ab, kContractionTol);
    const ModeSpectrum diagonal(h.real_diagonal(), kContractionTol);
    return {multi_mode_bound(eigen, nbar, BoundKind::Lower).nats,
            multi_mode_bound(diagonal, nbar, BoundKind::Lower).nats};
}

MonteCarloEstimate monte_carlo_lower(const EnsembleSpec& spec, double nbar, std::size_t n_samples,
                                     ParallelOptions parallel) {
    validate(spec);
    if (n_samples < 30) throw DomainError("monte_carlo_lower: need at least 30 samples");
    const double budget = PhotonBudget{nbar}.value();

    RunningStats stats;
    ordered_map_reduce<double>(
        n_samples, resolve_workers(parallel),
        [&](std::size_t i) {
            try {
                const ComplexMatrix t = sample_channel(spec, i);
                return multi_mode_bound(contraction_spectrum(t, kContractionTol), budget,
                                        BoundKind::Lower)
                    .nats;
            } catch (const std::exception& e) {
                throw NumericalError("sample " + std::to_string(i) + ": " + e.what());
            }
        },
        [&](std::size_t, double value) { stats.push(value); });
    return stats.estimate();
}

bool majorizes(std::span<const double> a, std::span<const double> b, double tol) {
    if (a.size() != b.size()) throw DomainError("majorizes: vectors differ in length");
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end(), std::greater<>());
    std::sort(y.begin(), y.end(), std::greater<>());
    double px = 0.0;
    double py = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        px += x[i];
        py += y[i];
        if (px < py - tol) return false;
    }
    return std::abs(px - py) <= tol;
}

}  // namespace privcap
