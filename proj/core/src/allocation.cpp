#include "privcap/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "privcap/error.hpp"

namespace privcap {

namespace {

// Below this a mode's budget is treated as zero; keeps 1/(eta n) finite.
constexpr double kMinBudget = 1e-290;

void require_marginal_domain(double eta, double nbar) {
    if (!(eta > 0.5 && eta <= 1.0)) {
        throw DomainError("marginal_rate: requires 1/2 < eta <= 1, got " + std::to_string(eta));
    }
    if (!(nbar > 0.0) || !std::isfinite(nbar)) {
        throw DomainError("marginal_rate: requires finite nbar > 0, got " + std::to_string(nbar));
    }
}

double marginal_unchecked(double eta, double n, BoundKind kind) {
    if (kind == BoundKind::Upper) {
        const double a = 2.0 * eta - 1.0;
        return a * std::log1p(1.0 / (a * n));
    }
    const double leak = 1.0 - eta;
    const double eve = leak == 0.0 ? 0.0 : leak * std::log1p(1.0 / (leak * n));
    return eta * std::log1p(1.0 / (eta * n)) - eve;
}

// n * d(marginal)/dn, always negative.
double marginal_log_slope(double eta, double n, BoundKind kind) {
    if (kind == BoundKind::Upper) {
        const double a = 2.0 * eta - 1.0;
        return -a / (a * n + 1.0);
    }
    const double leak = 1.0 - eta;
    return -eta / (eta * n + 1.0) + leak / (leak * n + 1.0);
}

// Budget at which the marginal rate of `eta` equals lambda, capped at `cap`.
// Safeguarded Newton iteration in t = ln n.
double invert_marginal(double eta, double lambda, double cap, BoundKind kind) {
    if (marginal_unchecked(eta, cap, kind) >= lambda) return cap;
    const double floor = std::max(kMinBudget, cap * 1e-280);
    if (marginal_unchecked(eta, floor, kind) <= lambda) return 0.0;

    double lo = std::log(floor);  // f(lo) > 0
    double hi = std::log(cap);    // f(hi) < 0
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double n = std::exp(t);
        const double f = marginal_unchecked(eta, n, kind) - lambda;
        if (f == 0.0) return n;
        if (f > 0.0) lo = t;
        else hi = t;
        const double slope = marginal_log_slope(eta, n, kind);
        double next = t - f / slope;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - t) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)) ||
            hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
            return std::exp(next);
        }
        t = next;
    }
    return std::exp(t);
}

struct ModeGroup {
    double eta;
    std::size_t first;  // index into the spectrum
    std::size_t count;
};

}  // namespace

BoundKind parse_bound_kind(std::string_view name) {
    if (name == "lower") return BoundKind::Lower;
    if (name == "upper") return BoundKind::Upper;
    throw DomainError("unknown bound kind '" + std::string(name) + "' (expected lower or upper)");
}

const char* bound_kind_name(BoundKind kind) noexcept {
    return kind == BoundKind::Lower ? "lower" : "upper";
}

BoundValue single_mode_bound(double eta, double nbar, BoundKind kind) {
    return kind == BoundKind::Lower ? lower_bound(Transmissivity{eta}, PhotonBudget{nbar})
                                    : upper_bound(Transmissivity{eta}, PhotonBudget{nbar});
}

double marginal_rate(double eta, double nbar, BoundKind kind) {
    require_marginal_domain(eta, nbar);
    return marginal_unchecked(eta, nbar, kind);
}

BoundValue allocation_objective(const ModeSpectrum& etas, const std::vector<double>& budgets,
                                BoundKind kind) {
    if (budgets.size() != etas.size()) {
        throw DomainError("allocation_objective: budget vector length differs from mode count");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < budgets.size(); ++i) {
        total += single_mode_bound(etas[i], budgets[i], kind).nats;
    }
    return {total};
}

Allocation allocate(const ModeSpectrum& etas, double nbar, BoundKind kind, AllocateOptions options) {
    const double total = PhotonBudget{nbar}.value();
    Allocation out;
    out.budgets.assign(etas.size(), 0.0);

    // The spectrum is sorted descending, so usable modes form a prefix and
    // equal transmissivities are adjacent.
    std::vector<ModeGroup> groups;
    for (std::size_t i = 0; i < etas.size() && etas[i] > 0.5; ++i) {
        if (!groups.empty() && groups.back().eta == etas[i]) ++groups.back().count;
        else groups.push_back({etas[i], i, 1});
    }
    if (groups.empty() || total == 0.0) return out;

    if (groups.size() == 1) {
        const auto& g = groups.front();
        const double share = total / static_cast<double>(g.count);
        for (std::size_t j = 0; j < g.count; ++j) out.budgets[g.first + j] = share;
        out.lagrange_multiplier = marginal_unchecked(g.eta, share, kind);
        out.value = allocation_objective(etas, out.budgets, kind);
        return out;
    }

    std::vector<double> per_mode(groups.size());
    auto demand = [&](double lambda) {
        double sum = 0.0;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            per_mode[g] = invert_marginal(groups[g].eta, lambda, total, kind);
            sum += per_mode[g] * static_cast<double>(groups[g].count);
        }
        return sum;
    };

    // demand(lambda_lo) >= total: the weakest mode alone would take everything.
    // demand(lambda_hi) < total: every mode is held below total * 1e-12.
    double lambda_lo = std::numeric_limits<double>::infinity();
    double lambda_hi = 0.0;
    for (const auto& g : groups) {
        lambda_lo = std::min(lambda_lo, marginal_unchecked(g.eta, total, kind));
        lambda_hi = std::max(lambda_hi, marginal_unchecked(g.eta, total * 1e-12, kind));
    }

    double lambda = lambda_lo;
    double sum = demand(lambda);
    int it = 0;
    while (std::abs(sum - total) > options.tol * total) {
        if (it == options.max_iterations) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "allocate: no convergence after " << it << " iterations (lambda in [" << lambda_lo
                << ", " << lambda_hi << "], allocated " << sum << " of " << total << ")";
            throw NumericalError(msg.str());
        }
        const double mid = std::sqrt(lambda_lo * lambda_hi);
        if (!(mid > lambda_lo && mid < lambda_hi)) {
            // Bracket exhausted at double precision; take the better endpoint.
            const double s_lo = demand(lambda_lo);
            const double s_hi = demand(lambda_hi);
            if (std::abs(s_lo - total) <= std::abs(s_hi - total)) {
                lambda = lambda_lo;
                sum = s_lo;
            } else {
                lambda = lambda_hi;
                sum = s_hi;
            }
            if (std::abs(sum - total) > 1e3 * options.tol * total) {
                std::ostringstream msg;
                msg.precision(17);
                msg << "allocate: multiplier bracket collapsed at lambda = " << lambda
                    << " with allocated " << sum << " of " << total;
                throw NumericalError(msg.str());
            }
            demand(lambda);
            break;
        }
        lambda = mid;
        sum = demand(lambda);
        if (sum > total) lambda_lo = lambda;
        else lambda_hi = lambda;
        ++it;
    }

    // Spread the residual mismatch proportionally so budgets sum to nbar.
    const double scale = sum > 0.0 ? total / sum : 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (std::size_t j = 0; j < groups[g].count; ++j) {
            out.budgets[groups[g].first + j] = per_mode[g] * scale;
        }
    }
    out.lagrange_multiplier = lambda;
    out.iterations = it;
    out.value = allocation_objective(etas, out.budgets, kind);
    return out;
}

BoundValue multi_mode_bound(const ModeSpectrum& etas, double nbar, BoundKind kind) {
    return allocate(etas, nbar, kind).value;
}

Allocation allocate_bruteforce(const ModeSpectrum& etas, double nbar, BoundKind kind,
                               double grid_step) {
    const std::size_t m = etas.size();
    if (m > 4) throw DomainError("allocate_bruteforce: at most 4 modes supported");
    if (!(grid_step > 0.0 && grid_step <= 1.0)) {
        throw DomainError("allocate_bruteforce: grid_step must lie in (0, 1]");
    }
    const double total = PhotonBudget{nbar}.value();
    const auto steps = static_cast<std::size_t>(std::llround(1.0 / grid_step));

    // table[i][j] = B(eta_i, nbar * j / steps)
    std::vector<std::vector<double>> table(m, std::vector<double>(steps + 1));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= steps; ++j)
            table[i][j] = single_mode_bound(etas[i], total * static_cast<double>(j) /
                                                         static_cast<double>(steps),
                                            kind)
                              .nats;

    std::vector<std::size_t> idx(m, 0);
    std::vector<std::size_t> best_idx;
    double best = -std::numeric_limits<double>::infinity();

    // Lexicographic enumeration of compositions of `steps` into m parts; the
    // last part is determined by the others. Strict improvement keeps the
    // lexicographically smallest argmax.
    auto visit = [&](auto&& self, std::size_t pos, std::size_t remaining, double partial) -> void {
        if (pos + 1 == m) {
            idx[pos] = remaining;
            const double v = partial + table[pos][remaining];
            if (v > best) {
                best = v;
                best_idx = idx;
            }
            return;
        }
        for (std::size_t j = 0; j <= remaining; ++j) {
            idx[pos] = j;
            self(self, pos + 1, remaining - j, partial + table[pos][j]);
        }
    };
    visit(visit, 0, steps, 0.0);

    Allocation out;
    out.budgets.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        out.budgets[i] = total * static_cast<double>(best_idx[i]) / static_cast<double>(steps);
    }
    out.value = {best};
    return out;
}

double asymptotic_multimode(const ModeSpectrum& etas, double nbar) {
    if (!(etas.max() > 0.5)) {
        throw DomainError("asymptotic_multimode: requires some eta > 1/2");
    }
    if (!(nbar > 0.0) || !std::isfinite(nbar)) {
        throw DomainError("asymptotic_multimode: requires finite nbar > 0");
    }
    return (2.0 * etas.max() - 1.0) * nbar * std::log(1.0 / nbar);
}

}  // namespace privcap
