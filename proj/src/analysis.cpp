#include "dupdel/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <string>

#include "dupdel/errors.hpp"

namespace dupdel {

double EmpiricalDistribution::fraction(std::size_t k) const {
    auto it = std::lower_bound(fractions.begin(), fractions.end(), k,
                               [](const auto& entry, std::size_t key) { return entry.first < key; });
    return it != fractions.end() && it->first == k ? it->second : 0.0;
}

Count EmpiricalDistribution::vertices_at(std::size_t k) const {
    return static_cast<Count>(std::llround(fraction(k) * static_cast<double>(n_vertices)));
}

EmpiricalDistribution empirical_degree_distribution(const Snapshot& snap) {
    EmpiricalDistribution e;
    e.m = snap.m;
    e.n_vertices = snap.n_vertices;
    const auto n = static_cast<double>(snap.n_vertices);
    for (const auto& [k, c] : snap.counts) {
        if (c == 0) continue;
        e.fractions.emplace_back(k, static_cast<double>(k * c) / n);
    }
    return e;
}

EmpiricalDistribution empirical_degree_distribution(const CliqueState& state) {
    return empirical_degree_distribution(state.snapshot());
}

std::map<std::size_t, double> expected_next_clique_counts(const CliqueState& state, double p) {
    const auto n = static_cast<double>(state.num_vertices());
    const std::size_t top = state.max_size() + 1;
    auto c = [&](std::size_t k) { return static_cast<double>(state.count(k)); };
    std::map<std::size_t, double> out;
    out[1] = c(1) * (1.0 - 1.0 / n) + (1.0 - p) + 2.0 * (1.0 - p) * c(2) / n;
    for (std::size_t k = 2; k <= top; ++k) {
        const double kk = static_cast<double>(k);
        out[k] = c(k) * (1.0 - kk / n) + p * (kk - 1.0) * c(k - 1) / n +
                 (1.0 - p) * (kk + 1.0) * c(k + 1) / n;
    }
    return out;
}

LumpedDistribution lump(const EmpiricalDistribution& e, std::size_t K) {
    LumpedDistribution out(K + 1, 0.0);
    for (const auto& [k, f] : e.fractions) {
        out[std::min(k, K + 1) - 1] += f;
    }
    return out;
}

LumpedDistribution lump(const DegreeDistribution& d) {
    LumpedDistribution out(d.values);
    out.push_back(d.tail_mass);
    return out;
}

double total_variation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("total variation needs equally lumped distributions");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
    return 0.5 * sum;
}

double total_variation(const EmpiricalDistribution& e, const DegreeDistribution& d) {
    return total_variation(lump(e, d.truncation()), lump(d));
}

double total_variation(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    const std::size_t K = std::max(a.max_size(), b.max_size());
    return total_variation(lump(a, K), lump(b, K));
}

namespace {

constexpr std::size_t kMinFitPoints = 5;

// Minus the OLS slope of y on x.
double negative_slope(const std::vector<std::pair<double, double>>& pts, FitWindow w) {
    if (pts.size() < kMinFitPoints) {
        throw InsufficientSupport("fit window [" + std::to_string(w.k_min) + ", " +
                                  std::to_string(w.k_max) + "] has " + std::to_string(pts.size()) +
                                  " occupied points, need " + std::to_string(kMinFitPoints));
    }
    const auto n = static_cast<double>(pts.size());
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (const auto& [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    return -sxy / sxx;
}

template <class Mass>
std::vector<std::pair<double, double>> collect(FitWindow w, std::size_t limit, Mass mass, bool log_x) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = std::max<std::size_t>(w.k_min, 1); k <= std::min(w.k_max, limit); ++k) {
        const double f = mass(k);
        if (f > 0.0) {
            const double x = log_x ? std::log(static_cast<double>(k)) : static_cast<double>(k);
            pts.emplace_back(x, std::log(f));
        }
    }
    return pts;
}

}  // namespace

double fit_power_law_exponent(const EmpiricalDistribution& e, FitWindow w) {
    return negative_slope(collect(w, e.max_size(), [&](std::size_t k) { return e.fraction(k); }, true), w);
}

double fit_power_law_exponent(const DegreeDistribution& d, FitWindow w) {
    return negative_slope(collect(w, d.truncation(), [&](std::size_t k) { return d.d(k); }, true), w);
}

double fit_exponential_rate(const EmpiricalDistribution& e, FitWindow w) {
    return negative_slope(collect(w, e.max_size(), [&](std::size_t k) { return e.fraction(k); }, false), w);
}

double fit_exponential_rate(const DegreeDistribution& d, FitWindow w) {
    return negative_slope(collect(w, d.truncation(), [&](std::size_t k) { return d.d(k); }, false), w);
}

namespace {

FitWindow well_populated_window(const EmpiricalDistribution& e, std::size_t k_min) {
    std::size_t k = k_min;
    while (e.vertices_at(k) / k >= kWindowMinCliques) ++k;
    return {k_min, k - 1};
}

}  // namespace

FitWindow default_power_law_window(const EmpiricalDistribution& e) {
    return well_populated_window(e, kDefaultExponentMin);
}

FitWindow default_exponential_window(const EmpiricalDistribution& e) {
    return well_populated_window(e, kDefaultRateMin);
}

double growth_rate_check(const CliqueState& state, double p) {
    return growth_rate_check(state.snapshot(), p);
}

double growth_rate_check(const Snapshot& snap, double p) {
    if (snap.m == 0) throw std::invalid_argument("growth ratio is undefined at m = 0");
    return static_cast<double>(snap.n_vertices) / (p * static_cast<double>(snap.m));
}

ComparisonReport compare(const Snapshot& snap, const DegreeDistribution& theory) {
    const EmpiricalDistribution e = empirical_degree_distribution(snap);
    ComparisonReport r;
    r.m = snap.m;
    r.tv_distance = total_variation(e, theory);
    r.growth_ratio = growth_rate_check(snap, theory.p);
    const RegimeParams rp = regime_params(theory.p);
    try {
        if (rp.regime == Regime::Supercritical) {
            r.fitted_exponent = fit_power_law_exponent(e, default_power_law_window(e));
        } else if (rp.regime == Regime::Subcritical) {
            r.fitted_rate = fit_exponential_rate(e, default_exponential_window(e));
        }
    } catch (const InsufficientSupport&) {
        // left empty
    }
    const std::size_t top = std::min(theory.truncation(), e.max_size());
    r.per_k_errors.reserve(top);
    for (std::size_t k = 1; k <= top; ++k) r.per_k_errors.emplace_back(k, e.fraction(k) - theory.d(k));
    return r;
}

namespace {

std::vector<ComparisonReport> trace_with(const ProcessParams& params, Rng& rng,
                                         const DegreeDistribution& theory,
                                         std::span<const std::uint64_t> checkpoints) {
    if (checkpoints.empty()) throw std::invalid_argument("convergence trace needs checkpoints");
    if (checkpoints.front() == 0) throw std::invalid_argument("convergence trace checkpoints must be >= 1");
    std::vector<ComparisonReport> out;
    out.reserve(checkpoints.size());
    simulate(params, rng, checkpoints.back(), checkpoints,
             [&](const Snapshot& snap) { out.push_back(compare(snap, theory)); });
    return out;
}

}  // namespace

std::vector<ComparisonReport> convergence_trace(const ProcessParams& params,
                                                const DegreeDistribution& theory,
                                                std::span<const std::uint64_t> checkpoints) {
    Rng rng(params.seed());
    return trace_with(params, rng, theory, checkpoints);
}

std::vector<std::vector<ComparisonReport>> replica_traces(const ProcessParams& params,
                                                          const DegreeDistribution& theory,
                                                          std::span<const std::uint64_t> checkpoints,
                                                          std::size_t replicas) {
    std::vector<std::future<std::vector<ComparisonReport>>> jobs;
    jobs.reserve(replicas);
    for (std::size_t i = 0; i < replicas; ++i) {
        jobs.push_back(std::async(std::launch::async, [&params, &theory, checkpoints, i] {
            Rng rng = Rng::for_replica(params.seed(), i);
            return trace_with(params, rng, theory, checkpoints);
        }));
    }
    std::vector<std::vector<ComparisonReport>> out;
    out.reserve(replicas);
    for (auto& job : jobs) out.push_back(job.get());
    return out;
}

}  // namespace dupdel
