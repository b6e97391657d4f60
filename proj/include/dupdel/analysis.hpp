#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dupdel/process.hpp"
#include "dupdel/theory.hpp"

namespace dupdel {

/// Degree fractions D_{m,k} / N_m = k C_{m,k} / N_m of one snapshot.
struct EmpiricalDistribution {
    std::uint64_t m = 0;
    Count n_vertices = 0;
    std::vector<std::pair<std::size_t, double>> fractions;  // occupied sizes, ascending

    /// 0 for unoccupied sizes.
    double fraction(std::size_t k) const;
    std::size_t max_size() const noexcept { return fractions.empty() ? 0 : fractions.back().first; }
    /// Number of vertices in k-cliques.
    Count vertices_at(std::size_t k) const;
};

EmpiricalDistribution empirical_degree_distribution(const Snapshot& snap);
EmpiricalDistribution empirical_degree_distribution(const CliqueState& state);

/// One-step conditional expectations E[C_{m+1,k} | state] for k = 1..max+1:
///   k = 1:  C_1 (1 - 1/N) + (1 - p) + 2 (1 - p) C_2 / N
///   k >= 2: C_k (1 - k/N) + p (k-1) C_{k-1} / N + (1 - p) (k+1) C_{k+1} / N
std::map<std::size_t, double> expected_next_clique_counts(const CliqueState& state, double p);

/// Masses of sizes 1..K followed by one bucket for everything beyond K.
using LumpedDistribution = std::vector<double>;

LumpedDistribution lump(const EmpiricalDistribution& e, std::size_t K);
LumpedDistribution lump(const DegreeDistribution& d);

/// (1/2) sum |a_i - b_i| over equally lumped distributions.
double total_variation(std::span<const double> a, std::span<const double> b);
/// Lumped at the theory truncation K.
double total_variation(const EmpiricalDistribution& e, const DegreeDistribution& d);
/// Lumped at the larger of the two supports.
double total_variation(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

struct FitWindow {
    std::size_t k_min;
    std::size_t k_max;
};

/// Minus the OLS slope of ln(fraction_k) on ln k over occupied k in the window.
/// Throws InsufficientSupport with fewer than 5 occupied points.
double fit_power_law_exponent(const EmpiricalDistribution& e, FitWindow w);
double fit_power_law_exponent(const DegreeDistribution& d, FitWindow w);

/// Minus the OLS slope of ln(fraction_k) on k; estimates ln gamma = ln((1-p)/p).
double fit_exponential_rate(const EmpiricalDistribution& e, FitWindow w);
double fit_exponential_rate(const DegreeDistribution& d, FitWindow w);

inline constexpr std::size_t kDefaultExponentMin = 10;
inline constexpr std::size_t kDefaultRateMin = 2;
inline constexpr Count kWindowMinCliques = 30;

/// Fit windows start at the given size and run while every size holds at
/// least kWindowMinCliques cliques.
FitWindow default_power_law_window(const EmpiricalDistribution& e);
FitWindow default_exponential_window(const EmpiricalDistribution& e);

/// N / (p m); throws std::invalid_argument at m = 0.
double growth_rate_check(const CliqueState& state, double p);
double growth_rate_check(const Snapshot& snap, double p);

struct ComparisonReport {
    std::uint64_t m = 0;
    double tv_distance = 0.0;
    std::optional<double> fitted_exponent;  // supercritical runs
    std::optional<double> fitted_rate;      // subcritical runs
    double growth_ratio = 0.0;
    /// empirical - theoretical for k = 1..min(K, largest occupied size).
    std::vector<std::pair<std::size_t, double>> per_k_errors;
};

/// Report for one snapshot (m >= 1). Fits use the default windows and are left
/// empty when the window holds too few points.
ComparisonReport compare(const Snapshot& snap, const DegreeDistribution& theory);

/// One seeded run up to the last checkpoint, one report per checkpoint.
std::vector<ComparisonReport> convergence_trace(const ProcessParams& params,
                                                const DegreeDistribution& theory,
                                                std::span<const std::uint64_t> checkpoints);

/// `replicas` independent runs with Rng::for_replica(params.seed(), i), run on
/// separate threads. Result index = replica index.
std::vector<std::vector<ComparisonReport>> replica_traces(const ProcessParams& params,
                                                          const DegreeDistribution& theory,
                                                          std::span<const std::uint64_t> checkpoints,
                                                          std::size_t replicas);

}  // namespace dupdel
