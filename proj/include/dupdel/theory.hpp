#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace dupdel {

enum class Regime { Subcritical, Critical, Supercritical };

std::string_view to_string(Regime r) noexcept;

/// p with the derived beta = p / (2p - 1) and gamma = (1 - p) / p.
struct RegimeParams {
    double p;
    double beta;   // NaN at p = 1/2
    double gamma;
    Regime regime;
};

/// Throws std::invalid_argument unless 0 < p < 1. Regime is decided by an
/// exact comparison with 1/2.
RegimeParams regime_params(double p);

enum class Method { Quadrature, Hypergeometric, BackwardRecursion, FixedPoint };

std::string_view to_string(Method m) noexcept;

/// Truncated limiting degree distribution d_1..d_K.
///
/// d0 = (1 - p) / p is the boundary value of the recursion, not a mass.
/// tail_mass estimates sum_{k > K} d_k through the partial-sum identity
/// evaluated at n = K.
struct DegreeDistribution {
    double p = 0.5;
    std::vector<double> values;  // values[k - 1] = d_k
    double d0 = 1.0;
    double tail_mass = 0.0;
    double tol = 0.0;  // requested per-entry tolerance
    Method method = Method::Quadrature;

    std::size_t truncation() const noexcept { return values.size(); }
    /// d_k for 0 <= k <= K (k = 0 gives d0); throws std::out_of_range beyond.
    double d(std::size_t k) const;
};

/// Clique-size sequence c_k = d_k / k.
struct CliqueSizeDistribution {
    double p = 0.5;
    std::vector<double> values;  // values[k - 1] = c_k

    std::size_t truncation() const noexcept { return values.size(); }
    double c(std::size_t k) const { return values.at(k - 1); }
};

CliqueSizeDistribution clique_sizes(const DegreeDistribution& d);

/// Default per-entry tolerance of the quadrature routes.
inline constexpr double kDefaultTolerance = 1e-10;
/// Default normalization tolerance for the truncation rule.
inline constexpr double kDefaultNormalizationTolerance = 1e-6;
inline constexpr std::size_t kMaxTruncation = 100'000;

// ---------------------------------------------------------------------------
// Exact values

/// (k + p) d_k - p k d_{k-1} - (1 - p) k d_{k+1}, for 1 <= k <= K - 1.
double recursion_residual(const DegreeDistribution& d, std::size_t k);

/// Supercritical (1/2 < p < 1) by Gauss-Jacobi quadrature of
///   d_k = (beta - 1) ∫₀¹ x^(beta-1) ((1 - x) / (1 - gamma x))^k dx,
/// the image of gamma ∫₀¹ t^k (1-t)^(beta-1) (1 - gamma t)^-(beta+1) dt under
/// x = (1 - t) / (1 - gamma t). The power of x is the quadrature weight, so the
/// remaining factor is bounded by 1 and never overflows, even next to p = 1/2.
/// Throws NonConvergence (naming the worst k) if the node budget runs out.
DegreeDistribution degree_dist_supercritical(double p, std::size_t K, double tol = kDefaultTolerance);

/// Subcritical (0 < p < 1/2), from
///   d_k = (1 - beta) ∫₀¹ x^(-beta-1) ((1 - x) / (gamma - x))^k dx,
/// the image of gamma^-k ∫₀¹ t^k (1-t)^(-1-beta) (1 - t/gamma)^-(1-beta) dt under
/// x = (1 - t) / (1 - t/gamma). Evaluated in log space: no gamma^-k underflow
/// until d_k itself leaves the double range.
DegreeDistribution degree_dist_subcritical(double p, std::size_t K, double tol = kDefaultTolerance);

/// p = 1/2:  d_k = k ∫₀¹ s^(k-1) exp(-s / (1 - s)) ds  by Gauss-Legendre.
DegreeDistribution degree_dist_critical(std::size_t K, double tol = kDefaultTolerance);

/// Regime dispatch; |p - 1/2| <= 1e-12 counts as critical.
DegreeDistribution degree_distribution(double p, std::size_t K, double tol = kDefaultTolerance);

/// One quadrature entry d_k (k = 0 reproduces d0 in the off-critical regimes).
double quadrature_degree_entry(double p, std::size_t k, double tol = kDefaultTolerance);

/// Supercritical only: d_k = gamma Γ(k+1)Γ(beta)/Γ(beta+k+1) 2F1(beta+1, k+1; beta+k+1; gamma).
double hypergeometric_degree_entry(double p, std::size_t k);
DegreeDistribution degree_dist_hypergeometric(double p, std::size_t K);

/// Miller backward recursion from d~_{K_ext+1} = 0, d~_{K_ext} = 1, rescaled so
/// d~_0 = (1 - p) / p. The bounded solution is the minimal one, so this is the
/// stable direction. Requires K_ext > K.
DegreeDistribution backward_recursion_oracle(double p, std::size_t K, std::size_t K_ext);

/// Backward recursion with K_ext = 2K + 100, doubled until entries 1..K agree to
/// 1e-12 (relative) between successive passes.
DegreeDistribution degree_dist_backward(double p, std::size_t K);

/// Fixed-point iterates a^(j) of the clique-size recursion started from 0 and
/// truncated to zero beyond K. Entrywise non-decreasing in j.
class LowerBoundIteration {
public:
    LowerBoundIteration(double p, std::size_t K);

    void advance();
    std::size_t iteration() const noexcept { return iteration_; }
    /// a_k for k = 1..K (index k - 1).
    std::vector<double> values() const { return {a_.begin() + 1, a_.end() - 1}; }

private:
    double p_;
    std::vector<double> a_;     // [0] and [K+1] stay zero
    std::vector<double> next_;
    std::size_t iteration_ = 0;
};

CliqueSizeDistribution lower_bound_fixed_point(double p, std::size_t K, std::size_t iterations);

// ---------------------------------------------------------------------------
// Asymptotics, all evaluated in log space

/// gamma beta^beta Γ(beta+1) k^-beta
double asymptotic_supercritical(double p, double k);
/// (-beta)^-1 (1-beta)^(1-beta) Γ(1-beta) gamma^-k k^beta
double asymptotic_subcritical(double p, double k);
/// (e pi)^(1/2) k^(1/4) exp(-2 sqrt(k))
double asymptotic_critical(double k);
double asymptotic(double p, double k);

// ---------------------------------------------------------------------------
// Normalization

/// (1/(1-p)) (-p (n+1) d_n + (1-p) n d_{n+1}); sum_{k<=n} d_k = 1 + this.
double partial_sum_correction(double p, std::size_t n, double d_n, double d_next);

/// sum_{k<=n} d_k - 1 - correction(n), for 1 <= n <= K - 1.
double partial_sum_identity_residual(const DegreeDistribution& d, std::size_t n);

/// The residual at every n = 1..K-1 (index n - 1), in one O(K) pass.
std::vector<double> partial_sum_identity_residuals(const DegreeDistribution& d);

/// Asymptotic-formula bound on sum_{k > K} d_k.
double tail_bound(double p, std::size_t K);

/// Smallest K with tail_bound(p, K) <= tol, capped at kMaxTruncation.
std::size_t choose_truncation(double p, double tol = kDefaultNormalizationTolerance);

}  // namespace dupdel
