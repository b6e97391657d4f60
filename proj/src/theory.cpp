#include "dupdel/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "dupdel/errors.hpp"
#include "dupdel/quadrature.hpp"
#include "dupdel/special_functions.hpp"

namespace dupdel {

std::string_view to_string(Regime r) noexcept {
    switch (r) {
        case Regime::Subcritical: return "subcritical";
        case Regime::Critical: return "critical";
        case Regime::Supercritical: return "supercritical";
    }
    return "?";
}

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::Quadrature: return "quadrature";
        case Method::Hypergeometric: return "hypergeometric";
        case Method::BackwardRecursion: return "backward_recursion";
        case Method::FixedPoint: return "fixed_point";
    }
    return "?";
}

RegimeParams regime_params(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("p must lie strictly between 0 and 1, got " + std::to_string(p));
    }
    RegimeParams rp{};
    rp.p = p;
    rp.gamma = (1.0 - p) / p;
    if (p < 0.5) {
        rp.regime = Regime::Subcritical;
        rp.beta = p / (2.0 * p - 1.0);
    } else if (p > 0.5) {
        rp.regime = Regime::Supercritical;
        rp.beta = p / (2.0 * p - 1.0);
    } else {
        rp.regime = Regime::Critical;
        rp.beta = std::numeric_limits<double>::quiet_NaN();
    }
    return rp;
}

double DegreeDistribution::d(std::size_t k) const {
    if (k == 0) return d0;
    if (k > values.size()) {
        throw std::out_of_range("d_" + std::to_string(k) + " is beyond the truncation K = " +
                                std::to_string(values.size()));
    }
    return values[k - 1];
}

CliqueSizeDistribution clique_sizes(const DegreeDistribution& d) {
    CliqueSizeDistribution c;
    c.p = d.p;
    c.values.resize(d.values.size());
    for (std::size_t k = 1; k <= d.values.size(); ++k) {
        c.values[k - 1] = d.values[k - 1] / static_cast<double>(k);
    }
    return c;
}

namespace {

constexpr double kCriticalBand = 1e-12;

bool near_critical(double p) { return std::abs(p - 0.5) <= kCriticalBand; }

void require_truncation(std::size_t K) {
    if (K == 0) throw std::invalid_argument("truncation K must be positive");
}

void require_tolerance(double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

// d_k = prefactor(k) * sum_i exp(log_base_i + power(k) * log_ratio_i), where
// the sum runs over the nodes of a Gauss-Jacobi rule for the regime's weight.
class EntryIntegral {
public:
    explicit EntryIntegral(const RegimeParams& rp) : rp_(rp), tables_(kNodeLadder.size()) {}

    double value(std::size_t rung, std::size_t k) {
        const Table& t = table(rung);
        const bool critical = rp_.regime == Regime::Critical;
        const double power = critical ? static_cast<double>(k) - 1.0 : static_cast<double>(k);
        double sum = 0.0;
        for (std::size_t i = 0; i < t.log_base.size(); ++i) {
            const double e = t.log_base[i] + power * t.log_ratio[i];
            if (e > -745.0) sum += std::exp(e);
        }
        switch (rp_.regime) {
            case Regime::Supercritical: return (rp_.beta - 1.0) * sum;
            case Regime::Subcritical: return (1.0 - rp_.beta) * sum;
            case Regime::Critical: return static_cast<double>(k) * sum;
        }
        return sum;
    }

private:
    struct Table {
        std::vector<double> log_base;
        std::vector<double> log_ratio;
    };

    const Table& table(std::size_t rung) {
        if (!tables_[rung]) tables_[rung] = build(kNodeLadder[rung]);
        return *tables_[rung];
    }

    Table build(std::size_t n) const {
        double left = 0.0;
        if (rp_.regime == Regime::Supercritical) left = rp_.beta - 1.0;
        if (rp_.regime == Regime::Subcritical) left = -rp_.beta - 1.0;
        const QuadratureRule rule = gauss_jacobi_unit(n, left, 0.0);
        Table t;
        t.log_base.resize(n);
        t.log_ratio.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = rule.nodes[i];
            const double lw = std::log(rule.weights[i]);
            switch (rp_.regime) {
                case Regime::Supercritical:
                    t.log_base[i] = lw;
                    t.log_ratio[i] = std::log1p(-x) - std::log1p(-rp_.gamma * x);
                    break;
                case Regime::Subcritical:
                    t.log_base[i] = lw;
                    t.log_ratio[i] = std::log1p(-x) - std::log(rp_.gamma - x);
                    break;
                case Regime::Critical:
                    // exp(-s/(1-s)) is flat zero next to s = 1; clamp it there.
                    t.log_base[i] = x >= 1.0 - 1e-12 ? -std::numeric_limits<double>::infinity()
                                                     : lw - x / (1.0 - x);
                    t.log_ratio[i] = std::log(x);
                    break;
            }
        }
        return t;
    }

    RegimeParams rp_;
    std::vector<std::optional<Table>> tables_;
};

bool within_tolerance(double lo, double hi, double tol) {
    return std::isfinite(hi) && std::abs(hi - lo) <= tol * std::min(1.0, std::abs(hi));
}

[[noreturn]] void throw_budget(std::size_t k, double lo, double hi) {
    throw NonConvergence("quadrature did not converge within " +
                         std::to_string(kNodeLadder.back()) + " nodes; worst k = " +
                         std::to_string(k) + " (estimates " + std::to_string(lo) + " vs " +
                         std::to_string(hi) + ")");
}

// d_1..d_last. Entries are grouped by starting rung; each group is verified at
// its smallest and largest k against the next rung up and promoted until the
// change is within tol. Later groups never use fewer nodes than earlier ones.
std::vector<double> quadrature_values(const RegimeParams& rp, std::size_t last, double tol) {
    EntryIntegral integral(rp);
    std::vector<double> out(last);
    const std::size_t top = kNodeLadder.size() - 1;
    std::size_t floor_rung = 0;
    std::size_t k = 1;
    while (k <= last) {
        std::size_t rung = std::max(floor_rung, starting_rung(k));
        std::size_t k_end = k;
        while (k_end < last && starting_rung(k_end + 1) <= rung) ++k_end;
        for (;;) {
            if (rung >= top) {
                throw_budget(k_end, integral.value(top - 1, k_end), integral.value(top, k_end));
            }
            bool ok = true;
            for (const std::size_t probe : {k, k_end}) {
                const double lo = integral.value(rung, probe);
                const double hi = integral.value(rung + 1, probe);
                if (!within_tolerance(lo, hi, tol)) ok = false;
            }
            if (ok) break;
            ++rung;
        }
        for (std::size_t j = k; j <= k_end; ++j) out[j - 1] = integral.value(rung, j);
        floor_rung = rung;
        k = k_end + 1;
    }
    return out;
}

DegreeDistribution assemble(const RegimeParams& rp, std::vector<double> values_to_next, double tol,
                            Method method) {
    // values_to_next holds d_1..d_{K+1}; d_{K+1} only feeds the tail estimate.
    DegreeDistribution dist;
    dist.p = rp.p;
    dist.d0 = rp.gamma;
    dist.tol = tol;
    dist.method = method;
    const std::size_t K = values_to_next.size() - 1;
    const double next = values_to_next.back();
    values_to_next.pop_back();
    dist.values = std::move(values_to_next);
    dist.tail_mass = -partial_sum_correction(rp.p, K, dist.values.back(), next);
    return dist;
}

}  // namespace

double recursion_residual(const DegreeDistribution& d, std::size_t k) {
    const std::size_t K = d.truncation();
    if (k < 1 || k + 1 > K) {
        throw std::out_of_range("recursion residual needs 1 <= k <= K - 1");
    }
    const double p = d.p;
    const double kk = static_cast<double>(k);
    return (kk + p) * d.d(k) - p * kk * d.d(k - 1) - (1.0 - p) * kk * d.d(k + 1);
}

DegreeDistribution degree_dist_supercritical(double p, std::size_t K, double tol) {
    const RegimeParams rp = regime_params(p);
    if (rp.regime != Regime::Supercritical) {
        throw std::invalid_argument("degree_dist_supercritical needs p > 1/2");
    }
    require_truncation(K);
    require_tolerance(tol);
    return assemble(rp, quadrature_values(rp, K + 1, tol), tol, Method::Quadrature);
}

DegreeDistribution degree_dist_subcritical(double p, std::size_t K, double tol) {
    const RegimeParams rp = regime_params(p);
    if (rp.regime != Regime::Subcritical) {
        throw std::invalid_argument("degree_dist_subcritical needs p < 1/2");
    }
    require_truncation(K);
    require_tolerance(tol);
    return assemble(rp, quadrature_values(rp, K + 1, tol), tol, Method::Quadrature);
}

DegreeDistribution degree_dist_critical(std::size_t K, double tol) {
    const RegimeParams rp = regime_params(0.5);
    require_truncation(K);
    require_tolerance(tol);
    return assemble(rp, quadrature_values(rp, K + 1, tol), tol, Method::Quadrature);
}

DegreeDistribution degree_distribution(double p, std::size_t K, double tol) {
    if (near_critical(p)) return degree_dist_critical(K, tol);
    return p > 0.5 ? degree_dist_supercritical(p, K, tol) : degree_dist_subcritical(p, K, tol);
}

double quadrature_degree_entry(double p, std::size_t k, double tol) {
    RegimeParams rp = regime_params(near_critical(p) ? 0.5 : p);
    require_tolerance(tol);
    if (rp.regime == Regime::Critical && k == 0) return 1.0;  // the k-weighted form degenerates
    EntryIntegral integral(rp);
    for (std::size_t rung = starting_rung(k); rung + 1 < kNodeLadder.size(); ++rung) {
        const double lo = integral.value(rung, k);
        const double hi = integral.value(rung + 1, k);
        if (within_tolerance(lo, hi, tol)) return lo;
    }
    const std::size_t top = kNodeLadder.size() - 1;
    throw_budget(k, integral.value(top - 1, k), integral.value(top, k));
}

double hypergeometric_degree_entry(double p, std::size_t k) {
    const RegimeParams rp = regime_params(p);
    if (rp.regime != Regime::Supercritical) {
        throw std::domain_error("hypergeometric form only applies for p > 1/2");
    }
    const double kk = static_cast<double>(k);
    const double log_prefactor = std::log(rp.gamma) + log_gamma(kk + 1.0) + log_gamma(rp.beta) -
                                 log_gamma(rp.beta + kk + 1.0);
    return std::exp(log_prefactor) *
           hypergeometric_2f1(rp.beta + 1.0, kk + 1.0, rp.beta + kk + 1.0, rp.gamma);
}

DegreeDistribution degree_dist_hypergeometric(double p, std::size_t K) {
    const RegimeParams rp = regime_params(p);
    require_truncation(K);
    std::vector<double> values(K + 1);
    for (std::size_t k = 1; k <= K + 1; ++k) values[k - 1] = hypergeometric_degree_entry(p, k);
    return assemble(rp, std::move(values), 0.0, Method::Hypergeometric);
}

namespace {

// d~_0..d~_{K_ext+1}, normalized to d~_0 = (1 - p) / p.
std::vector<double> backward_pass(double p, std::size_t K_ext) {
    constexpr double kRescaleAbove = 1e250;
    std::vector<double> d(K_ext + 2, 0.0);
    d[K_ext] = 1.0;
    for (std::size_t k = K_ext; k >= 1; --k) {
        const double kk = static_cast<double>(k);
        d[k - 1] = ((kk + p) * d[k] - (1.0 - p) * kk * d[k + 1]) / (p * kk);
        if (std::abs(d[k - 1]) > kRescaleAbove) {
            for (std::size_t j = k - 1; j < d.size(); ++j) d[j] /= kRescaleAbove;
        }
    }
    const double scale = ((1.0 - p) / p) / d[0];
    for (double& v : d) v *= scale;
    return d;
}

}  // namespace

DegreeDistribution backward_recursion_oracle(double p, std::size_t K, std::size_t K_ext) {
    const RegimeParams rp = regime_params(p);
    require_truncation(K);
    if (K_ext <= K) throw std::invalid_argument("backward recursion needs K_ext > K");
    std::vector<double> d = backward_pass(p, K_ext);
    std::vector<double> values(d.begin() + 1, d.begin() + static_cast<std::ptrdiff_t>(K) + 2);
    return assemble(rp, std::move(values), 0.0, Method::BackwardRecursion);
}

DegreeDistribution degree_dist_backward(double p, std::size_t K) {
    constexpr std::size_t kMaxExtension = std::size_t{1} << 26;
    regime_params(p);
    require_truncation(K);
    std::size_t K_ext = 2 * K + 100;
    DegreeDistribution current = backward_recursion_oracle(p, K, K_ext);
    while (K_ext < kMaxExtension) {
        K_ext *= 2;
        DegreeDistribution refined = backward_recursion_oracle(p, K, K_ext);
        bool stable = true;
        for (std::size_t i = 0; i < K && stable; ++i) {
            const double a = current.values[i];
            const double b = refined.values[i];
            stable = std::abs(a - b) <= 1e-12 * std::abs(b) + 1e-300;
        }
        current = std::move(refined);
        if (stable) return current;
    }
    throw NonConvergence("backward recursion not stable up to K_ext = " + std::to_string(K_ext));
}

LowerBoundIteration::LowerBoundIteration(double p, std::size_t K)
    : p_(regime_params(p).p), a_(K + 2, 0.0), next_(K + 2, 0.0) {
    require_truncation(K);
}

void LowerBoundIteration::advance() {
    const std::size_t K = a_.size() - 2;
    const double p = p_;
    next_[1] = (1.0 - p) * (1.0 + 2.0 * a_[2]) / (1.0 + p);
    for (std::size_t k = 2; k <= K; ++k) {
        const double kk = static_cast<double>(k);
        next_[k] = (p * (kk - 1.0) * a_[k - 1] + (1.0 - p) * (kk + 1.0) * a_[k + 1]) / (kk + p);
    }
    std::swap(a_, next_);
    ++iteration_;
}

CliqueSizeDistribution lower_bound_fixed_point(double p, std::size_t K, std::size_t iterations) {
    LowerBoundIteration it(p, K);
    for (std::size_t j = 0; j < iterations; ++j) it.advance();
    return {p, it.values()};
}

double asymptotic_supercritical(double p, double k) {
    const RegimeParams rp = regime_params(p);
    if (rp.regime != Regime::Supercritical) throw std::domain_error("needs p > 1/2");
    if (!(k > 0.0)) throw std::domain_error("needs k > 0");
    const double b = rp.beta;
    return std::exp(std::log(rp.gamma) + b * std::log(b) + log_gamma(b + 1.0) - b * std::log(k));
}

double asymptotic_subcritical(double p, double k) {
    const RegimeParams rp = regime_params(p);
    if (rp.regime != Regime::Subcritical) throw std::domain_error("needs p < 1/2");
    if (!(k > 0.0)) throw std::domain_error("needs k > 0");
    const double b = rp.beta;
    return std::exp(-std::log(-b) + (1.0 - b) * std::log(1.0 - b) + log_gamma(1.0 - b) -
                    k * std::log(rp.gamma) + b * std::log(k));
}

double asymptotic_critical(double k) {
    if (!(k > 0.0)) throw std::domain_error("needs k > 0");
    return std::exp(0.5 * std::log(std::numbers::e * std::numbers::pi) + 0.25 * std::log(k) -
                    2.0 * std::sqrt(k));
}

double asymptotic(double p, double k) {
    if (near_critical(p)) return asymptotic_critical(k);
    return p > 0.5 ? asymptotic_supercritical(p, k) : asymptotic_subcritical(p, k);
}

double partial_sum_correction(double p, std::size_t n, double d_n, double d_next) {
    const double nn = static_cast<double>(n);
    return (-p * (nn + 1.0) * d_n + (1.0 - p) * nn * d_next) / (1.0 - p);
}

double partial_sum_identity_residual(const DegreeDistribution& d, std::size_t n) {
    if (n < 1 || n + 1 > d.truncation()) {
        throw std::out_of_range("partial-sum identity needs 1 <= n <= K - 1");
    }
    double sum = 0.0;
    for (std::size_t k = 1; k <= n; ++k) sum += d.d(k);
    return sum - 1.0 - partial_sum_correction(d.p, n, d.d(n), d.d(n + 1));
}

std::vector<double> partial_sum_identity_residuals(const DegreeDistribution& d) {
    const std::size_t K = d.truncation();
    std::vector<double> out;
    if (K < 2) return out;
    out.reserve(K - 1);
    double sum = 0.0;
    for (std::size_t n = 1; n + 1 <= K; ++n) {
        sum += d.d(n);
        out.push_back(sum - 1.0 - partial_sum_correction(d.p, n, d.d(n), d.d(n + 1)));
    }
    return out;
}

double tail_bound(double p, std::size_t K) {
    const RegimeParams rp = regime_params(near_critical(p) ? 0.5 : p);
    const double kk = static_cast<double>(K);
    switch (rp.regime) {
        case Regime::Supercritical: {
            // C ∫_K^∞ k^-beta dk
            const double b = rp.beta;
            const double log_c = std::log(rp.gamma) + b * std::log(b) + log_gamma(b + 1.0);
            return std::exp(log_c + (1.0 - b) * std::log(kk) - std::log(b - 1.0));
        }
        case Regime::Subcritical: {
            // Geometric series from K + 1 with ratio 1/gamma; k^beta is decreasing.
            return asymptotic_subcritical(p, kk + 1.0) / (1.0 - 1.0 / rp.gamma);
        }
        case Regime::Critical: {
            // (e pi)^(1/2) ∫_K^∞ k^(1/4) e^(-2 sqrt k) dk = (e pi)^(1/2) 2^(-3/2) Γ(5/2, 2 sqrt K)
            const double x = 2.0 * std::sqrt(kk);
            const double upper_gamma = std::exp(-x) * std::sqrt(x) * (x + 1.5) +
                                       0.75 * std::sqrt(std::numbers::pi) * std::erfc(std::sqrt(x));
            return std::sqrt(std::numbers::e * std::numbers::pi) * std::pow(2.0, -1.5) * upper_gamma;
        }
    }
    return 0.0;
}

std::size_t choose_truncation(double p, double tol) {
    require_tolerance(tol);
    constexpr std::size_t kMinTruncation = 16;
    if (tail_bound(p, kMinTruncation) <= tol) return kMinTruncation;
    std::size_t lo = kMinTruncation;  // invariant: tail_bound(lo) > tol
    std::size_t hi = 2 * lo;
    while (hi < kMaxTruncation && tail_bound(p, hi) > tol) {
        lo = hi;
        hi *= 2;
    }
    if (hi >= kMaxTruncation) {
        hi = kMaxTruncation;
        if (tail_bound(p, hi) > tol) return kMaxTruncation;
    }
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (tail_bound(p, mid) > tol) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

}  // namespace dupdel
