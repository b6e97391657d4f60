#include "dupdel/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dupdel/errors.hpp"

namespace dupdel {

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error("log_gamma: argument must be positive and finite");
    }
    return std::lgamma(x);
}

double hypergeometric_2f1(double a, double b, double c, double z, std::size_t max_terms) {
    if (!(z >= 0.0 && z < 1.0)) {
        throw std::domain_error("hypergeometric_2f1: z must lie in [0, 1)");
    }
    if (c <= 0.0 && std::floor(c) == c) {
        throw std::domain_error("hypergeometric_2f1: c must not be a non-positive integer");
    }
    double term = 1.0;
    double sum = 1.0;
    for (std::size_t n = 0; n < max_terms; ++n) {
        const double dn = static_cast<double>(n);
        const double ratio = (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
        term *= ratio;
        sum += term;
        if (!std::isfinite(sum)) {
            throw NonConvergence("hypergeometric_2f1: partial sums overflowed");
        }
        if (std::abs(term) < 1e-16 * std::abs(sum) && std::abs(ratio) < 1.0) return sum;
        if (term == 0.0) return sum;  // terminating series
    }
    throw NonConvergence("hypergeometric_2f1: no convergence within " + std::to_string(max_terms) +
                         " terms (z = " + std::to_string(z) + ")");
}

}  // namespace dupdel
