#pragma once

#include <cstddef>

namespace dupdel {

/// ln Gamma(x) for x > 0; throws std::domain_error otherwise.
/// Backed by std::lgamma (glibc: a few ulp).
double log_gamma(double x);

/// Gauss hypergeometric series 2F1(a, b; c; z) for 0 <= z < 1.
///
/// Sums terms (a)_n (b)_n / ((c)_n n!) z^n until a term drops below 1e-16 of
/// the running sum while terms are shrinking. No analytic continuation.
/// Throws std::domain_error for z outside [0, 1) or c a non-positive integer,
/// NonConvergence if `max_terms` is exhausted or the sum overflows.
double hypergeometric_2f1(double a, double b, double c, double z,
                          std::size_t max_terms = 1'000'000);

}  // namespace dupdel
