#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace dupdel {

/// Nodes ascending in (0, 1), with matching positive weights.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss rule for  ∫₀¹ f(x) x^left (1-x)^right dx,  left, right > -1.
///
/// Nodes are eigenvalues of the Jacobi matrix of the weight (Golub-Welsch),
/// refined by Newton steps on the orthonormal polynomial of degree n. Weights
/// are Christoffel numbers 1 / sum_j q_j(x)^2, which avoids normalization
/// constants that overflow for large exponents.
QuadratureRule gauss_jacobi_unit(std::size_t n, double left, double right);

/// Node counts tried by the theory quadrature, growing by ~1.5x.
inline constexpr std::array<std::size_t, 11> kNodeLadder = {64,  96,  144,  216,  324, 486,
                                                            729, 1094, 1641, 2462, 3693};

/// Index of the first ladder rung with at least max(64, 2*ceil(sqrt(k)) + 64) nodes.
std::size_t starting_rung(std::size_t k);

}  // namespace dupdel
