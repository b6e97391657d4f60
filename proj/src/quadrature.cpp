#include "dupdel/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace dupdel {

namespace {

// Three-term recurrence of the monic orthogonal polynomials for
// x^left (1-x)^right on [0, 1]:  diag[j] = a_j,  off[j] = sqrt(b_j) for j >= 1.
// Obtained from the Jacobi (right, left) coefficients on [-1, 1] by x = (1+y)/2.
void jacobi_matrix(std::size_t n, double left, double right, std::vector<double>& diag,
                   std::vector<double>& off) {
    const double a = right;
    const double b = left;
    const double ab = a + b;
    diag.assign(n + 1, 0.0);
    off.assign(n + 1, 0.0);
    for (std::size_t j = 0; j <= n; ++j) {
        const double dj = static_cast<double>(j);
        double y_diag;
        if (j == 0) {
            y_diag = (b - a) / (ab + 2.0);
        } else {
            const double s = 2.0 * dj + ab;
            y_diag = (b * b - a * a) / (s * (s + 2.0));
        }
        diag[j] = 0.5 * (1.0 + y_diag);
        if (j >= 1) {
            double y_off2;
            if (j == 1) {
                y_off2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
            } else {
                const double s = 2.0 * dj + ab;
                y_off2 = 4.0 * dj * (dj + a) * (dj + b) * (dj + ab) / (s * s * (s + 1.0) * (s - 1.0));
            }
            off[j] = 0.5 * std::sqrt(y_off2);
        }
    }
}

}  // namespace

QuadratureRule gauss_jacobi_unit(std::size_t n, double left, double right) {
    if (n == 0) throw std::invalid_argument("gauss_jacobi_unit: need at least one node");
    if (!(left > -1.0) || !(right > -1.0)) {
        throw std::invalid_argument("gauss_jacobi_unit: exponents must exceed -1");
    }
    std::vector<double> diag, off;
    jacobi_matrix(n, left, right, diag, off);

    Eigen::VectorXd d(static_cast<Eigen::Index>(n));
    Eigen::VectorXd e(static_cast<Eigen::Index>(n > 1 ? n - 1 : 0));
    for (std::size_t j = 0; j < n; ++j) d[static_cast<Eigen::Index>(j)] = diag[j];
    for (std::size_t j = 1; j < n; ++j) e[static_cast<Eigen::Index>(j - 1)] = off[j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("gauss_jacobi_unit: tridiagonal eigensolver failed");
    }

    // Mass of the weight; only its logarithm is formed.
    const double log_mass =
        std::lgamma(left + 1.0) + std::lgamma(right + 1.0) - std::lgamma(left + right + 2.0);
    const double q0 = std::exp(-0.5 * log_mass);

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
        double christoffel = 0.0;
        for (int newton = 0; newton < 3; ++newton) {
            // Orthonormal q_j(x) and derivatives, j = 0..n.
            double q_prev = 0.0, q = q0;
            double dq_prev = 0.0, dq = 0.0;
            christoffel = q * q;
            for (std::size_t j = 0; j < n; ++j) {
                const double q_next = ((x - diag[j]) * q - off[j] * q_prev) / off[j + 1];
                const double dq_next = (q + (x - diag[j]) * dq - off[j] * dq_prev) / off[j + 1];
                q_prev = q;
                q = q_next;
                dq_prev = dq;
                dq = dq_next;
                if (j + 1 < n) christoffel += q * q;
            }
            const double step = q / dq;
            if (!std::isfinite(step)) break;
            const double x_new = x - step;
            if (!(x_new > 0.0 && x_new < 1.0)) break;
            x = x_new;
            if (std::abs(step) <= 1e-16 * std::max(x, 1e-300)) break;
        }
        // Recompute the Christoffel sum at the final node.
        double q_prev = 0.0, q = q0;
        christoffel = q * q;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const double q_next = ((x - diag[j]) * q - off[j] * q_prev) / off[j + 1];
            q_prev = q;
            q = q_next;
            christoffel += q * q;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 1.0 / christoffel;
    }
    return rule;
}

std::size_t starting_rung(std::size_t k) {
    const auto root = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(k))));
    const std::size_t wanted = std::max<std::size_t>(64, 2 * root + 64);
    for (std::size_t r = 0; r < kNodeLadder.size(); ++r) {
        if (kNodeLadder[r] >= wanted) return r;
    }
    return kNodeLadder.size() - 1;
}

}  // namespace dupdel
