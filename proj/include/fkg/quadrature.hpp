#pragma once

// Gauss-Jacobi rules on [-1, 1] for the weight (1 - x)^a (1 + x)^b, built by
// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix and weights
// come from the first components of its eigenvectors.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fkg/errors.hpp"
#include "fkg/scalar_kernels.hpp"

namespace fkg {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

// Implicit QL on a symmetric tridiagonal matrix (diag d, sub-diagonal e with
// e[i] coupling rows i and i+1). Only the first row of the eigenvector matrix
// is accumulated, which is all Golub-Welsch needs, so the cost is O(n^2).
inline void tridiagonal_ql_first_row(std::vector<double>& d, std::vector<double>& e,
                                     std::vector<double>& z0) {
    const int n = static_cast<int>(d.size());
    e.resize(static_cast<std::size_t>(n), 0.0);
    e[static_cast<std::size_t>(n - 1)] = 0.0;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) {
                    break;
                }
            }
            if (m != l) {
                if (iter++ == 100) {
                    throw convergence_error("gauss_jacobi: QL iteration did not converge",
                                            std::abs(e[l]));
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                int i = m - 1;
                for (; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z0[i + 1];
                    z0[i + 1] = s * z0[i] + c * f;
                    z0[i] = c * z0[i] - s * f;
                }
                if (r == 0.0 && i >= l) {
                    continue;
                }
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace detail

/// n-point Gauss-Jacobi rule for (1 - x)^a (1 + x)^b on [-1, 1], a, b > -1.
/// Nodes ascending.
[[nodiscard]] inline QuadratureRule gauss_jacobi(std::size_t n, double a, double b) {
    if (n == 0) {
        throw domain_error("gauss_jacobi: need at least one node");
    }
    if (!(a > -1.0) || !(b > -1.0)) {
        throw domain_error("gauss_jacobi: weight exponents must exceed -1");
    }
    const double ab = a + b;
    std::vector<double> diag(n);
    std::vector<double> sub(n, 0.0);
    diag[0] = (b - a) / (ab + 2.0);
    for (std::size_t k = 1; k < n; ++k) {
        const double kd = static_cast<double>(k);
        const double t = 2.0 * kd + ab;
        diag[k] = (b * b - a * a) / (t * (t + 2.0));
    }
    if (n > 1) {
        sub[0] = std::sqrt(4.0 * (1.0 + a) * (1.0 + b) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0)));
    }
    for (std::size_t k = 2; k < n; ++k) {
        const double kd = static_cast<double>(k);
        const double t = 2.0 * kd + ab;
        sub[k - 1] = std::sqrt(4.0 * kd * (kd + a) * (kd + b) * (kd + ab) /
                               (t * t * (t + 1.0) * (t - 1.0)));
    }
    std::vector<double> z0(n, 0.0);
    z0[0] = 1.0;
    detail::tridiagonal_ql_first_row(diag, sub, z0);

    // Total mass of the weight: 2^(a+b+1) B(a+1, b+1).
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + log_gamma(a + 1.0) +
                                log_gamma(b + 1.0) - log_gamma(ab + 2.0));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return diag[i] < diag[j]; });
    QuadratureRule rule;
    rule.nodes.reserve(n);
    rule.weights.reserve(n);
    for (std::size_t i : order) {
        rule.nodes.push_back(diag[i]);
        rule.weights.push_back(mu0 * z0[i] * z0[i]);
    }
    return rule;
}

[[nodiscard]] inline QuadratureRule gauss_legendre(std::size_t n) { return gauss_jacobi(n, 0.0, 0.0); }

}  // namespace fkg
