#pragma once

// Erdelyi-Kober operators I_m^{eta,alpha} and fractional powers of the
// hyper-Bessel operator  L = x^{a_1} D x^{a_2} ... x^{a_n} D x^{a_{n+1}}.
//
// Two backends for I_m^{eta,alpha}:
//   * exact action on monomials,
//       I x^beta = Gamma(eta + beta/m + 1) / Gamma(alpha + eta + 1 + beta/m) x^beta,
//     which covers alpha <= 0 as well;
//   * numerical quadrature of the defining integral (alpha > 0 only).
// Fractional powers are defined through the factorisation
//   L^alpha f = m^{n alpha} x^{-m alpha} prod_k I_m^{b_k, -alpha} f.

#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fkg/errors.hpp"
#include "fkg/quadrature.hpp"
#include "fkg/scalar_kernels.hpp"
#include "fkg/series.hpp"

namespace fkg {

/// One Erdelyi-Kober operator I_m^{eta, alpha_ek}. Negative alpha_ek acts as a
/// derivative.
struct EKParams {
    double m = 1.0;
    double eta = 0.0;
    double alpha_ek = 0.0;
};

/// Coefficients of L and the quantities derived from them:
/// a = sum a_k, m = n - a, b_k = (sum_{i>k} a_i + k - n) / m.
struct HyperBesselSpec {
    std::vector<double> a_coeffs;
    int n = 0;
    double a = 0.0;
    double m = 0.0;
    std::vector<double> b;
    /// Non-fatal notes from the admissibility check on b_k.
    std::vector<std::string> warnings;
};

/// Default (p, mu) for the admissibility set A_{p,mu,m}.
inline constexpr double admissibility_p = 2.0;
inline constexpr double admissibility_mu = 0.0;
inline constexpr double admissibility_tolerance = 1e-9;

/// True when eta avoids the excluded lattice m eta + mu + m = 1/p - m l,
/// l = 0, 1, 2, ...
[[nodiscard]] inline bool is_admissible(double eta, double m, double p = admissibility_p,
                                        double mu = admissibility_mu) {
    const double l = (1.0 / p - m * eta - mu - m) / m;
    const double nearest = std::round(l);
    return !(nearest >= 0.0 && std::abs(l - nearest) <= admissibility_tolerance);
}

/// Builds the spec of L from a_1..a_{n+1}. Requires a < n.
[[nodiscard]] inline HyperBesselSpec derive_coefficients(std::vector<double> a_coeffs) {
    if (a_coeffs.size() < 2) {
        throw domain_error("derive_coefficients: need at least two coefficients a_1, a_2");
    }
    HyperBesselSpec h;
    h.n = static_cast<int>(a_coeffs.size()) - 1;
    for (double ak : a_coeffs) {
        h.a += ak;
    }
    if (!(h.a < static_cast<double>(h.n))) {
        std::ostringstream msg;
        msg << "derive_coefficients: fractional powers need a < n (a = " << h.a << ", n = " << h.n
            << ")";
        throw domain_error(msg.str());
    }
    h.m = static_cast<double>(h.n) - h.a;
    h.b.resize(static_cast<std::size_t>(h.n));
    for (int k = 1; k <= h.n; ++k) {
        double tail = 0.0;
        for (int i = k + 1; i <= h.n + 1; ++i) {
            tail += a_coeffs[static_cast<std::size_t>(i - 1)];
        }
        h.b[static_cast<std::size_t>(k - 1)] = (tail + k - h.n) / h.m;
    }
    for (std::size_t k = 0; k < h.b.size(); ++k) {
        if (!is_admissible(h.b[k], h.m)) {
            std::ostringstream msg;
            msg << "b_" << (k + 1) << " = " << h.b[k] << " lies on the excluded lattice of A_{"
                << admissibility_p << "," << admissibility_mu << "," << h.m << "}";
            h.warnings.push_back(msg.str());
        }
    }
    h.a_coeffs = std::move(a_coeffs);
    return h;
}

/// d^2/dw^2 + (N/w) d/dw, i.e. a = (-N, N, 0). N = 1 is the Bessel operator.
[[nodiscard]] inline HyperBesselSpec bessel_type_operator(int N) {
    return derive_coefficients({-static_cast<double>(N), static_cast<double>(N), 0.0});
}

/// Coefficient C with I_m^{eta,alpha} x^beta = C x^beta.
/// Requires eta + beta/m + 1 > 0; a pole in the denominator gives C = 0.
[[nodiscard]] inline double ek_monomial(const EKParams& p, double beta) {
    const double lead = p.eta + beta / p.m + 1.0;
    if (!(lead > 0.0)) {
        std::ostringstream msg;
        msg << "ek_monomial: eta + beta/m + 1 = " << lead << " must be positive (m = " << p.m
            << ", eta = " << p.eta << ", beta = " << beta << ")";
        throw precondition_error(msg.str());
    }
    return gamma_ratio(lead, p.alpha_ek + lead);
}

/// Applies I_m^{eta,alpha} termwise. The exponent grid is unchanged. Zero
/// coefficients stay zero without a precondition check.
[[nodiscard]] inline GeneralizedPowerSeries ek_apply_series(const EKParams& p,
                                                            const GeneralizedPowerSeries& s) {
    std::vector<double> out(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double c = s.coeffs()[k];
        if (c == 0.0) {
            out[k] = 0.0;
            continue;
        }
        try {
            out[k] = c * ek_monomial(p, s.exponent(k));
        } catch (const precondition_error& e) {
            throw precondition_error("term " + std::to_string(k) + ": " + e.what());
        }
    }
    return {s.gamma0(), s.delta(), std::move(out)};
}

/// I_m^{eta,alpha} x^beta coefficient for alpha <= 0 through the recursion
///   I^{eta,alpha} f = (eta + alpha + 1) I^{eta,alpha+1} f + (1/m) I^{eta,alpha+1}(x f'),
/// which on x^beta multiplies by (eta + alpha + 1 + beta/m) per step. The
/// positive-order base is supplied by the caller.
template <std::invocable<const EKParams&, double> PositiveOrderCoefficient>
[[nodiscard]] double ek_monomial_by_recursion(const EKParams& p, double beta,
                                              PositiveOrderCoefficient&& base) {
    double factor = 1.0;
    EKParams q = p;
    while (q.alpha_ek <= 0.0) {
        factor *= q.eta + q.alpha_ek + 1.0 + beta / q.m;
        q.alpha_ek += 1.0;
    }
    return factor * base(q, beta);
}

/// Multiplier of x^beta under L^alpha:
///   m^{n alpha} prod_k Gamma(b_k + beta/m + 1) / Gamma(b_k + beta/m + 1 - alpha).
/// The result is a monomial of exponent beta - m alpha.
[[nodiscard]] inline double frac_power_coefficient(const HyperBesselSpec& h, double alpha,
                                                   double beta) {
    double coeff = std::pow(h.m, h.n * alpha);
    for (std::size_t k = 0; k < h.b.size(); ++k) {
        try {
            coeff *= ek_monomial({h.m, h.b[k], -alpha}, beta);
        } catch (const precondition_error& e) {
            throw precondition_error("factor " + std::to_string(k + 1) + ": " + e.what());
        }
    }
    return coeff;
}

/// L^alpha applied to a series: grid shifted down by m alpha, coefficients
/// multiplied termwise by frac_power_coefficient. Terms hit by a gamma pole in
/// the denominator are kept as explicit zeros.
[[nodiscard]] inline GeneralizedPowerSeries frac_power_apply(const HyperBesselSpec& h,
                                                             double alpha,
                                                             const GeneralizedPowerSeries& s) {
    std::vector<double> out(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double c = s.coeffs()[k];
        if (c == 0.0) {
            out[k] = 0.0;
            continue;
        }
        try {
            out[k] = c * frac_power_coefficient(h, alpha, s.exponent(k));
        } catch (const precondition_error& e) {
            throw precondition_error("term " + std::to_string(k) + ", " + e.what());
        }
    }
    return {s.gamma0() - h.m * alpha, s.delta(), std::move(out)};
}

/// L^r by literal differentiation of x^{a_1} D x^{a_2} ... D x^{a_{n+1}},
/// applied right to left to every monomial.
[[nodiscard]] inline GeneralizedPowerSeries integer_power_oracle(const HyperBesselSpec& h, int r,
                                                                 const GeneralizedPowerSeries& s) {
    if (r < 1) {
        throw domain_error("integer_power_oracle: r must be a positive integer");
    }
    const auto& a = h.a_coeffs;
    std::vector<double> out(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        double coeff = s.coeffs()[k];
        double e = s.exponent(k);
        for (int step = 0; step < r; ++step) {
            e += a[static_cast<std::size_t>(h.n)];
            for (int j = h.n - 1; j >= 0; --j) {
                coeff *= e;
                e -= 1.0;
                e += a[static_cast<std::size_t>(j)];
            }
        }
        out[k] = coeff;
    }
    // Every step lowers the exponent by n - a = m.
    return {s.gamma0() - r * h.m, s.delta(), std::move(out)};
}

/// Monomial solution u = (mu / C) w^{beta + m alpha} of L^alpha u = mu w^beta,
/// C being the L^alpha multiplier at the shifted exponent. Throws
/// resonance_error when C = 0.
[[nodiscard]] inline GeneralizedPowerSeries invert_on_monomial(const HyperBesselSpec& h,
                                                               double alpha, double source_coeff,
                                                               double source_exponent) {
    const double e = source_exponent + h.m * alpha;
    const double C = frac_power_coefficient(h, alpha, e);
    if (C == 0.0) {
        std::ostringstream msg;
        msg << "invert_on_monomial: w^" << e << " is annihilated by L^" << alpha
            << " (resonance)";
        throw resonance_error(msg.str());
    }
    return GeneralizedPowerSeries::monomial(e, source_coeff / C);
}

struct QuadratureControl {
    double relative_tolerance = 1e-10;
    std::size_t initial_order = 8;
    std::size_t max_order = 512;
    /// Geometric panels [2^-(j+1), 2^-j] between the s = 0 end and s = 1/2.
    int graded_panels = 40;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t order = 0;
};

namespace detail {

// Integral over s in [0, 1] of (1 - s)^{alpha-1} s^eta g(s) at a fixed order.
// [1/2, 1]: Gauss-Jacobi carrying the (1 - s)^{alpha-1} endpoint weight.
// [2^-J-1, 1/2]: geometrically graded Gauss-Legendre panels.
// [0, 2^-J-1]: Gauss-Jacobi carrying the s^eta endpoint weight.
template <typename G>
double ek_kernel_integral(double alpha, double eta, G& g, std::size_t order, int panels) {
    const double a = alpha - 1.0;
    CompensatedSum total;

    const QuadratureRule right = gauss_jacobi(order, a, 0.0);
    const double right_scale = std::pow(0.25, a + 1.0);
    for (std::size_t i = 0; i < order; ++i) {
        const double s = 0.75 + 0.25 * right.nodes[i];
        total += right_scale * right.weights[i] * std::pow(s, eta) * g(s);
    }

    const QuadratureRule legendre = gauss_legendre(order);
    double hi = 0.5;
    for (int j = 0; j < panels; ++j) {
        const double lo = 0.5 * hi;
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        for (std::size_t i = 0; i < order; ++i) {
            const double s = mid + half * legendre.nodes[i];
            total += half * legendre.weights[i] * std::pow(1.0 - s, a) * std::pow(s, eta) * g(s);
        }
        hi = lo;
    }

    const double eps = hi;
    if (eta > -1.0) {
        const QuadratureRule left = gauss_jacobi(order, 0.0, eta);
        const double left_scale = std::pow(0.5 * eps, eta + 1.0);
        for (std::size_t i = 0; i < order; ++i) {
            const double s = 0.5 * eps * (1.0 + left.nodes[i]);
            total += left_scale * left.weights[i] * std::pow(1.0 - s, a) * g(s);
        }
    } else {
        for (std::size_t i = 0; i < order; ++i) {
            const double s = 0.5 * eps * (1.0 + legendre.nodes[i]);
            total += 0.5 * eps * legendre.weights[i] * std::pow(1.0 - s, a) * std::pow(s, eta) *
                     g(s);
        }
    }
    return total.value();
}

}  // namespace detail

/// Numerical value of (I_m^{eta,alpha} f)(x) for alpha > 0 from
///   I f(x) = 1/Gamma(alpha) int_0^1 (1 - s)^{alpha-1} s^eta f(x s^{1/m}) ds,
/// which is the defining integral after u^m = x^m s. The order is doubled
/// until two successive results agree to the relative tolerance; throws
/// convergence_error (carrying the last difference) past max_order.
template <std::invocable<double> F>
[[nodiscard]] QuadratureResult ek_quadrature(const EKParams& p, F&& f, double x,
                                             const QuadratureControl& ctl = {}) {
    if (!(p.alpha_ek > 0.0)) {
        throw precondition_error("ek_quadrature: requires alpha_ek > 0");
    }
    if (!(p.m > 0.0) || !(x > 0.0)) {
        throw precondition_error("ek_quadrature: requires m > 0 and x > 0");
    }
    const double inv_m = 1.0 / p.m;
    auto g = [&](double s) { return static_cast<double>(f(x * std::pow(s, inv_m))); };
    const double scale = reciprocal_gamma(p.alpha_ek);

    double previous = scale * detail::ek_kernel_integral(p.alpha_ek, p.eta, g, ctl.initial_order,
                                                         ctl.graded_panels);
    double diff = 0.0;
    for (std::size_t order = 2 * ctl.initial_order; order <= ctl.max_order; order *= 2) {
        const double current =
            scale * detail::ek_kernel_integral(p.alpha_ek, p.eta, g, order, ctl.graded_panels);
        diff = std::abs(current - previous);
        if (diff <= ctl.relative_tolerance * std::abs(current) || diff <= 1e-300) {
            return {current, diff, order};
        }
        previous = current;
    }
    throw convergence_error("ek_quadrature: no convergence up to order " +
                                std::to_string(ctl.max_order),
                            diff);
}

}  // namespace fkg
