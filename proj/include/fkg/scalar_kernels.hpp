#pragma once

// Real gamma, log-gamma, reciprocal gamma and Bessel J of real order.
// These kernels back every gamma factor in the operator and series code and
// double as independent oracles in the test suites.

#include <array>
#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <string>

#include "fkg/errors.hpp"
#include "fkg/summation.hpp"

namespace fkg {

namespace detail {

// Godfrey's coefficients for the Lanczos approximation, g = 7, n = 9.
inline constexpr double lanczos_g = 7.0;
inline constexpr std::array<double, 9> lanczos_coeffs = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Largest x with finite Gamma(x) in double precision.
inline constexpr double gamma_overflow_threshold = 171.6243769563027;

inline double lanczos_series(double z) noexcept {
    double x = lanczos_coeffs[0];
    for (std::size_t i = 1; i < lanczos_coeffs.size(); ++i) {
        x += lanczos_coeffs[i] / (z + static_cast<double>(i));
    }
    return x;
}

// Lanczos form, accurate to a few ulp on [1, 2).
inline double gamma_lanczos(double x) noexcept {
    const double z = x - 1.0;
    const double t = z + lanczos_g + 0.5;
    const double sqrt_two_pi = std::sqrt(2.0 * std::numbers::pi);
    return sqrt_two_pi * std::pow(t, z + 0.5) * std::exp(-t) * lanczos_series(z);
}

// Gamma(x) for x >= 0.5: Lanczos on the reduced argument in [1, 2), then the
// upward recurrence. The reduction x - n is exact in double precision, and
// integer arguments give exact factorials while they are representable.
inline double gamma_positive(double x) noexcept {
    if (x < 1.0) {
        return gamma_lanczos(x + 1.0) / x;
    }
    const double n = std::floor(x) - 1.0;
    double f = x - n;
    double g = f == 1.0 ? 1.0 : gamma_lanczos(f);
    for (double i = 0.0; i < n; i += 1.0) {
        g *= f;
        f += 1.0;
    }
    return g;
}

}  // namespace detail

/// True when x is 0, -1, -2, ...
[[nodiscard]] inline bool is_nonpositive_integer(double x) noexcept {
    return x <= 0.0 && std::floor(x) == x;
}

/// sin(pi x), exactly zero at integers.
[[nodiscard]] inline double sin_pi(double x) noexcept {
    if (std::floor(x) == x) {
        return 0.0;
    }
    // Reduce to r in (-1, 1] with sin(pi x) = sin(pi r).
    double r = std::fmod(x, 2.0);
    if (r > 1.0) {
        r -= 2.0;
    } else if (r <= -1.0) {
        r += 2.0;
    }
    if (r > 0.5) {
        r = 1.0 - r;
    } else if (r < -0.5) {
        r = -1.0 - r;
    }
    return std::sin(std::numbers::pi * r);
}

/// Gamma function of a real argument.
///
/// Lanczos approximation for x >= 0.5, reflection below. Throws pole_error at
/// non-positive integers and overflow_error when |Gamma(x)| is not
/// representable.
[[nodiscard]] inline double gamma(double x) {
    if (std::isnan(x)) {
        throw domain_error("gamma: NaN argument");
    }
    if (is_nonpositive_integer(x)) {
        throw pole_error("gamma: pole at x = " + std::to_string(x));
    }
    if (x > detail::gamma_overflow_threshold) {
        throw overflow_error("gamma: overflow at x = " + std::to_string(x));
    }
    if (x >= 0.5) {
        return detail::gamma_positive(x);
    }
    const double g = detail::gamma_positive(1.0 - x);
    if (std::isinf(g)) {
        // Gamma(1 - x) overflows, so Gamma(x) underflows.
        return 0.0;
    }
    const double result = std::numbers::pi / (sin_pi(x) * g);
    if (std::isinf(result)) {
        throw overflow_error("gamma: overflow at x = " + std::to_string(x));
    }
    return result;
}

/// log|Gamma(x)|. Throws pole_error at non-positive integers.
[[nodiscard]] inline double log_gamma(double x) {
    if (is_nonpositive_integer(x)) {
        throw pole_error("log_gamma: pole at x = " + std::to_string(x));
    }
    if (x < 0.5) {
        return std::log(std::numbers::pi / std::abs(sin_pi(x))) - log_gamma(1.0 - x);
    }
    if (x < 15.0) {
        return std::log(detail::gamma_positive(x));
    }
    // Stirling series with Bernoulli-number corrections.
    constexpr std::array<double, 7> c = {1.0 / 12.0,         -1.0 / 360.0,    1.0 / 1260.0,
                                         -1.0 / 1680.0,      1.0 / 1188.0,    -691.0 / 360360.0,
                                         1.0 / 156.0};
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double corr = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        corr = corr * inv2 + *it;
    }
    corr *= inv;
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + corr;
}

/// Sign of Gamma(x) away from poles.
[[nodiscard]] inline double gamma_sign(double x) noexcept {
    if (x > 0.0) {
        return 1.0;
    }
    // Gamma alternates sign between consecutive negative integers.
    return (static_cast<long long>(std::floor(x)) % 2 == 0) ? 1.0 : -1.0;
}

/// 1/Gamma(x). Total: exactly 0 at non-positive integers.
[[nodiscard]] inline double reciprocal_gamma(double x) noexcept {
    if (std::isnan(x)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (is_nonpositive_integer(x)) {
        return 0.0;
    }
    if (x >= 0.5) {
        if (x > detail::gamma_overflow_threshold) {
            return std::exp(-log_gamma(x));
        }
        return 1.0 / detail::gamma_positive(x);
    }
    // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
    const double one_minus = 1.0 - x;
    if (one_minus > detail::gamma_overflow_threshold) {
        return gamma_sign(x) * std::exp(-log_gamma(x));
    }
    return sin_pi(x) * detail::gamma_positive(one_minus) / std::numbers::pi;
}

/// Gamma(a) / Gamma(b) as an analytic function of its arguments.
///
/// A pole in the denominator alone gives 0. When both arguments sit on poles
/// the limit along a + e, b + e is returned:
/// Gamma(-p + e) / Gamma(-q + e) -> (-1)^(p - q) q! / p!.
/// A pole in the numerator alone throws pole_error. Arguments an integer
/// apart (up to 32) use the rising factorial directly.
[[nodiscard]] inline double gamma_ratio(double a, double b) {
    const bool a_pole = is_nonpositive_integer(a);
    const bool b_pole = is_nonpositive_integer(b);
    if (a_pole && b_pole) {
        const double p = -a;
        const double q = -b;
        const double sign = (static_cast<long long>(std::abs(p - q)) % 2 == 0) ? 1.0 : -1.0;
        // q!/p! = Gamma(q + 1) / Gamma(p + 1), both positive arguments.
        return sign * std::exp(log_gamma(q + 1.0) - log_gamma(p + 1.0));
    }
    if (a_pole) {
        throw pole_error("gamma_ratio: numerator pole at " + std::to_string(a));
    }
    if (b_pole) {
        return 0.0;
    }
    // Arguments a small integer apart: the ratio is a finite rising factorial.
    const double d = a - b;
    if (std::floor(d) == d && std::abs(d) <= 32.0) {
        const double lo = d >= 0.0 ? b : a;
        double prod = 1.0;
        for (double j = 0.0; j < std::abs(d); j += 1.0) {
            prod *= lo + j;
        }
        return d >= 0.0 ? prod : 1.0 / prod;
    }
    if (std::abs(a) < 150.0 && std::abs(b) < 150.0) {
        return gamma(a) * reciprocal_gamma(b);
    }
    return gamma_sign(a) * gamma_sign(b) * std::exp(log_gamma(a) - log_gamma(b));
}

/// Bessel function of the first kind J_nu(z) by its ascending series.
///
/// Intended for nu >= 0 and 0 <= z <= 30; cancellation between terms grows
/// like exp(z), so accuracy degrades past that range. The series runs in T;
/// the constant 1/Gamma(nu + 1) is always taken in double precision.
template <std::floating_point T>
[[nodiscard]] T bessel_j(T nu, T z) {
    if (nu < 0 || z < 0 || std::isnan(nu) || std::isnan(z)) {
        throw domain_error("bessel_j: requires nu >= 0 and z >= 0");
    }
    if (z == 0) {
        return nu == 0 ? T(1) : T(0);
    }
    const T half_z = z / 2;
    const T q = half_z * half_z;
    T term = std::pow(half_z, nu) * static_cast<T>(reciprocal_gamma(static_cast<double>(nu) + 1.0));
    T sum = term;
    T compensation = 0;
    T peak = std::abs(term);
    for (int k = 1; k < 1000; ++k) {
        term *= -q / (static_cast<T>(k) * (static_cast<T>(k) + nu));
        // Neumaier step, spelled out so that it works for any T.
        const T t = sum + term;
        compensation += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
        peak = std::max(peak, std::abs(term));
        // Past the peak (k^2 > q) the terms decrease monotonically.
        if (static_cast<T>(k) * k > q && std::abs(term) <= T(1e-17) * peak) {
            break;
        }
    }
    return sum + compensation;
}

[[nodiscard]] inline double bessel_j(double nu, double z) { return bessel_j<double>(nu, z); }

}  // namespace fkg
