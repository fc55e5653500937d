#pragma once

// Closed-form solutions of the fractional Klein-Gordon equation
//   (d^2/dt^2 - c^2 Laplacian)^alpha u = -lambda^2 u,   alpha in (0, 1],
// reduced through w = sqrt(c^2 t^2 - |x|^2) to
//   (d^2/dw^2 + (N/w) d/dw)^alpha u = -(lambda^2 / c^{2 alpha}) u,
// plus the damped-wave mapping and power-law travelling waves.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "fkg/ek_operators.hpp"
#include "fkg/errors.hpp"
#include "fkg/scalar_kernels.hpp"
#include "fkg/series.hpp"

namespace fkg {

/// Absolute tail bound targeted by automatic truncation-order selection.
inline constexpr double default_tail_target = 1e-12;
inline constexpr std::size_t min_truncation_order = 10;
inline constexpr std::size_t max_truncation_order = 500;

/// Light-cone variable w = sqrt(c^2 t^2 - |x|^2). Throws domain_error
/// outside the cone.
[[nodiscard]] inline double light_cone_w(std::span<const double> x, double t, double c) {
    if (!(c > 0.0)) {
        throw domain_error("light_cone_w: c must be positive");
    }
    const double ct = c * t;
    double r2 = 0.0;
    for (double xk : x) {
        r2 += xk * xk;
    }
    const double w2 = ct * ct - r2;
    if (t < 0.0 || w2 < 0.0) {
        std::ostringstream msg;
        msg << "point (|x|^2 = " << r2 << ", t = " << t << ") lies outside the light cone";
        throw domain_error(msg.str());
    }
    return std::sqrt(w2);
}

/// A point (x, t) with x in R^N.
struct LightConePoint {
    std::vector<double> x;
    double t = 0.0;

    [[nodiscard]] double w(double c) const { return light_cone_w(x, t, c); }
};

/// Linear solution u(w) = w^{2 alpha - 2} sum_k (-q)^k w^{2 alpha k}
///   / [Gamma(alpha k + alpha) Gamma(alpha k + alpha + (N-1)/2)],
/// q = lambda^2 / (4^alpha c^{2 alpha}), truncated at K.
class KGSolutionSpec {
public:
    KGSolutionSpec(double alpha, double lambda, double c, int N, std::size_t K)
        : alpha_(alpha), lambda_(lambda), c_(c), N_(N),
          series_(0.0, 1.0, {0.0}) {
        if (!(alpha > 0.0 && alpha <= 1.0)) {
            throw domain_error("KGSolutionSpec: alpha must lie in (0, 1]");
        }
        if (!(lambda > 0.0)) {
            throw domain_error("KGSolutionSpec: lambda must be positive");
        }
        if (!(c > 0.0)) {
            throw domain_error("KGSolutionSpec: c must be positive");
        }
        if (N < 1) {
            throw domain_error("KGSolutionSpec: N must be >= 1");
        }
        series_ = build_series_from_ml(leading_exponent(), 2.0 * alpha_, ml_params(),
                                       -mass_term() / std::pow(4.0, alpha_), K);
    }

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double lambda() const noexcept { return lambda_; }
    [[nodiscard]] double c() const noexcept { return c_; }
    [[nodiscard]] int N() const noexcept { return N_; }
    [[nodiscard]] std::size_t truncation_order() const noexcept {
        return series_.truncation_order();
    }
    [[nodiscard]] const GeneralizedPowerSeries& series() const noexcept { return series_; }

    /// lambda^2 / c^{2 alpha}, the constant on the right of the w-equation.
    [[nodiscard]] double mass_term() const noexcept {
        return lambda_ * lambda_ / std::pow(c_, 2.0 * alpha_);
    }

    [[nodiscard]] double leading_exponent() const noexcept { return 2.0 * alpha_ - 2.0; }

    /// Parameters {(alpha, alpha), (alpha, alpha + (N-1)/2)} of the
    /// two-index Mittag-Leffler function carrying the solution.
    [[nodiscard]] MultiIndexMLParams ml_params() const {
        return {{alpha_, alpha_}, {alpha_, alpha_ + 0.5 * (N_ - 1)}};
    }

    /// The operator d^2/dw^2 + (N/w) d/dw.
    [[nodiscard]] HyperBesselSpec hyper_bessel() const { return bessel_type_operator(N_); }

    /// Coefficient k of the untruncated series.
    [[nodiscard]] double coefficient(std::size_t k) const {
        return detail::ml_term(ml_params(), -mass_term() / std::pow(4.0, alpha_), k);
    }

    /// Term k of the untruncated series at w.
    [[nodiscard]] double term(std::size_t k, double w) const {
        return coefficient(k) * std::pow(w, series_.exponent(k));
    }

    /// Bound on the omitted tail sum_{k > K} at w.
    [[nodiscard]] double tail_bound(double w) const {
        const std::size_t K = truncation_order();
        return tail_bound_from_terms(term(K + 1, w), term(K + 2, w));
    }

    /// u at a given light-cone variable.
    [[nodiscard]] double eval_w(double w) const {
        if (w == 0.0 && leading_exponent() < 0.0) {
            throw domain_error("eval_solution: singular on the light cone for alpha < 1");
        }
        return eval_series(series_, w);
    }

private:
    double alpha_;
    double lambda_;
    double c_;
    int N_;
    GeneralizedPowerSeries series_;
};

/// Smallest K in [min_truncation_order, max_truncation_order] whose tail bound
/// at w_max is below the target. Returns the cap when no K qualifies.
[[nodiscard]] inline std::size_t select_truncation_order(double alpha, double lambda, double c,
                                                         int N, double w_max,
                                                         double tail_target = default_tail_target) {
    const KGSolutionSpec probe(alpha, lambda, c, N, 0);
    if (w_max <= 0.0) {
        return min_truncation_order;
    }
    for (std::size_t K = min_truncation_order; K < max_truncation_order; ++K) {
        const double t1 = probe.term(K + 1, w_max);
        const double t2 = probe.term(K + 2, w_max);
        if (tail_bound_from_terms(t1, t2) < tail_target) {
            return K;
        }
    }
    return max_truncation_order;
}

/// Solution of the linear equation with an explicit truncation order.
[[nodiscard]] inline KGSolutionSpec build_linear_solution(double alpha, double lambda, double c,
                                                          int N, std::size_t K) {
    return {alpha, lambda, c, N, K};
}

/// Solution of the linear equation truncated so that the tail at w_max stays
/// below the target.
[[nodiscard]] inline KGSolutionSpec build_linear_solution_for(double alpha, double lambda,
                                                              double c, int N, double w_max,
                                                              double tail_target =
                                                                  default_tail_target) {
    return {alpha, lambda, c, N, select_truncation_order(alpha, lambda, c, N, w_max, tail_target)};
}

/// u(x, t). The point must lie inside the light cone, strictly so when the
/// leading exponent 2 alpha - 2 is negative.
[[nodiscard]] inline double eval_solution(const KGSolutionSpec& spec, const LightConePoint& pt) {
    if (static_cast<int>(pt.x.size()) != spec.N()) {
        throw domain_error("eval_solution: point dimension does not match N");
    }
    return spec.eval_w(pt.w(spec.c()));
}

/// u = e^{-sigma t} v for the damped wave equation
///   u_tt - u_xx + 2 sigma u_t = -u,
/// where v solves the Klein-Gordon equation with c = 1, alpha = 1 and
/// lambda = sqrt(1 - sigma^2). The truncation order is fixed at construction
/// so that evaluation over a grid is smooth in (x, t).
class DampedWave {
public:
    DampedWave(double sigma, double w_max)
        : sigma_(sigma), v_(make_solution(sigma, w_max)) {}

    [[nodiscard]] double sigma() const noexcept { return sigma_; }
    [[nodiscard]] const KGSolutionSpec& undamped() const noexcept { return v_; }

    [[nodiscard]] double operator()(double x, double t) const {
        const double xs[1] = {x};
        return std::exp(-sigma_ * t) * v_.eval_w(light_cone_w(xs, t, 1.0));
    }

private:
    static KGSolutionSpec make_solution(double sigma, double w_max) {
        if (!(sigma * sigma < 1.0)) {
            throw unsupported_regime_error(
                "damped wave: sigma^2 >= 1 leads to the Helmholtz/telegraph regime");
        }
        return build_linear_solution_for(1.0, std::sqrt(1.0 - sigma * sigma), 1.0, 1,
                                         std::max(w_max, 1.0), 1e-17);
    }

    double sigma_;
    KGSolutionSpec v_;
};

[[nodiscard]] inline double damped_wave_solution(double sigma, double x, double t) {
    return DampedWave(sigma, t)(x, t);
}

/// 4^alpha [Gamma(beta/2 + 1) / Gamma(1 - alpha + beta/2)]^2, the multiplier
/// of w^beta under (d^2/dw^2 + (1/w) d/dw)^alpha. Evaluated as an analytic
/// function of beta, so simultaneous poles resolve to their limit.
[[nodiscard]] inline double bessel_power_coefficient(double alpha, double beta) {
    const double r = gamma_ratio(0.5 * beta + 1.0, 1.0 - alpha + 0.5 * beta);
    return std::pow(4.0, alpha) * r * r;
}

/// u = k w^beta solving (L_B)^alpha u = lambda u^s, with
/// beta = 2 alpha / (1 - s) and k = (A / lambda)^{1/(s-1)}, A the multiplier
/// of w^beta.
struct TravellingWaveSpec {
    double alpha = 1.0;
    double lambda = 1.0;
    double c = 1.0;
    double s = 0.0;
    double beta = 0.0;
    double k_coeff = 0.0;
    /// Operator multiplier 4^alpha [Gamma(beta/2+1)/Gamma(1-alpha+beta/2)]^2.
    double operator_coeff = 0.0;
    /// Source strength of the non-homogeneous variant (0 when homogeneous).
    double gamma_src = 0.0;
    /// True when the closed form collapses to the trivial solution u = 0.
    bool degenerate = false;

    [[nodiscard]] double eval_w(double w) const {
        if (w < 0.0) {
            throw domain_error("travelling wave: w must be non-negative");
        }
        if (w == 0.0 && beta < 0.0) {
            throw domain_error("travelling wave: unbounded on the light cone for s > 1");
        }
        return k_coeff * std::pow(w, beta);
    }

    [[nodiscard]] double eval(double x, double t) const {
        const double xs[1] = {x};
        return eval_w(light_cone_w(xs, t, c));
    }
};

namespace detail {

inline void check_travelling_params(double alpha, double lambda, double c, double s) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw domain_error("travelling wave: alpha must lie in (0, 1]");
    }
    if (lambda == 0.0 || std::isnan(lambda)) {
        throw domain_error("travelling wave: lambda must be non-zero");
    }
    if (!(c > 0.0)) {
        throw domain_error("travelling wave: c must be positive");
    }
    if (s == 1.0) {
        throw domain_error("travelling wave: s = 1 is excluded");
    }
}

inline bool is_integer(double v) noexcept { return std::isfinite(v) && std::floor(v) == v; }

}  // namespace detail

/// Travelling wave of the power-law equation, homogeneous case.
[[nodiscard]] inline TravellingWaveSpec build_travelling_wave(double alpha, double lambda,
                                                              double c, double s) {
    detail::check_travelling_params(alpha, lambda, c, s);
    TravellingWaveSpec tw{alpha, lambda, c, s};
    tw.beta = 2.0 * alpha / (1.0 - s);
    tw.operator_coeff = bessel_power_coefficient(alpha, tw.beta);
    const double base = tw.operator_coeff / lambda;
    const double exponent = 1.0 / (s - 1.0);
    if (base == 0.0) {
        if (exponent > 0.0) {
            // w^beta is annihilated by the operator; only k = 0 balances.
            tw.k_coeff = 0.0;
            tw.degenerate = true;
            return tw;
        }
        throw pole_error("travelling wave: Gamma(1 - alpha + alpha/(1-s)) has a pole and "
                         "1/(s-1) < 0");
    }
    if (base < 0.0 && !detail::is_integer(exponent)) {
        throw complex_result_error("travelling wave: negative base raised to non-integer 1/(s-1)");
    }
    tw.k_coeff = std::pow(base, exponent);
    if (tw.k_coeff < 0.0 && !detail::is_integer(s)) {
        throw complex_result_error("travelling wave: negative k raised to non-integer s");
    }
    return tw;
}

/// Non-homogeneous variant with source gamma_src (c^2 t^2 - x^2)^{alpha/(1-s)}:
/// same ansatz, k a positive root of A k - lambda k^s - gamma_src = 0.
struct NonhomogeneousWave {
    TravellingWaveSpec spec;
    /// Every positive root located on (0, k_max], ascending.
    std::vector<double> roots;
    double k_max = 0.0;
};

/// A k - lambda k^s - gamma_src.
[[nodiscard]] inline double nonhomogeneous_balance(const TravellingWaveSpec& tw, double k) {
    return tw.operator_coeff * k - tw.lambda * std::pow(k, tw.s) - tw.gamma_src;
}

namespace detail {

inline double refine_root(const TravellingWaveSpec& tw, double lo, double hi) {
    double f_lo = nonhomogeneous_balance(tw, lo);
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = nonhomogeneous_balance(tw, mid);
        if (f_mid == 0.0) {
            return mid;
        }
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    // Newton polish, accepted only when it stays inside the bracket and
    // does not increase the residual.
    double k = 0.5 * (lo + hi);
    for (int i = 0; i < 3; ++i) {
        const double f = nonhomogeneous_balance(tw, k);
        const double df = tw.operator_coeff - tw.lambda * tw.s * std::pow(k, tw.s - 1.0);
        if (df == 0.0) {
            break;
        }
        const double next = k - f / df;
        if (!(next >= lo && next <= hi) ||
            std::abs(nonhomogeneous_balance(tw, next)) >= std::abs(f)) {
            break;
        }
        k = next;
    }
    return k;
}

}  // namespace detail

/// Solves A k = lambda k^s + gamma_src for k > 0 by a logarithmic scan of
/// (0, k_max] followed by bisection with a Newton polish. k_max is ten times
/// the homogeneous k (or ten times max(1, |gamma_src / A|) when that is not
/// available). The reported spec uses the root closest to the homogeneous k
/// on a log scale, or the smallest root otherwise. Roots of even multiplicity
/// are not detected.
[[nodiscard]] inline NonhomogeneousWave build_nonhomogeneous_wave(double alpha, double lambda,
                                                                  double gamma_src, double c,
                                                                  double s) {
    detail::check_travelling_params(alpha, lambda, c, s);
    TravellingWaveSpec tw{alpha, lambda, c, s};
    tw.beta = 2.0 * alpha / (1.0 - s);
    tw.operator_coeff = bessel_power_coefficient(alpha, tw.beta);
    tw.gamma_src = gamma_src;

    std::optional<double> k_homogeneous;
    try {
        const TravellingWaveSpec h = build_travelling_wave(alpha, lambda, c, s);
        if (h.k_coeff > 0.0 && std::isfinite(h.k_coeff)) {
            k_homogeneous = h.k_coeff;
        }
    } catch (const domain_error&) {
    }
    double k_max = 10.0;
    if (k_homogeneous) {
        k_max = 10.0 * *k_homogeneous;
    } else if (tw.operator_coeff != 0.0) {
        k_max = 10.0 * std::max(1.0, std::abs(gamma_src / tw.operator_coeff));
    }

    constexpr int scan_points = 4000;
    constexpr double scan_decades = 16.0;
    std::vector<double> roots;
    double k_prev = k_max * std::pow(10.0, -scan_decades);
    double f_prev = nonhomogeneous_balance(tw, k_prev);
    for (int i = 1; i <= scan_points; ++i) {
        const double k = k_max * std::pow(10.0, -scan_decades * (1.0 - double(i) / scan_points));
        const double f = nonhomogeneous_balance(tw, k);
        if (f == 0.0) {
            roots.push_back(k);
        } else if (f_prev != 0.0 && (f < 0.0) != (f_prev < 0.0)) {
            roots.push_back(detail::refine_root(tw, k_prev, k));
        }
        k_prev = k;
        f_prev = f;
    }
    if (roots.empty()) {
        std::ostringstream msg;
        msg << "non-homogeneous wave: no positive root of A k - lambda k^s = gamma on (0, "
            << k_max << "]";
        throw no_root_error(msg.str());
    }
    std::sort(roots.begin(), roots.end());
    double chosen = roots.front();
    if (k_homogeneous) {
        const double target = std::log(*k_homogeneous);
        double best = std::numeric_limits<double>::infinity();
        for (double r : roots) {
            const double d = std::abs(std::log(r) - target);
            if (d < best) {
                best = d;
                chosen = r;
            }
        }
    }
    tw.k_coeff = chosen;
    return {tw, std::move(roots), k_max};
}

}  // namespace fkg
