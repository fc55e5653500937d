#pragma once

// Generalized power series  sum_k c_k w^(gamma0 + k delta)  and the
// multi-index Mittag-Leffler function
//   E(z) = sum_k z^k / (Gamma(a_1 k + m_1) ... Gamma(a_n k + m_n)).

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "fkg/errors.hpp"
#include "fkg/scalar_kernels.hpp"
#include "fkg/summation.hpp"

namespace fkg {

/// Tolerance used when comparing exponent grids of two series.
inline constexpr double exponent_grid_tolerance = 1e-12;

/// Finite series sum_{k=0}^{K} c_k w^(gamma0 + k delta) on w >= 0.
class GeneralizedPowerSeries {
public:
    GeneralizedPowerSeries(double gamma0, double delta, std::vector<double> coeffs)
        : gamma0_(gamma0), delta_(delta), coeffs_(std::move(coeffs)) {
        if (!(delta_ > 0.0)) {
            throw domain_error("GeneralizedPowerSeries: delta must be positive");
        }
        if (coeffs_.empty()) {
            throw domain_error("GeneralizedPowerSeries: needs at least one coefficient");
        }
    }

    /// Single term c w^exponent. The step is irrelevant for one term; 1 is used.
    static GeneralizedPowerSeries monomial(double exponent, double coeff = 1.0) {
        return {exponent, 1.0, {coeff}};
    }

    [[nodiscard]] double gamma0() const noexcept { return gamma0_; }
    [[nodiscard]] double delta() const noexcept { return delta_; }
    [[nodiscard]] const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] std::size_t truncation_order() const noexcept { return coeffs_.size() - 1; }
    [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }

    [[nodiscard]] double exponent(std::size_t k) const noexcept {
        return gamma0_ + static_cast<double>(k) * delta_;
    }

    /// True when both series live on the same exponent grid (within tolerance).
    [[nodiscard]] bool same_grid(const GeneralizedPowerSeries& other) const noexcept {
        return std::abs(gamma0_ - other.gamma0_) <= exponent_grid_tolerance &&
               std::abs(delta_ - other.delta_) <= exponent_grid_tolerance;
    }

private:
    double gamma0_;
    double delta_;
    std::vector<double> coeffs_;
};

/// a*s1 + b*s2 on a shared exponent grid; the shorter series is zero-padded.
[[nodiscard]] inline GeneralizedPowerSeries linear_combination(double a,
                                                               const GeneralizedPowerSeries& s1,
                                                               double b,
                                                               const GeneralizedPowerSeries& s2) {
    if (!s1.same_grid(s2)) {
        throw domain_error("linear_combination: exponent grids differ");
    }
    std::vector<double> out(std::max(s1.size(), s2.size()), 0.0);
    for (std::size_t k = 0; k < s1.size(); ++k) {
        out[k] += a * s1.coeffs()[k];
    }
    for (std::size_t k = 0; k < s2.size(); ++k) {
        out[k] += b * s2.coeffs()[k];
    }
    return {s1.gamma0(), s1.delta(), std::move(out)};
}

/// Sum of the series at w, ascending in k, compensated.
///
/// Throws domain_error for w < 0, and for w = 0 when the leading exponent is
/// negative (the series is singular there).
[[nodiscard]] inline double eval_series(const GeneralizedPowerSeries& s, double w) {
    if (!(w >= 0.0)) {
        throw domain_error("eval_series: w must be non-negative");
    }
    if (w == 0.0 && s.gamma0() < 0.0) {
        throw domain_error("eval_series: singular at w = 0 (leading exponent " +
                           std::to_string(s.gamma0()) + ")");
    }
    CompensatedSum sum;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double c = s.coeffs()[k];
        if (c == 0.0) {
            continue;
        }
        sum += c * std::pow(w, s.exponent(k));
    }
    return sum.value();
}

/// Parameters (a_i, m_i), i = 1..n, of a multi-index Mittag-Leffler function.
struct MultiIndexMLParams {
    std::vector<double> alphas;
    std::vector<double> mus;

    [[nodiscard]] std::size_t n() const noexcept { return alphas.size(); }

    void validate() const {
        if (alphas.empty() || alphas.size() != mus.size()) {
            throw domain_error("MultiIndexMLParams: alphas and mus must have equal length >= 1");
        }
        double total = 0.0;
        for (double a : alphas) {
            total += a;
        }
        if (!(total > 0.0)) {
            throw domain_error("MultiIndexMLParams: sum of alphas must be positive");
        }
    }
};

/// 1 / prod_i Gamma(a_i k + m_i); zero as soon as one factor sits on a pole.
[[nodiscard]] inline double ml_reciprocal_denominator(const MultiIndexMLParams& p, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 0; i < p.n(); ++i) {
        r *= reciprocal_gamma(p.alphas[i] * static_cast<double>(k) + p.mus[i]);
    }
    return r;
}

namespace detail {

// z^k / prod Gamma(...), switching to log space when the direct product
// would overflow or underflow.
inline double ml_term(const MultiIndexMLParams& p, double z, std::size_t k) {
    const double kd = static_cast<double>(k);
    bool direct = true;
    for (std::size_t i = 0; i < p.n(); ++i) {
        if (p.alphas[i] * kd + p.mus[i] > 150.0) {
            direct = false;
        }
    }
    const double zk = std::pow(z, kd);
    if (direct && std::isfinite(zk) && (zk != 0.0 || z == 0.0)) {
        return zk * ml_reciprocal_denominator(p, k);
    }
    double log_mag = kd * std::log(std::abs(z));
    double sign = (z < 0.0 && (k % 2 == 1)) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < p.n(); ++i) {
        const double arg = p.alphas[i] * kd + p.mus[i];
        if (is_nonpositive_integer(arg)) {
            return 0.0;
        }
        log_mag -= log_gamma(arg);
        sign *= gamma_sign(arg);
    }
    return sign * std::exp(log_mag);
}

}  // namespace detail

/// Settings for eval_multi_index_ml.
struct MLSummationControl {
    double relative_tolerance = 1e-15;
    int confirmations = 3;
    std::size_t max_terms = 10'000;
};

/// Multi-index Mittag-Leffler function at real z.
///
/// Stops once |term| <= tol * |partial sum| for `confirmations` consecutive
/// terms. Leading terms that vanish on gamma poles are not counted, so a run
/// of structural zeros cannot end the summation early. Throws
/// convergence_error when max_terms is reached.
[[nodiscard]] inline double eval_multi_index_ml(const MultiIndexMLParams& p, double z,
                                                const MLSummationControl& ctl = {}) {
    p.validate();
    if (z == 0.0) {
        return ml_reciprocal_denominator(p, 0);
    }
    // First index past which every positive-slope gamma argument is >= 1.
    std::size_t k_min = 0;
    for (std::size_t i = 0; i < p.n(); ++i) {
        if (p.alphas[i] > 0.0 && p.mus[i] < 1.0) {
            k_min = std::max(k_min,
                             static_cast<std::size_t>(std::ceil((1.0 - p.mus[i]) / p.alphas[i])));
        }
    }
    CompensatedSum sum;
    int small_run = 0;
    double last_term = 0.0;
    for (std::size_t k = 0; k < ctl.max_terms; ++k) {
        const double term = detail::ml_term(p, z, k);
        sum += term;
        last_term = term;
        if (k < k_min) {
            continue;
        }
        if (std::abs(term) <= ctl.relative_tolerance * std::abs(sum.value())) {
            if (++small_run >= ctl.confirmations) {
                return sum.value();
            }
        } else {
            small_run = 0;
        }
    }
    throw convergence_error("eval_multi_index_ml: no convergence within " +
                                std::to_string(ctl.max_terms) + " terms at z = " +
                                std::to_string(z),
                            std::abs(last_term));
}

/// Truncated series with c_k = scale^k / prod_i Gamma(a_i k + m_i), k = 0..K,
/// where term k carries w^(gamma0 + k delta). Evaluating it at w gives the
/// K-truncation of w^gamma0 E(scale w^delta).
[[nodiscard]] inline GeneralizedPowerSeries build_series_from_ml(double gamma0, double delta,
                                                                 const MultiIndexMLParams& p,
                                                                 double scale, std::size_t K) {
    p.validate();
    std::vector<double> coeffs;
    coeffs.reserve(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
        coeffs.push_back(detail::ml_term(p, scale, k));
    }
    return {gamma0, delta, std::move(coeffs)};
}

/// Bound on |sum_{k > K} t_k| from the first two omitted terms t1, t2.
///
/// Alternating with non-increasing magnitude gives |t1|; otherwise a
/// geometric bound |t1| / (1 - r) with r = |t2 / t1|, or infinity when r >= 1.
[[nodiscard]] inline double tail_bound_from_terms(double t1, double t2) noexcept {
    const double a1 = std::abs(t1);
    const double a2 = std::abs(t2);
    if (a1 == 0.0 && a2 == 0.0) {
        return 0.0;
    }
    if (t1 * t2 < 0.0 && a2 <= a1) {
        return a1;
    }
    if (a1 == 0.0) {
        return a2;
    }
    const double r = a2 / a1;
    if (r >= 1.0) {
        return std::numeric_limits<double>::infinity();
    }
    return a1 / (1.0 - r);
}

}  // namespace fkg
