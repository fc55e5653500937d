#pragma once

// Residual certification of the closed-form solutions and oracle
// cross-checks of the operator backends.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fkg/ek_operators.hpp"
#include "fkg/kg_solver.hpp"
#include "fkg/scalar_kernels.hpp"
#include "fkg/series.hpp"

namespace fkg {

struct ResidualReport {
    double max_abs_residual = 0.0;
    /// (w, residual) in grid order.
    std::vector<std::pair<double, double>> per_point_residuals;
    double truncation_tail_bound = 0.0;
    double tolerance_used = 0.0;
    bool verdict = false;

    /// Pass iff max_abs_residual <= max(tolerance_used, 10 * truncation_tail_bound).
    void finalize() {
        max_abs_residual = 0.0;
        for (const auto& [w, r] : per_point_residuals) {
            max_abs_residual = std::max(max_abs_residual, std::abs(r));
        }
        verdict = max_abs_residual <= std::max(tolerance_used, 10.0 * truncation_tail_bound);
    }
};

/// Certifies (L_N)^alpha u + (lambda^2/c^{2alpha}) u = 0 for the truncated
/// series. The operator acts exactly term by term, so what remains is the
/// image of the truncation; it is compared with the series tail bound.
[[nodiscard]] inline ResidualReport linear_residual(const KGSolutionSpec& spec,
                                                    std::span<const double> w_grid,
                                                    double tolerance = 1e-10) {
    const GeneralizedPowerSeries image =
        frac_power_apply(spec.hyper_bessel(), spec.alpha(), spec.series());
    const double mass = spec.mass_term();
    ResidualReport report;
    report.tolerance_used = tolerance;
    for (double w : w_grid) {
        if (!(w > 0.0)) {
            throw domain_error("linear_residual: grid points must be positive");
        }
        const double r = eval_series(image, w) + mass * eval_series(spec.series(), w);
        report.per_point_residuals.emplace_back(w, r);
        report.truncation_tail_bound = std::max(report.truncation_tail_bound, spec.tail_bound(w));
    }
    report.finalize();
    return report;
}

/// Pointwise A k w^{beta-2alpha} - lambda k^s w^{beta s} - gamma_src w^{beta s},
/// divided by the largest of the three magnitudes (zero when all vanish).
/// A single-monomial identity, so the residual is rounding only.
[[nodiscard]] inline ResidualReport nonlinear_residual(const TravellingWaveSpec& tw,
                                                       std::span<const double> w_grid,
                                                       double tolerance = 1e-12) {
    ResidualReport report;
    report.tolerance_used = tolerance;
    for (double w : w_grid) {
        if (!(w > 0.0)) {
            throw domain_error("nonlinear_residual: grid points must be positive");
        }
        const double lhs = tw.operator_coeff * tw.k_coeff * std::pow(w, tw.beta - 2.0 * tw.alpha);
        const double nonlinear = tw.lambda * std::pow(tw.k_coeff, tw.s) * std::pow(w, tw.beta * tw.s);
        const double source = tw.gamma_src * std::pow(w, tw.beta * tw.s);
        const double scale = std::max({std::abs(lhs), std::abs(nonlinear), std::abs(source)});
        const double r = scale == 0.0 ? 0.0 : (lhs - nonlinear - source) / scale;
        report.per_point_residuals.emplace_back(w, r);
    }
    report.finalize();
    return report;
}

/// Agreement of the alpha = 1 solution with a Bessel reference under one
/// power-of-w normalization.
struct NormalizationCheck {
    double power = 0.0;
    double fitted_constant = 0.0;
    ResidualReport report;
};

struct ClassicalLimitReport {
    int N = 1;
    double bessel_order = 0.0;
    /// Reference J_nu(lambda w / c) / w^{(N-1)/2}.
    NormalizationCheck half_power;
    /// Reference J_nu(lambda w / c) / w^{N-1}.
    NormalizationCheck full_power;
    /// Exact constant (2c/lambda)^nu of the w^{(N-1)/2} normalization.
    double analytic_constant = 0.0;
    /// "half-power", "full-power", "both" or "none".
    std::string passing;
    std::string note;
};

/// J_nu by its ascending series, or the elementary closed form for nu = 1/2.
[[nodiscard]] inline double bessel_reference(double nu, double z) {
    if (nu == 0.5) {
        return std::sqrt(2.0 / (std::numbers::pi * z)) * std::sin(z);
    }
    return bessel_j(nu, z);
}

/// Compares the alpha = 1 solution against J_{(N-1)/2}(lambda w / c) / w^p
/// for p = (N-1)/2 and p = N-1, fitting the constant at the grid point with
/// the largest reference magnitude. Grid points must be positive.
[[nodiscard]] inline ClassicalLimitReport classical_limit_check(int N, double lambda, double c,
                                                                std::span<const double> w_grid,
                                                                double tolerance = 1e-9) {
    if (w_grid.empty()) {
        throw domain_error("classical_limit_check: empty grid");
    }
    const double w_max = *std::max_element(w_grid.begin(), w_grid.end());
    const KGSolutionSpec spec = build_linear_solution_for(1.0, lambda, c, N, w_max, 1e-16);
    const double nu = 0.5 * (N - 1);

    double tail = 0.0;
    std::vector<double> u(w_grid.size());
    for (std::size_t i = 0; i < w_grid.size(); ++i) {
        if (!(w_grid[i] > 0.0)) {
            throw domain_error("classical_limit_check: grid points must be positive");
        }
        u[i] = spec.eval_w(w_grid[i]);
        tail = std::max(tail, spec.tail_bound(w_grid[i]));
    }

    auto check = [&](double power) {
        NormalizationCheck out;
        out.power = power;
        std::vector<double> ref(w_grid.size());
        std::size_t fit = 0;
        for (std::size_t i = 0; i < w_grid.size(); ++i) {
            ref[i] = bessel_reference(nu, lambda * w_grid[i] / c) / std::pow(w_grid[i], power);
            if (std::abs(ref[i]) > std::abs(ref[fit])) {
                fit = i;
            }
        }
        out.fitted_constant = u[fit] / ref[fit];
        out.report.tolerance_used = tolerance;
        out.report.truncation_tail_bound = tail;
        for (std::size_t i = 0; i < w_grid.size(); ++i) {
            out.report.per_point_residuals.emplace_back(w_grid[i],
                                                        u[i] - out.fitted_constant * ref[i]);
        }
        out.report.finalize();
        return out;
    };

    ClassicalLimitReport report;
    report.N = N;
    report.bessel_order = nu;
    report.half_power = check(nu);
    report.full_power = check(2.0 * nu);
    report.analytic_constant = std::pow(2.0 * c / lambda, nu);
    const bool half = report.half_power.report.verdict;
    const bool full = report.full_power.report.verdict;
    report.passing = half && full ? "both" : half ? "half-power" : full ? "full-power" : "none";
    if (N == 1) {
        report.note = "N = 1: both normalizations reduce to J_0(lambda w / c)";
    } else if (half && !full) {
        report.note = "J_{(N-1)/2}(lambda w/c) / w^{(N-1)/2} matches; the w^{N-1} normalization "
                      "does not solve u'' + (N/w) u' = -(lambda/c)^2 u";
    } else {
        report.note = "unexpected outcome: half-power " + std::string(half ? "pass" : "fail") +
                      ", full-power " + std::string(full ? "pass" : "fail");
    }
    return report;
}

/// u'' + (N/w) u' + (lambda/c)^2 u at alpha = 1 by central differences,
/// independent of the Erdelyi-Kober machinery.
[[nodiscard]] inline std::vector<double> finite_difference_bessel_residual(
    const KGSolutionSpec& spec, std::span<const double> w_grid, double h) {
    if (spec.alpha() != 1.0) {
        throw domain_error("finite_difference_bessel_residual: requires alpha = 1");
    }
    const double mass = spec.mass_term();
    std::vector<double> out;
    out.reserve(w_grid.size());
    for (double w : w_grid) {
        const double up = spec.eval_w(w + h);
        const double mid = spec.eval_w(w);
        const double dn = spec.eval_w(w - h);
        const double d2 = (up - 2.0 * mid + dn) / (h * h);
        const double d1 = (up - dn) / (2.0 * h);
        out.push_back(d2 + spec.N() / w * d1 + mass * mid);
    }
    return out;
}

/// Finite-difference residual of u_tt - u_xx + 2 sigma u_t + u for the damped
/// wave on an interior grid at one step size.
struct DampedWaveResidual {
    double h = 0.0;
    double max_abs_residual = 0.0;
};

struct DampedWaveConvergence {
    double sigma = 0.0;
    std::vector<DampedWaveResidual> levels;
    /// log2 of successive residual ratios divided by log2 of the step ratio.
    std::vector<double> observed_orders;
    double min_order = 0.0;
};

/// Interior grid x in [-0.5, 0.5], t in [1, 2], 5 x 5 points.
[[nodiscard]] inline double damped_wave_fd_residual(const DampedWave& u, double h) {
    double worst = 0.0;
    const double sigma = u.sigma();
    for (int i = 0; i < 5; ++i) {
        const double x = -0.5 + 0.25 * i;
        for (int j = 0; j < 5; ++j) {
            const double t = 1.0 + 0.25 * j;
            const double c0 = u(x, t);
            const double tp = u(x, t + h);
            const double tm = u(x, t - h);
            const double xp = u(x + h, t);
            const double xm = u(x - h, t);
            const double u_tt = (tp - 2.0 * c0 + tm) / (h * h);
            const double u_xx = (xp - 2.0 * c0 + xm) / (h * h);
            const double u_t = (tp - tm) / (2.0 * h);
            worst = std::max(worst, std::abs(u_tt - u_xx + 2.0 * sigma * u_t + c0));
        }
    }
    return worst;
}

[[nodiscard]] inline DampedWaveConvergence damped_wave_convergence(double sigma,
                                                                   std::span<const double> steps) {
    const DampedWave u(sigma, 2.5);
    DampedWaveConvergence out;
    out.sigma = sigma;
    for (double h : steps) {
        out.levels.push_back({h, damped_wave_fd_residual(u, h)});
    }
    out.min_order = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < out.levels.size(); ++i) {
        const auto& a = out.levels[i - 1];
        const auto& b = out.levels[i];
        const double order =
            std::log(a.max_abs_residual / b.max_abs_residual) / std::log(a.h / b.h);
        out.observed_orders.push_back(order);
        out.min_order = std::min(out.min_order, order);
    }
    return out;
}

/// One random draw of the quadrature-vs-gamma-ratio comparison.
struct BackendSample {
    EKParams params;
    double beta = 0.0;
    double x = 0.0;
    double quadrature = 0.0;
    double closed_form = 0.0;
    double relative_error = 0.0;
};

struct BackendEquivalenceReport {
    std::vector<BackendSample> samples;
    double max_relative_error = 0.0;
    double tolerance = 0.0;
    bool verdict = false;
};

/// Draws `count` admissible (m in {1,2,3}, eta in [0,3], alpha_ek in (0,2],
/// beta in [0,6]) and compares the two backends on u^beta at x = 0.5, 1, 2.
[[nodiscard]] inline BackendEquivalenceReport backend_equivalence(std::uint64_t seed,
                                                                  std::size_t count,
                                                                  double tolerance = 1e-8) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_m(1, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    BackendEquivalenceReport report;
    report.tolerance = tolerance;
    for (std::size_t i = 0; i < count; ++i) {
        const EKParams p{static_cast<double>(pick_m(rng)), 3.0 * unit(rng),
                         2.0 * (1.0 - unit(rng))};
        const double beta = 6.0 * unit(rng);
        const double coeff = ek_monomial(p, beta);
        for (double x : {0.5, 1.0, 2.0}) {
            BackendSample s{p, beta, x};
            s.quadrature = ek_quadrature(p, [beta](double u) { return std::pow(u, beta); }, x).value;
            s.closed_form = coeff * std::pow(x, beta);
            s.relative_error = std::abs(s.quadrature - s.closed_form) / std::abs(s.closed_form);
            report.max_relative_error = std::max(report.max_relative_error, s.relative_error);
            report.samples.push_back(s);
        }
    }
    report.verdict = report.max_relative_error <= tolerance;
    return report;
}

/// Largest relative gap between L^r by gamma ratios and by differentiation.
struct IntegerPowerCase {
    std::string operator_name;
    int r = 0;
    double beta = 0.0;
    double fractional = 0.0;
    double differentiated = 0.0;
    double relative_error = 0.0;
};

struct IntegerPowerReport {
    std::vector<IntegerPowerCase> cases;
    double max_relative_error = 0.0;
    double tolerance = 0.0;
    bool verdict = false;
};

/// Relative difference, measured against max(|a|, |b|, 1) so that exact
/// zeros on both sides compare equal.
[[nodiscard]] inline double scaled_difference(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

[[nodiscard]] inline IntegerPowerReport integer_power_consistency(double tolerance = 1e-11) {
    IntegerPowerReport report;
    report.tolerance = tolerance;
    for (int N : {1, 2, 3, 5}) {
        const HyperBesselSpec h = bessel_type_operator(N);
        for (int r : {1, 2}) {
            for (double beta : {2.0, 4.0, 6.0}) {
                const auto mono = GeneralizedPowerSeries::monomial(beta);
                const auto frac = frac_power_apply(h, r, mono);
                const auto exact = integer_power_oracle(h, r, mono);
                IntegerPowerCase c{"N=" + std::to_string(N), r, beta, frac.coeffs()[0],
                                   exact.coeffs()[0]};
                c.relative_error = scaled_difference(c.fractional, c.differentiated);
                if (std::abs(frac.gamma0() - exact.gamma0()) > exponent_grid_tolerance) {
                    c.relative_error = std::numeric_limits<double>::infinity();
                }
                report.max_relative_error = std::max(report.max_relative_error, c.relative_error);
                report.cases.push_back(std::move(c));
            }
        }
    }
    report.verdict = report.max_relative_error <= tolerance;
    return report;
}

}  // namespace fkg
