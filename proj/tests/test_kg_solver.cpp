#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fkg/kg_solver.hpp"

namespace {

using fkg::LightConePoint;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(LinearSolution, OneDimensionalBesselCoefficients) {
    const auto spec = fkg::build_linear_solution(1.0, 1.0, 1.0, 1, 12);
    const auto& c = spec.series().coeffs();
    double factorial = 1.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k > 0) factorial *= static_cast<double>(k);
        const double expected = std::pow(-0.25, static_cast<double>(k)) / (factorial * factorial);
        ASSERT_LT(rel(c[k], expected), 1e-14) << "k=" << k;
    }
    EXPECT_EQ(spec.series().gamma0(), 0.0);
    EXPECT_EQ(spec.series().delta(), 2.0);
}

TEST(LinearSolution, ThreeDimensionalCoefficients) {
    const auto spec = fkg::build_linear_solution(1.0, 1.0, 1.0, 3, 12);
    const auto& c = spec.series().coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double kd = static_cast<double>(k);
        const double expected = std::pow(-0.25, kd) / (std::tgamma(kd + 1) * std::tgamma(kd + 2));
        ASSERT_LT(rel(c[k], expected), 1e-14) << "k=" << k;
    }
}

TEST(LinearSolution, FractionalLeadingCoefficient) {
    const auto spec = fkg::build_linear_solution(0.5, 1.0, 1.0, 1, 5);
    EXPECT_NEAR(spec.series().coeffs()[0], 1.0 / std::numbers::pi, 1e-15);
    EXPECT_EQ(spec.series().gamma0(), -1.0);
    EXPECT_EQ(spec.series().delta(), 1.0);
}

TEST(LinearSolution, CoefficientFormulaProperty) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 60; ++i) {
        const double alpha = 0.05 + 0.95 * u(rng);
        const double lambda = 0.1 + 3.0 * u(rng);
        const double c = 0.2 + 2.0 * u(rng);
        const int N = 1 + static_cast<int>(6 * u(rng));
        const auto spec = fkg::build_linear_solution(alpha, lambda, c, N, 20);
        const double ratio = lambda / (std::pow(2.0, alpha) * std::pow(c, alpha));
        for (std::size_t k = 0; k <= 20; ++k) {
            const double kd = static_cast<double>(k);
            const double expected = std::pow(-1.0, kd) * std::pow(ratio, 2 * kd) /
                                    (std::tgamma(alpha * kd + alpha) *
                                     std::tgamma(alpha * kd + alpha + 0.5 * (N - 1)));
            ASSERT_NEAR(spec.series().coeffs()[k], expected, 1e-12 * std::abs(expected))
                << "alpha=" << alpha << " N=" << N << " k=" << k;
        }
        ASSERT_NEAR(spec.series().gamma0(), 2 * alpha - 2, 1e-15);
        ASSERT_NEAR(spec.series().delta(), 2 * alpha, 1e-15);
    }
}

TEST(LinearSolution, InvalidParameters) {
    EXPECT_THROW(fkg::build_linear_solution(0.0, 1.0, 1.0, 1, 5), fkg::domain_error);
    EXPECT_THROW(fkg::build_linear_solution(1.5, 1.0, 1.0, 1, 5), fkg::domain_error);
    EXPECT_THROW(fkg::build_linear_solution(0.5, 0.0, 1.0, 1, 5), fkg::domain_error);
    EXPECT_THROW(fkg::build_linear_solution(0.5, -1.0, 1.0, 1, 5), fkg::domain_error);
    EXPECT_THROW(fkg::build_linear_solution(0.5, 1.0, 0.0, 1, 5), fkg::domain_error);
    EXPECT_THROW(fkg::build_linear_solution(0.5, 1.0, 1.0, 0, 5), fkg::domain_error);
}

TEST(TruncationOrder, TailBelowTarget) {
    for (double alpha : {0.3, 0.5, 1.0}) {
        for (double w_max : {0.5, 4.0, 10.0}) {
            const auto spec = fkg::build_linear_solution_for(alpha, 1.0, 1.0, 1, w_max);
            EXPECT_GE(spec.truncation_order(), fkg::min_truncation_order);
            EXPECT_LE(spec.truncation_order(), fkg::max_truncation_order);
            EXPECT_LT(spec.tail_bound(w_max), fkg::default_tail_target) << alpha << " " << w_max;
        }
    }
    EXPECT_EQ(fkg::select_truncation_order(1.0, 1.0, 1.0, 1, 0.0), fkg::min_truncation_order);
}

TEST(EvalSolution, Examples) {
    const auto spec = fkg::build_linear_solution_for(1.0, 1.0, 1.0, 1, 10.0);
    EXPECT_EQ(fkg::eval_solution(spec, {{0.0}, 0.0}), 1.0);
    EXPECT_NEAR(fkg::eval_solution(spec, {{0.0}, 2.0}), 0.22389077914123567, 1e-14);
    EXPECT_THROW((void)fkg::eval_solution(spec, {{3.0}, 1.0}), fkg::domain_error);
    EXPECT_THROW((void)fkg::eval_solution(spec, {{0.0, 0.0}, 1.0}), fkg::domain_error);
}

TEST(EvalSolution, OnConeSingularity) {
    const auto frac = fkg::build_linear_solution(0.5, 1.0, 1.0, 1, 20);
    EXPECT_THROW((void)fkg::eval_solution(frac, {{1.0}, 1.0}), fkg::domain_error);
    const auto classical = fkg::build_linear_solution(1.0, 1.0, 1.0, 1, 20);
    EXPECT_EQ(fkg::eval_solution(classical, {{1.0}, 1.0}), 1.0);
    EXPECT_THROW((void)fkg::light_cone_w(std::vector<double>{1.0}, 1.0, 0.0), fkg::domain_error);
}

TEST(EvalSolution, LightConeSymmetry) {
    const auto spec = fkg::build_linear_solution(0.7, 1.3, 1.1, 3, 40);
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const std::vector<double> x{u(rng), u(rng), u(rng)};
        const double t = 2.5 + u(rng);
        const double base = fkg::eval_solution(spec, {x, t});
        // Reflection is exact.
        ASSERT_EQ(fkg::eval_solution(spec, {{-x[0], -x[1], -x[2]}, t}), base);
        ASSERT_EQ(fkg::eval_solution(spec, {{-x[0], x[1], x[2]}, t}), base);
        // A rotation about the third axis changes w only by rounding.
        const double th = std::numbers::pi * u(rng);
        const std::vector<double> r{std::cos(th) * x[0] - std::sin(th) * x[1],
                                    std::sin(th) * x[0] + std::cos(th) * x[1], x[2]};
        ASSERT_NEAR(fkg::eval_solution(spec, {r, t}), base, 1e-13 * std::max(1.0, std::abs(base)));
        // Points sharing w share u.
        const double w = LightConePoint{x, t}.w(spec.c());
        ASSERT_NEAR(spec.eval_w(w), base, 1e-15 * std::max(1.0, std::abs(base)));
    }
}

TEST(ClassicalReduction, OneDimensionalMatchesJ0) {
    // Parameters with lambda / c <= 1, so lambda w / c stays in [0, 10].
    for (double lambda : {0.5, 1.0, 2.0}) {
        for (double c : {2.0, 3.0}) {
            const double w_max = 10.0;
            const auto spec = fkg::build_linear_solution_for(1.0, lambda, c, 1, w_max);
            for (int i = 0; i <= 20; ++i) {
                const double w = w_max * i / 20.0;
                const double expected = std::cyl_bessel_j(0.0, lambda * w / c);
                ASSERT_NEAR(spec.eval_w(w), expected, 1e-10) << lambda << " " << c << " " << w;
            }
        }
    }
}

TEST(ClassicalReduction, HigherDimensionsUseHalfPowerNormalization) {
    // u = (2c/lambda)^nu J_nu(lambda w / c) / w^nu with nu = (N-1)/2.
    for (int N : {2, 3, 4, 5}) {
        const double nu = 0.5 * (N - 1);
        const double lambda = 1.2;
        const double c = 1.5;
        const auto spec = fkg::build_linear_solution_for(1.0, lambda, c, N, 10.0);
        for (int i = 1; i <= 20; ++i) {
            const double w = 0.5 * i;
            const double expected =
                std::pow(2 * c / lambda, nu) * std::cyl_bessel_j(nu, lambda * w / c) / std::pow(w, nu);
            ASSERT_NEAR(spec.eval_w(w), expected, 1e-10) << "N=" << N << " w=" << w;
        }
    }
}

TEST(DampedWave, Examples) {
    EXPECT_NEAR(fkg::damped_wave_solution(0.0, 0.0, 2.0), 0.22389077914123567, 1e-13);
    EXPECT_EQ(fkg::damped_wave_solution(0.6, 0.0, 0.0), 1.0);
    EXPECT_NEAR(fkg::damped_wave_solution(0.6, 0.0, 1.0), 0.46445234666867356, 1e-14);
    EXPECT_NEAR(fkg::damped_wave_solution(0.6, 0.0, 1.0), std::exp(-0.6) * std::cyl_bessel_j(0.0, 0.8),
                1e-14);
}

TEST(DampedWave, UnsupportedRegime) {
    EXPECT_THROW((void)fkg::damped_wave_solution(1.0, 0.0, 1.0), fkg::unsupported_regime_error);
    EXPECT_THROW((void)fkg::damped_wave_solution(-1.5, 0.0, 1.0), fkg::unsupported_regime_error);
    EXPECT_THROW(fkg::DampedWave(2.0, 1.0), fkg::unsupported_regime_error);
}

TEST(TravellingWave, Meron) {
    const auto tw = fkg::build_travelling_wave(1.0, 1.0, 1.0, 3.0);
    EXPECT_EQ(tw.beta, -1.0);
    EXPECT_NEAR(tw.k_coeff, 1.0, 1e-15);
    EXPECT_FALSE(tw.degenerate);
    for (double x : {-0.5, 0.0, 0.3, 0.9}) {
        const double t = 1.0;
        EXPECT_NEAR(tw.eval(x, t), 1.0 / std::sqrt(t * t - x * x), 1e-14);
    }
    EXPECT_THROW((void)tw.eval(1.0, 1.0), fkg::domain_error);
    EXPECT_THROW((void)tw.eval(2.0, 1.0), fkg::domain_error);
}

TEST(TravellingWave, ClassicalClosedForm) {
    for (double lambda : {0.5, 1.0, 3.0}) {
        for (double s : {-1.0, 0.5, 2.0, 3.0, 5.0, 7.5}) {
            const auto tw = fkg::build_travelling_wave(1.0, lambda, 1.0, s);
            const double expected = std::pow(4.0 / (lambda * (s - 1) * (s - 1)), 1.0 / (s - 1));
            ASSERT_LT(rel(tw.k_coeff, expected), 1e-13) << "lambda=" << lambda << " s=" << s;
            ASSERT_EQ(tw.beta, 2.0 / (1.0 - s));
        }
    }
}

TEST(TravellingWave, FractionalValue) {
    const auto tw = fkg::build_travelling_wave(0.5, 1.0, 1.0, 3.0);
    EXPECT_EQ(tw.beta, -0.5);
    EXPECT_NEAR(tw.k_coeff, 0.47798879748612500, 1e-15);
    const double g = std::tgamma(0.75) / std::tgamma(0.25);
    EXPECT_NEAR(tw.k_coeff, std::sqrt(2 * g * g), 1e-15);
}

TEST(TravellingWave, Errors) {
    EXPECT_THROW((void)fkg::build_travelling_wave(1.0, 1.0, 1.0, 1.0), fkg::domain_error);
    EXPECT_THROW((void)fkg::build_travelling_wave(1.0, 0.0, 1.0, 3.0), fkg::domain_error);
    EXPECT_THROW((void)fkg::build_travelling_wave(1.0, 1.0, -1.0, 3.0), fkg::domain_error);
    // Negative base with exponent 1/(s-1) = 1/2.
    EXPECT_THROW((void)fkg::build_travelling_wave(1.0, -1.0, 1.0, 3.0), fkg::complex_result_error);
    // Odd root of a negative base is real: s = 2 gives exponent 1.
    EXPECT_NEAR(fkg::build_travelling_wave(1.0, -1.0, 1.0, 2.0).k_coeff, -4.0, 1e-14);
    // alpha = 1/2, s = 0: 1 - alpha + alpha/(1-s) = 1, beta = 1, A = 4^{1/2} (Gamma(1.5)/Gamma(1))^2.
    const auto tw = fkg::build_travelling_wave(0.5, 1.0, 1.0, 0.0);
    EXPECT_NEAR(tw.k_coeff, 1.0 / (std::numbers::pi / 2), 1e-14);
}

TEST(TravellingWave, ExponentLaw) {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int i = 0; i < 400; ++i) {
        const double alpha = 0.05 + 0.95 * u(rng);
        const double s = -3.0 + 9.0 * u(rng);
        if (std::abs(s - 1.0) < 1e-3) continue;
        const double beta = 2 * alpha / (1 - s);
        if (beta / 2 + 1 <= 0.0) continue;
        for (int N : {1, 2, 3}) {
            const auto out = fkg::frac_power_apply(fkg::bessel_type_operator(N), alpha,
                                                   fkg::GeneralizedPowerSeries::monomial(beta));
            ASSERT_NEAR(out.gamma0(), beta * s, 1e-12 * std::max(1.0, std::abs(beta * s)));
            ++checked;
        }
    }
    EXPECT_GT(checked, 600);
}

TEST(TravellingWave, BalancesOperatorAgainstPowerLaw) {
    for (double alpha : {0.3, 0.5, 0.8, 1.0}) {
        for (double s : {-2.0, 0.5, 3.0, 5.0}) {
            const auto tw = fkg::build_travelling_wave(alpha, 1.0, 1.0, s);
            const double lhs = fkg::bessel_power_coefficient(alpha, tw.beta) * tw.k_coeff;
            const double rhs = std::pow(tw.k_coeff, s);
            ASSERT_NEAR(lhs, rhs, 1e-12 * std::abs(rhs)) << alpha << " " << s;
        }
    }
}

// Dense scan plus bisection on A k - lambda k^s - gamma, written independently
// of the library root finder.
std::vector<double> scan_roots(double A, double lambda, double s, double gamma, double k_max) {
    auto f = [&](double k) { return A * k - lambda * std::pow(k, s) - gamma; };
    std::vector<double> roots;
    const int n = 200000;
    double a = k_max / n;
    for (int i = 2; i <= n; ++i) {
        const double b = k_max * i / n;
        if ((f(a) < 0) != (f(b) < 0)) {
            double lo = a, hi = b;
            for (int j = 0; j < 100; ++j) {
                const double mid = 0.5 * (lo + hi);
                ((f(mid) < 0) == (f(lo) < 0) ? lo : hi) = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        a = b;
    }
    return roots;
}

TEST(NonhomogeneousWave, ZeroSourceReproducesHomogeneous) {
    for (double alpha : {0.5, 1.0}) {
        for (double s : {0.5, 3.0, 5.0}) {
            const auto h = fkg::build_travelling_wave(alpha, 1.0, 1.0, s);
            const auto nh = fkg::build_nonhomogeneous_wave(alpha, 1.0, 0.0, 1.0, s);
            EXPECT_NEAR(nh.spec.k_coeff, h.k_coeff, 1e-12 * h.k_coeff) << alpha << " " << s;
            EXPECT_EQ(nh.k_max, 10.0 * h.k_coeff);
        }
    }
}

TEST(NonhomogeneousWave, RootsMatchScan) {
    const auto nh = fkg::build_nonhomogeneous_wave(1.0, 1.0, 0.1, 1.0, 3.0);
    const auto oracle = scan_roots(1.0, 1.0, 3.0, 0.1, nh.k_max);
    ASSERT_EQ(nh.roots.size(), oracle.size());
    ASSERT_EQ(oracle.size(), 2u);
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        EXPECT_NEAR(nh.roots[i], oracle[i], 1e-12);
    }
    EXPECT_NEAR(nh.roots[0], 0.10103125788101082, 1e-13);
    EXPECT_NEAR(nh.roots[1], 0.94564927392359144, 1e-13);
    // The root continuing the homogeneous k = 1 is reported.
    EXPECT_EQ(nh.spec.k_coeff, nh.roots[1]);
    EXPECT_EQ(nh.spec.gamma_src, 0.1);
    for (double k : nh.roots) {
        EXPECT_LE(std::abs(fkg::nonhomogeneous_balance(nh.spec, k)), 1e-12);
    }
}

TEST(NonhomogeneousWave, FractionalRootsMatchScan) {
    const double alpha = 0.5, s = 3.0, gamma = 0.02;
    const auto nh = fkg::build_nonhomogeneous_wave(alpha, 1.0, gamma, 1.0, s);
    const auto oracle = scan_roots(nh.spec.operator_coeff, 1.0, s, gamma, nh.k_max);
    ASSERT_EQ(nh.roots.size(), oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        EXPECT_NEAR(nh.roots[i], oracle[i], 1e-12 * std::max(1.0, oracle[i]));
    }
}

TEST(NonhomogeneousWave, Errors) {
    EXPECT_THROW((void)fkg::build_nonhomogeneous_wave(1.0, 1.0, 0.1, 1.0, 1.0), fkg::domain_error);
    // k - k^3 never reaches 1 for k > 0.
    EXPECT_THROW((void)fkg::build_nonhomogeneous_wave(1.0, 1.0, 1.0, 1.0, 3.0), fkg::no_root_error);
}

}  // namespace
