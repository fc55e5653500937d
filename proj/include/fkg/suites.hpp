#pragma once

// Named verification suites, as run by `fkg verify --suite <name>`.

#include <array>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "fkg/io.hpp"
#include "fkg/verification.hpp"

namespace fkg {

inline constexpr std::array<double, 5> standard_w_grid = {0.25, 0.5, 1.0, 2.0, 4.0};
inline constexpr std::size_t certification_order = 40;

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace detail

/// Linear solutions for the given N and alphas, lambda = c = 1, K = 40.
[[nodiscard]] inline std::vector<VerificationCase> linear_suite(int N,
                                                                std::span<const double> alphas) {
    std::vector<VerificationCase> out;
    for (double alpha : alphas) {
        const auto spec = build_linear_solution(alpha, 1.0, 1.0, N, certification_order);
        out.push_back(to_case("linear N=" + std::to_string(N) + " alpha=" + detail::fmt(alpha),
                              linear_residual(spec, standard_w_grid)));
    }
    return out;
}

[[nodiscard]] inline std::vector<VerificationCase> nonlinear_suite() {
    std::vector<VerificationCase> out;
    for (double alpha : {0.5, 1.0}) {
        for (double s : {0.5, 2.0, 3.0}) {
            for (double lambda : {0.5, 1.0, 2.0}) {
                const auto tw = build_travelling_wave(alpha, lambda, 1.0, s);
                out.push_back(to_case("travelling alpha=" + detail::fmt(alpha) +
                                          " s=" + detail::fmt(s) + " lambda=" + detail::fmt(lambda),
                                      nonlinear_residual(tw, standard_w_grid),
                                      tw.degenerate ? "degenerate: k = 0" : ""));
            }
        }
    }
    return out;
}

[[nodiscard]] inline std::vector<VerificationCase> classical_limit_suite() {
    std::vector<double> grid;
    for (int i = 1; i <= 20; ++i) {
        grid.push_back(0.5 * i);
    }
    std::vector<VerificationCase> out;
    for (int N : {1, 2, 3, 5}) {
        const auto r = classical_limit_check(N, 1.0, 1.0, grid);
        // For N = 1 both normalizations coincide; otherwise the w^{(N-1)/2}
        // normalization is the one that must pass.
        auto c = to_case("classical-limit N=" + std::to_string(N), r.half_power.report, r.note);
        c.note += " [half-power max dev " + detail::fmt(r.half_power.report.max_abs_residual) +
                  ", full-power max dev " + detail::fmt(r.full_power.report.max_abs_residual) +
                  "]";
        out.push_back(std::move(c));
    }
    return out;
}

[[nodiscard]] inline std::vector<VerificationCase> backend_suite() {
    const auto r = backend_equivalence(20240601, 200);
    return {{"ek backend equivalence (200 draws x 3 points)", r.max_relative_error, 0.0, r.verdict,
             "relative error, tolerance " + detail::fmt(r.tolerance)}};
}

[[nodiscard]] inline std::vector<VerificationCase> integer_power_suite() {
    const auto r = integer_power_consistency();
    return {{"integer powers vs differentiation", r.max_relative_error, 0.0, r.verdict,
             "relative error, tolerance " + detail::fmt(r.tolerance)}};
}

[[nodiscard]] inline std::vector<VerificationCase> damped_wave_suite() {
    std::vector<VerificationCase> out;
    const std::array<double, 3> steps = {1e-2, 5e-3, 2.5e-3};
    for (double sigma : {0.3, 0.6}) {
        const auto conv = damped_wave_convergence(sigma, steps);
        out.push_back({"damped wave sigma=" + detail::fmt(sigma),
                       conv.levels.back().max_abs_residual, 0.0, conv.min_order >= 1.9,
                       "observed order " + detail::fmt(conv.min_order)});
    }
    return out;
}

/// Names accepted by run_suite.
inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "linear", "nd", "nonlinear", "classical-limits", "backend-equivalence",
        "integer-power", "damped-wave", "all"};
    return names;
}

[[nodiscard]] inline std::vector<VerificationCase> run_suite(const std::string& name) {
    const std::array<double, 4> alphas_1d = {0.3, 0.5, 0.7, 1.0};
    const std::array<double, 2> alphas_nd = {0.5, 1.0};
    std::vector<VerificationCase> out;
    auto append = [&out](std::vector<VerificationCase> more) {
        for (auto& c : more) {
            out.push_back(std::move(c));
        }
    };
    const bool all = name == "all";
    if (all || name == "linear") {
        append(linear_suite(1, alphas_1d));
    }
    if (all || name == "nd") {
        for (int N : {2, 3, 5}) {
            append(linear_suite(N, alphas_nd));
        }
    }
    if (all || name == "nonlinear") {
        append(nonlinear_suite());
    }
    if (all || name == "classical-limits") {
        append(classical_limit_suite());
    }
    if (all || name == "backend-equivalence") {
        append(backend_suite());
    }
    if (all || name == "integer-power") {
        append(integer_power_suite());
    }
    if (all || name == "damped-wave") {
        append(damped_wave_suite());
    }
    if (out.empty()) {
        throw domain_error("unknown suite '" + name + "'");
    }
    return out;
}

}  // namespace fkg
