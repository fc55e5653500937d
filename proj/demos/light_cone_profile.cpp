// Profile of the fractional Klein-Gordon solution at a fixed time, for a few
// orders alpha, written as CSV to stdout.
#include <cstdio>
#include <vector>

#include "fkg/fkg.hpp"

int main() {
    const double t = 3.0;
    const double c = 1.0;
    const double lambda = 1.0;
    const std::vector<double> alphas{0.5, 0.75, 1.0};

    std::vector<fkg::KGSolutionSpec> specs;
    for (double alpha : alphas) {
        specs.push_back(fkg::build_linear_solution_for(alpha, lambda, c, 1, c * t));
    }

    std::printf("x");
    for (double alpha : alphas) std::printf(",u_alpha=%g", alpha);
    std::printf("\n");
    for (int i = 0; i <= 58; ++i) {
        const double x = -2.9 + 0.1 * i;
        std::printf("%.2f", x);
        for (const auto& spec : specs) {
            std::printf(",%.10f", fkg::eval_solution(spec, {{x}, t}));
        }
        std::printf("\n");
    }
}
