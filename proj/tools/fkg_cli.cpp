// fkg: evaluate fractional Klein-Gordon solutions on grids, run the
// verification suites and tabulate Erdelyi-Kober monomial coefficients.
//
// Exit status: 0 success, 1 numerical failure, 2 domain error,
// 3 verification failure, 64 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fkg/fkg.hpp"
#include "fkg/io.hpp"
#include "fkg/suites.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_numerical = 1;
constexpr int exit_domain = 2;
constexpr int exit_verification = 3;
constexpr int exit_usage = 64;

struct GridOptions {
    double x_min = 0.0;
    double x_max = 0.0;
    int x_count = 1;
    std::optional<double> t;
    double t_min = 0.0;
    double t_max = 0.0;
    int t_count = 1;
    std::vector<double> w_grid;
};

struct RunConfig {
    std::string format = "csv";
    std::string output = "-";
    double alpha = 1.0;
    double lambda = 1.0;
    double c = 1.0;
    int N = 1;
    double s = 3.0;
    double sigma = 0.0;
    double gamma_src = 0.0;
    std::optional<std::size_t> K;
    std::vector<double> x_rest;
    GridOptions grid;
    std::string suite = "all";
    std::vector<double> ek_m = {1.0, 2.0};
    std::vector<double> ek_eta = {0.0};
    std::vector<double> ek_alpha = {-1.0, -0.5, 0.5, 1.0};
    std::vector<double> ek_beta = {0.0, 1.0, 2.0};
};

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 1) {
        throw fkg::domain_error("grid counts must be >= 1");
    }
    if (count == 1) {
        return {lo};
    }
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(count));
    const double n = count - 1;
    v.push_back(lo);
    for (int i = 1; i < count - 1; ++i) {
        v.push_back(((n - i) * lo + i * hi) / n);
    }
    v.push_back(hi);
    return v;
}

// (x, t) grid, t outer and x inner.
struct SpaceTimeGrid {
    std::vector<double> xs;
    std::vector<double> ts;
};

SpaceTimeGrid make_grid(const GridOptions& g) {
    SpaceTimeGrid out;
    out.xs = linspace(g.x_min, g.x_max, g.x_count);
    out.ts = g.t ? std::vector<double>{*g.t} : linspace(g.t_min, g.t_max, g.t_count);
    return out;
}

void add_grid_options(CLI::App* cmd, GridOptions& g, bool with_w_grid) {
    cmd->add_option("--x-min", g.x_min, "Smallest x (first coordinate)");
    cmd->add_option("--x-max", g.x_max, "Largest x (first coordinate)");
    cmd->add_option("--x-count", g.x_count, "Number of x samples")->check(CLI::PositiveNumber);
    auto* t = cmd->add_option("--t", g.t, "Single time value");
    cmd->add_option("--t-min", g.t_min, "Smallest t")->excludes(t);
    cmd->add_option("--t-max", g.t_max, "Largest t")->excludes(t);
    cmd->add_option("--t-count", g.t_count, "Number of t samples")
        ->check(CLI::PositiveNumber)
        ->excludes(t);
    if (with_w_grid) {
        cmd->add_option("--w-grid", g.w_grid, "Evaluate directly at these w values instead")
            ->delimiter(',');
    }
}

void add_output_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("-o,--output", cfg.output, "Output path ('-' for stdout)");
}

double max_w(const SpaceTimeGrid& g, const std::vector<double>& x_rest, double c) {
    double w_max = 0.0;
    for (double t : g.ts) {
        for (double x : g.xs) {
            std::vector<double> pt{x};
            pt.insert(pt.end(), x_rest.begin(), x_rest.end());
            w_max = std::max(w_max, fkg::light_cone_w(pt, t, c));
        }
    }
    return w_max;
}

fkg::Table eval_linear(const RunConfig& cfg, int N) {
    std::vector<double> x_rest = cfg.x_rest;
    if (N > 1 && x_rest.empty()) {
        x_rest.assign(static_cast<std::size_t>(N - 1), 0.0);
    }
    if (static_cast<int>(x_rest.size()) != N - 1) {
        throw CLI::ValidationError("--x-rest", "needs exactly N-1 values");
    }
    fkg::Table table;
    if (!cfg.grid.w_grid.empty()) {
        double w_max = 0.0;
        for (double w : cfg.grid.w_grid) {
            w_max = std::max(w_max, w);
        }
        const auto spec = cfg.K ? fkg::build_linear_solution(cfg.alpha, cfg.lambda, cfg.c, N, *cfg.K)
                                : fkg::build_linear_solution_for(cfg.alpha, cfg.lambda, cfg.c, N, w_max);
        table.columns = {"w", "u"};
        for (double w : cfg.grid.w_grid) {
            table.rows.push_back({w, spec.eval_w(w)});
        }
        return table;
    }
    const SpaceTimeGrid g = make_grid(cfg.grid);
    const double w_max = max_w(g, x_rest, cfg.c);
    const auto spec = cfg.K ? fkg::build_linear_solution(cfg.alpha, cfg.lambda, cfg.c, N, *cfg.K)
                            : fkg::build_linear_solution_for(cfg.alpha, cfg.lambda, cfg.c, N, w_max);
    if (N == 1) {
        table.columns = {"x"};
    } else {
        for (int i = 1; i <= N; ++i) {
            table.columns.push_back("x" + std::to_string(i));
        }
    }
    table.columns.insert(table.columns.end(), {"t", "w", "u"});
    for (double t : g.ts) {
        for (double x : g.xs) {
            fkg::LightConePoint pt{{x}, t};
            pt.x.insert(pt.x.end(), x_rest.begin(), x_rest.end());
            const double w = pt.w(cfg.c);
            std::vector<double> row = pt.x;
            row.insert(row.end(), {t, w, fkg::eval_solution(spec, pt)});
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

fkg::Table eval_nonlinear(const RunConfig& cfg) {
    fkg::TravellingWaveSpec tw;
    if (cfg.gamma_src != 0.0) {
        tw = fkg::build_nonhomogeneous_wave(cfg.alpha, cfg.lambda, cfg.gamma_src, cfg.c, cfg.s).spec;
    } else {
        tw = fkg::build_travelling_wave(cfg.alpha, cfg.lambda, cfg.c, cfg.s);
    }
    fkg::Table table;
    if (!cfg.grid.w_grid.empty()) {
        table.columns = {"w", "u"};
        for (double w : cfg.grid.w_grid) {
            table.rows.push_back({w, tw.eval_w(w)});
        }
        return table;
    }
    const SpaceTimeGrid g = make_grid(cfg.grid);
    table.columns = {"x", "t", "w", "u"};
    for (double t : g.ts) {
        for (double x : g.xs) {
            const double xs[1] = {x};
            const double w = fkg::light_cone_w(xs, t, cfg.c);
            table.rows.push_back({x, t, w, tw.eval_w(w)});
        }
    }
    return table;
}

fkg::Table eval_damped(const RunConfig& cfg) {
    const SpaceTimeGrid g = make_grid(cfg.grid);
    const double w_max = max_w(g, {}, 1.0);
    const fkg::DampedWave u(cfg.sigma, w_max);
    fkg::Table table;
    table.columns = {"x", "t", "w", "u"};
    for (double t : g.ts) {
        for (double x : g.xs) {
            const double xs[1] = {x};
            table.rows.push_back({x, t, fkg::light_cone_w(xs, t, 1.0), u(x, t)});
        }
    }
    return table;
}

fkg::Table ek_table(const RunConfig& cfg) {
    fkg::Table table;
    table.columns = {"m", "eta", "alpha_ek", "beta", "coefficient"};
    for (double m : cfg.ek_m) {
        for (double eta : cfg.ek_eta) {
            for (double a : cfg.ek_alpha) {
                for (double beta : cfg.ek_beta) {
                    const fkg::EKParams p{m, eta, a};
                    if (!(m > 0.0) || !(eta + beta / m + 1.0 > 0.0)) {
                        std::cerr << "ek-table: skipping inadmissible (m=" << m << ", eta=" << eta
                                  << ", beta=" << beta << ")\n";
                        continue;
                    }
                    table.rows.push_back({m, eta, a, beta, fkg::ek_monomial(p, beta)});
                }
            }
        }
    }
    return table;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file " + cfg.output);
    }
    out << text;
}

std::string render(const RunConfig& cfg, const fkg::Table& table) {
    std::ostringstream os;
    if (cfg.format == "json") {
        fkg::write_json(os, table);
    } else {
        fkg::write_csv(os, table);
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional Klein-Gordon solutions, Erdelyi-Kober operators and residual checks"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* lin = app.add_subcommand("eval-linear", "Linear 1-D solution on an (x, t) grid");
    lin->add_option("--alpha", cfg.alpha, "Fractional order in (0, 1]");
    lin->add_option("--lambda", cfg.lambda, "lambda > 0");
    lin->add_option("--c", cfg.c, "Wave speed c > 0");
    lin->add_option("--K", cfg.K, "Truncation order (default: automatic)");
    add_grid_options(lin, cfg.grid, true);
    add_output_options(lin, cfg);

    auto* nd = app.add_subcommand("eval-nd", "Linear N-D solution along the x1 axis");
    nd->add_option("--alpha", cfg.alpha, "Fractional order in (0, 1]");
    nd->add_option("--lambda", cfg.lambda, "lambda > 0");
    nd->add_option("--c", cfg.c, "Wave speed c > 0");
    nd->add_option("--N", cfg.N, "Space dimension")->required()->check(CLI::PositiveNumber);
    nd->add_option("--x-rest", cfg.x_rest, "Fixed coordinates x2..xN (default 0)")->delimiter(',');
    nd->add_option("--K", cfg.K, "Truncation order (default: automatic)");
    add_grid_options(nd, cfg.grid, true);
    add_output_options(nd, cfg);

    auto* nl = app.add_subcommand("eval-nonlinear", "Power-law travelling wave k w^beta");
    nl->add_option("--alpha", cfg.alpha, "Fractional order in (0, 1]");
    nl->add_option("--lambda", cfg.lambda, "Non-zero coupling");
    nl->add_option("--c", cfg.c, "Wave speed c > 0");
    nl->add_option("--s", cfg.s, "Power of the nonlinearity (s != 1)");
    nl->add_option("--gamma-src", cfg.gamma_src, "Source strength of the non-homogeneous variant");
    add_grid_options(nl, cfg.grid, true);
    add_output_options(nl, cfg);

    auto* damped = app.add_subcommand("eval-damped", "Damped wave e^{-sigma t} v, c = 1");
    damped->add_option("--sigma", cfg.sigma, "Damping coefficient, sigma^2 < 1")->required();
    add_grid_options(damped, cfg.grid, false);
    add_output_options(damped, cfg);

    auto* verify = app.add_subcommand("verify", "Run a verification suite, JSON report");
    verify->add_option("--suite", cfg.suite, "Suite name")->check(CLI::IsMember(fkg::suite_names()));
    verify->add_option("-o,--output", cfg.output, "Output path ('-' for stdout)");

    auto* ek = app.add_subcommand("ek-table", "Erdelyi-Kober monomial coefficients");
    ek->add_option("--m", cfg.ek_m, "Values of m")->delimiter(',');
    ek->add_option("--eta", cfg.ek_eta, "Values of eta")->delimiter(',');
    ek->add_option("--alpha-ek", cfg.ek_alpha, "Values of the E-K order")->delimiter(',');
    ek->add_option("--beta", cfg.ek_beta, "Monomial exponents")->delimiter(',');
    add_output_options(ek, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*verify) {
            const auto cases = fkg::run_suite(cfg.suite);
            emit(cfg, fkg::report_to_json(cfg.suite, cases).dump(2) + "\n");
            for (const auto& c : cases) {
                if (!c.verdict) {
                    return exit_verification;
                }
            }
            return exit_ok;
        }
        fkg::Table table;
        if (*lin) {
            table = eval_linear(cfg, 1);
        } else if (*nd) {
            table = eval_linear(cfg, cfg.N);
        } else if (*nl) {
            table = eval_nonlinear(cfg);
        } else if (*damped) {
            table = eval_damped(cfg);
        } else if (*ek) {
            table = ek_table(cfg);
        }
        emit(cfg, render(cfg, table));
        return exit_ok;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const fkg::domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return exit_domain;
    } catch (const fkg::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numerical;
    }
}
