// lagsob: Laguerre-Sobolev spectral solver front-end.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lagsob/lagsob.hpp"

namespace fs = std::filesystem;
using namespace lagsob;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_validate_failed = 1;
constexpr int exit_config = 2;
constexpr int exit_quadrature = 3;

struct RunConfig {
    double lambda = 1.0;
    int n_max = default_n_max;
    int quad_m0 = default_quad_m0;
    double quad_tol = default_quad_tol;
    std::string problem;
    std::string f_expr, u_expr, du_expr;
    double x_min = 0.0, x_max = 20.0;
    int count = 401;
    std::string out_dir = ".";
    std::vector<int> partial;
    double a0_fault = 0.0;
};

// Thrown for anything the user can fix on the command line; message names the flag.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& msg) {
    if (!ok) throw config_error(msg);
}

void check_common(const RunConfig& c) {
    require(c.lambda > 0.0 && std::isfinite(c.lambda), "--lambda must be a finite value > 0");
    require(c.n_max >= 0, "--nmax must be >= 0");
}

void check_grid(const RunConfig& c) {
    require(std::isfinite(c.x_min) && c.x_min >= 0.0, "--x-min must be finite and >= 0");
    require(std::isfinite(c.x_max) && c.x_max > c.x_min, "--x-max must be finite and greater than --x-min");
    require(c.count >= 2, "--count must be >= 2");
}

std::vector<double> sample_grid(const RunConfig& c) {
    std::vector<double> xs(c.count);
    for (int i = 0; i < c.count; ++i) xs[i] = c.x_min + (c.x_max - c.x_min) * i / (c.count - 1);
    xs.back() = c.x_max;
    return xs;
}

fs::path output_dir(const RunConfig& c) {
    fs::path dir = c.out_dir;
    if (const char* env = std::getenv("LAGSOB_OUT_DIR"); env && *env) dir = env;
    std::error_code ec;
    fs::create_directories(dir, ec);
    require(!ec && fs::is_directory(dir), "--out-dir: cannot create directory " + dir.string());
    return dir;
}

RealFunction expression_function(const std::string& text, const char* flag) {
    try {
        auto e = std::make_shared<expr::Expr>(expr::parse(text));
        return [e](double x) { return expr::eval(*e, x); };
    } catch (const expr::parse_error& err) {
        throw config_error(std::string(flag) + ": " + err.what());
    }
}

BVProblem make_problem(const RunConfig& c) {
    require(c.problem.empty() != c.f_expr.empty(), "solve needs exactly one of --problem or --f-expr");
    require(c.u_expr.empty() == c.du_expr.empty(), "--u-expr and --du-expr must be given together");
    if (!c.problem.empty()) {
        require(c.f_expr.empty() && c.u_expr.empty(), "--u-expr cannot be combined with --problem");
        require(c.lambda == 1.0, "--lambda: builtin problem '" + c.problem + "' is defined for lambda = 1");
        try {
            return builtin_problem(c.problem);
        } catch (const std::invalid_argument& err) {
            throw config_error(std::string("--problem: ") + err.what());
        }
    }
    BVProblem p;
    p.params = SobolevParams(c.lambda);
    p.label = c.f_expr;
    p.rhs = expression_function(c.f_expr, "--f-expr");
    if (!c.u_expr.empty()) {
        p.exact = expression_function(c.u_expr, "--u-expr");
        p.exact_deriv = expression_function(c.du_expr, "--du-expr");
    }
    return p;
}

int run_solve(const RunConfig& c) {
    check_common(c);
    check_grid(c);
    require(c.quad_m0 >= 1 && c.quad_m0 <= gauss_laguerre_max_size,
            "--quad-m0 must lie in [1, " + std::to_string(gauss_laguerre_max_size) + "]");
    require(c.quad_tol > 0.0, "--quad-tol must be > 0");
    std::vector<int> partial = c.partial.empty() ? std::vector<int>{c.n_max} : c.partial;
    for (int n : partial)
        require(n >= 0 && n <= c.n_max, "--partial: " + std::to_string(n) + " outside [0, --nmax]");

    const BVProblem problem = make_problem(c);
    const fs::path dir = output_dir(c);

    std::optional<SpectralSolution> sol;
    try {
        sol = solve(problem, c.n_max, c.quad_m0, c.quad_tol);
    } catch (const expr::eval_error& err) {
        throw config_error(std::string(c.f_expr.empty() ? "--u-expr/--du-expr" : "--f-expr") + ": " + err.what());
    } catch (const quadrature_error& err) {
        throw config_error(std::string("--f-expr: ") + err.what());
    }

    const auto connection = connection_recurrence(problem.params, c.n_max + 1);
    {
        CsvWriter out(dir / "coeffs.csv", {"n", "a_n", "g_n", "f_n", "s_n", "uhat_n", "quad_tol_achieved"});
        for (int n = 0; n <= c.n_max; ++n)
            out.row({static_cast<double>(n), connection[n], sol->g[n], sol->fhat[n], sobolev_norm_sq(sol->basis, n),
                     sol->uhat[n], sol->quad_report[n].achieved});
    }

    std::vector<double> eps;
    {
        CsvWriter out(dir / "convergence.csv", {"n", "eps_n", "log10_eps_n"});
        if (sol->energy_norm_sq) {
            for (int n = 0; n <= c.n_max; ++n) {
                const auto e = sobolev_error(*sol, n);
                if (e.inconsistent())
                    std::cerr << "warning: eps_" << n << " = " << e.raw
                              << " is negative; exact solution and right-hand side may disagree\n";
                eps.push_back(e.value);
                out.row({static_cast<double>(n), e.value, std::log10(e.value)});
            }
        }
    }

    try {
        std::vector<std::string> header{"x"};
        for (int n : partial) header.push_back("approx_" + std::to_string(n));
        const bool exact = static_cast<bool>(problem.exact);
        if (exact) {
            header.push_back("u_exact");
            header.push_back("abs_err");
        }
        CsvWriter out(dir / "solution.csv", header);
        for (double x : sample_grid(c)) {
            std::vector<double> row{x};
            for (int n : partial) row.push_back(partial_sum(*sol, n, x));
            if (exact) {
                const double u = problem.exact(x);
                row.push_back(u);
                row.push_back(std::abs(row[partial.size()] - u));
            }
            out.row(row);
        }
    } catch (const expr::eval_error& err) {
        throw config_error(std::string("--u-expr: ") + err.what());
    }

    std::printf("problem %s, lambda = %g, n_max = %d\n", problem.label.c_str(), problem.params.lambda(), c.n_max);
    std::printf("%4s %24s %24s %6s %10s\n", "n", "uhat_n", "eps_n", "m", "quad_err");
    for (int n = 0; n <= c.n_max; ++n) {
        const auto& q = sol->quad_report[n];
        const std::string e = eps.empty() ? "-" : format_real(eps[n]);
        std::printf("%4d %24.16e %24s %6d %10.2e%s\n", n, sol->uhat[n], e.c_str(), q.m_used, q.achieved,
                    q.converged ? "" : " *");
    }
    std::printf("integrand evaluations %zu, recurrence steps %zu, linear solves %zu\n",
                sol->stats.integrand_evaluations, sol->stats.recurrence_steps, sol->stats.linear_system_solves);
    std::printf("wrote coeffs.csv, convergence.csv, solution.csv to %s\n", dir.string().c_str());

    if (!sol->quadrature_converged()) {
        for (int n = 0; n <= c.n_max; ++n)
            if (!sol->quad_report[n].converged) {
                std::fprintf(stderr,
                             "quadrature did not reach --quad-tol %g for g_%d (achieved %.3g at m = %d); "
                             "rows marked * are unconverged\n",
                             c.quad_tol, n, sol->quad_report[n].achieved, sol->quad_report[n].m_used);
                break;
            }
        return exit_quadrature;
    }
    return exit_ok;
}

int run_coeffs(const RunConfig& c) {
    check_common(c);
    const SobolevParams params(c.lambda);
    const auto a = connection_recurrence(params, c.n_max + 1);
    const fs::path dir = output_dir(c);
    CsvWriter out(dir / "an_table.csv", {"n", "a_rec", "a_ratio", "abs_diff", "a_asymptotic"});
    double worst = 0.0;
    for (int n = 0; n <= c.n_max; ++n) {
        const double r = connection_ratio(params, n);
        const double asym = n == 0 ? std::numeric_limits<double>::quiet_NaN() : connection_asymptotic(params, n);
        worst = std::max(worst, std::abs(a[n] - r));
        out.row({static_cast<double>(n), a[n], r, std::abs(a[n] - r), asym});
    }
    std::printf("a_0 .. a_%d for lambda = %g, max |a_rec - a_ratio| = %.3g\n", c.n_max, c.lambda, worst);
    std::printf("wrote an_table.csv to %s\n", dir.string().c_str());
    return exit_ok;
}

int run_basis(const RunConfig& c) {
    check_common(c);
    check_grid(c);
    require(c.n_max <= sobolev_coeff_max_degree,
            "--nmax " + std::to_string(c.n_max) + " exceeds " + std::to_string(sobolev_coeff_max_degree) +
                ": monomial coefficients lose all accuracy beyond that; sample S_n through the recurrence "
                "instead (basis_samples.csv from a smaller --nmax, or sobolev_eval in the library)");
    const SobolevBasis basis(SobolevParams(c.lambda), c.n_max);
    const fs::path dir = output_dir(c);
    {
        std::vector<std::string> header{"n"};
        for (int k = 0; k <= c.n_max; ++k) header.push_back("c" + std::to_string(k));
        CsvWriter out(dir / "basis_coeffs.csv", header);
        for (int n = 0; n <= c.n_max; ++n) {
            const auto p = sobolev_coeffs(basis, n);
            std::vector<double> row{static_cast<double>(n)};
            for (int k = 0; k <= c.n_max; ++k) row.push_back(p[k]);
            out.row(row);
        }
    }
    {
        std::vector<std::string> header{"x"};
        for (int k = 0; k <= c.n_max; ++k) header.push_back("S" + std::to_string(k));
        CsvWriter out(dir / "basis_samples.csv", header);
        for (double x : sample_grid(c)) {
            std::vector<double> row{x};
            const auto s = sobolev_eval_all(basis, c.n_max, x);
            row.insert(row.end(), s.begin(), s.end());
            out.row(row);
        }
    }
    std::printf("wrote basis_coeffs.csv, basis_samples.csv to %s\n", dir.string().c_str());
    return exit_ok;
}

int run_validate(const RunConfig& c) {
    check_common(c);
    const auto results = validate::run_all({c.lambda, c.a0_fault});
    std::printf("%-30s %-6s %12s %12s %8s\n", "suite", "result", "worst", "tolerance", "checks");
    const validate::SuiteResult* first_failure = nullptr;
    for (const auto& r : results) {
        std::printf("%-30s %-6s %12.3e %12.3e %8d\n", r.name.c_str(), r.passed ? "PASS" : "FAIL", r.worst, r.tolerance,
                    r.checks);
        if (!r.passed && !first_failure) first_failure = &r;
    }
    if (first_failure) {
        std::fprintf(stderr, "validation failed: suite %s\n", first_failure->name.c_str());
        return exit_validate_failed;
    }
    return exit_ok;
}

void add_common(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--lambda", c.lambda, "coefficient of u/x (> 0)")->capture_default_str();
    cmd->add_option("--nmax", c.n_max, "highest basis index")->capture_default_str();
    cmd->add_option("--out-dir", c.out_dir, "directory for CSV output (LAGSOB_OUT_DIR overrides)")
        ->capture_default_str();
}

void add_grid(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--x-min", c.x_min, "sample grid start")->capture_default_str();
    cmd->add_option("--x-max", c.x_max, "sample grid end")->capture_default_str();
    cmd->add_option("--count", c.count, "number of sample points")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laguerre-Sobolev spectral solver for -u'' + lambda u / x = f on (0, inf)"};
    app.require_subcommand(1);
    RunConfig c;

    auto* solve_cmd = app.add_subcommand("solve", "solve a boundary value problem and write CSV tables");
    add_common(solve_cmd, c);
    add_grid(solve_cmd, c);
    solve_cmd->add_option("--quad-m0", c.quad_m0, "initial Gauss-Laguerre size")->capture_default_str();
    solve_cmd->add_option("--quad-tol", c.quad_tol, "tolerance between successive quadrature sizes")
        ->capture_default_str();
    solve_cmd->add_option("--problem", c.problem, "builtin problem: exp-decay or rational-decay");
    solve_cmd->add_option("--f-expr", c.f_expr, "right-hand side f(x)");
    solve_cmd->add_option("--u-expr", c.u_expr, "exact solution u(x), for error reporting");
    solve_cmd->add_option("--du-expr", c.du_expr, "derivative u'(x) of the exact solution");
    solve_cmd->add_option("--partial", c.partial, "partial-sum indices sampled into solution.csv (default: nmax)")
        ->delimiter(',');

    auto* coeffs_cmd = app.add_subcommand("coeffs", "tabulate connection coefficients a_n");
    add_common(coeffs_cmd, c);

    auto* basis_cmd = app.add_subcommand("basis", "monomial coefficients and samples of S_0 .. S_nmax");
    add_common(basis_cmd, c);
    add_grid(basis_cmd, c);

    auto* validate_cmd = app.add_subcommand("validate", "run the identity suites");
    validate_cmd->add_option("--lambda", c.lambda, "coefficient of u/x (> 0)")->capture_default_str();
    validate_cmd->add_option("--inject-a0-fault", c.a0_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(c);
        if (coeffs_cmd->parsed()) return run_coeffs(c);
        if (basis_cmd->parsed()) return run_basis(c);
        return run_validate(c);
    } catch (const config_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_config;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_config;
    }
}
