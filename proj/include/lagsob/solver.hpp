#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lagsob/laguerre.hpp"
#include "lagsob/quadrature.hpp"
#include "lagsob/sobolev.hpp"

namespace lagsob {

/// -u'' + lambda u / x = f on (0, inf) with u(0) = u(inf) = 0.
struct BVProblem {
    SobolevParams params{1.0};
    RealFunction rhs;
    RealFunction exact;        // optional
    RealFunction exact_deriv;  // optional, required together with exact for error norms
    std::string label;

    bool has_exact() const noexcept { return static_cast<bool>(exact) && static_cast<bool>(exact_deriv); }
};

/// Numerical sanity of an attached exact solution. Not enforced: slowly decaying
/// solutions (rational-decay) legitimately fail the decay probe.
struct ExactSolutionCheck {
    double value_at_zero = 0.0;
    double value_at_far = 0.0;  // |u(80)|
    double max_abs = 0.0;       // max |u| on a grid over [0, 80]
    bool vanishes_at_zero() const { return std::abs(value_at_zero) <= 1e-12; }
    bool decays() const { return value_at_far <= 1e-6 * max_abs; }
};

inline ExactSolutionCheck check_exact_solution(const BVProblem& problem) {
    if (!problem.exact) throw std::invalid_argument("check_exact_solution: problem has no exact solution");
    ExactSolutionCheck c;
    c.value_at_zero = problem.exact(0.0);
    c.value_at_far = std::abs(problem.exact(80.0));
    for (int i = 0; i <= 8000; ++i) c.max_abs = std::max(c.max_abs, std::abs(problem.exact(i * 0.01)));
    return c;
}

struct QuadReport {
    int m_used = 0;
    double achieved = 0.0;
    bool converged = false;
};

/// Work counters. Nothing in solve assembles or factors a linear system, so
/// linear_system_solves stays zero; it is kept as an explicit assertion target.
struct SolveStats {
    std::size_t integrand_evaluations = 0;
    std::size_t recurrence_steps = 0;
    std::size_t linear_system_solves = 0;
};

struct SpectralSolution {
    BVProblem problem;
    SobolevBasis basis;
    int n_max = 0;
    std::vector<double> g;
    std::vector<double> fhat;
    std::vector<double> uhat;
    std::vector<QuadReport> quad_report;
    SolveStats stats;
    std::optional<double> energy_norm_sq;  // ||u||_lambda^2 when the exact solution is known

    bool quadrature_converged() const {
        for (const auto& q : quad_report)
            if (!q.converged) return false;
        return true;
    }
};

inline constexpr int default_n_max = 20;
inline constexpr int default_quad_m0 = 32;
inline constexpr double default_quad_tol = 1e-12;

namespace detail {

// Integral of k over (0, inf): adaptive Gauss-Kronrod on unit-width-2 panels up to
// x = 2000, then the mapped tail. Panels keep oscillatory, slowly decaying
// integrands (rational-decay) accurate and bound the work per panel.
template <class F>
double integrate_half_line(F&& k) {
    using gk = boost::math::quadrature::gauss_kronrod<double, 61>;
    constexpr int panels = 1000;
    constexpr double width = 2.0;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) sum += gk::integrate(k, i * width, (i + 1) * width, 6, 1e-15);
    sum += gk::integrate(k, panels * width, std::numeric_limits<double>::infinity(), 10, 1e-15);
    return sum;
}

}  // namespace detail

/// ||u||_lambda^2 = lambda int u^2 / x dx + int (u')^2 dx, never sampling x = 0.
inline double energy_norm_sq(const BVProblem& problem) {
    if (!problem.has_exact()) throw std::invalid_argument("energy_norm_sq: problem has no exact solution");
    const double lam = problem.params.lambda();
    return detail::integrate_half_line([&](double x) {
        const double u = problem.exact(x);
        const double du = problem.exact_deriv(x);
        return lam * u * u / x + du * du;
    });
}

/// Fully diagonal Laguerre-Sobolev solve: one half-weight integral g(n) per index,
/// then the scans f(n) = g(n) - a_{n-1} f(n-1) and u_n = f(n) / s(n).
inline SpectralSolution solve(const BVProblem& problem, int n_max = default_n_max, int quad_m0 = default_quad_m0,
                              double quad_tol = default_quad_tol) {
    if (n_max < 0) throw std::invalid_argument("solve: n_max must be >= 0");
    if (!problem.rhs) throw std::invalid_argument("solve: problem has no right-hand side");

    SpectralSolution sol{problem, SobolevBasis(problem.params, n_max), n_max, {}, {}, {}, {}, {}, std::nullopt};
    const auto& basis = sol.basis;
    sol.stats.recurrence_steps += static_cast<std::size_t>(basis.connection().n_max()) + n_max;

    const HalfWeightIntegrator integrator(quad_m0, quad_tol);
    const LaguerreFamily l1(1.0);
    sol.g.resize(n_max + 1);
    sol.fhat.resize(n_max + 1);
    sol.uhat.resize(n_max + 1);
    sol.quad_report.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        const auto r = integrator([&](double x) { return problem.rhs(x) * laguerre_eval(l1, n, x); });
        sol.g[n] = r.value;
        sol.quad_report[n] = {r.m_used, r.achieved, r.converged};
        sol.stats.integrand_evaluations += r.evaluations;

        sol.fhat[n] = n == 0 ? sol.g[0] : sol.g[n] - basis.a(n - 1) * sol.fhat[n - 1];
        sol.uhat[n] = sol.fhat[n] / sobolev_norm_sq(basis, n);
        ++sol.stats.recurrence_steps;
    }
    if (problem.has_exact()) sol.energy_norm_sq = energy_norm_sq(problem);
    return sol;
}

namespace detail {

inline void require_partial_args(const SpectralSolution& sol, int n, double x, const char* who) {
    if (n < 0 || n > sol.n_max)
        throw std::invalid_argument(std::string(who) + ": n = " + std::to_string(n) + " outside [0, " +
                                    std::to_string(sol.n_max) + "]");
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::domain_error(std::string(who) + ": x must be finite and >= 0");
}

}  // namespace detail

/// sum_{k<=n} u_k S_k(x) x e^{-x/2}.
inline double partial_sum(const SpectralSolution& sol, int n, double x) {
    detail::require_partial_args(sol, n, x, "partial_sum");
    if (x == 0.0) return 0.0;
    const auto s = sobolev_eval_all(sol.basis, n, x);
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) acc += sol.uhat[k] * s[k];
    return acc * x * std::exp(-0.5 * x);
}

/// d/dx of partial_sum: sum_{k<=n} u_k [S_k(x)(1 - x/2) + x S_k'(x)] e^{-x/2}.
inline double partial_sum_deriv(const SpectralSolution& sol, int n, double x) {
    detail::require_partial_args(sol, n, x, "partial_sum_deriv");
    const auto s = sobolev_eval_all(sol.basis, n, x);
    const auto ds = sobolev_derivative_all(sol.basis, n, x);
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) acc += sol.uhat[k] * (s[k] * (1.0 - 0.5 * x) + x * ds[k]);
    return acc * std::exp(-0.5 * x);
}

/// eps_n = ||u - S_n(u, .)||_lambda^2 via ||u||^2 - sum_{k<=n} u_k^2 s(k).
struct SobolevError {
    double value = 0.0;  // raw, clamped at 0
    double raw = 0.0;
    bool clamped() const { return raw < 0.0; }
    /// Negative beyond round-off: the quadratures disagree.
    bool inconsistent() const { return raw < -1e-8; }
};

inline SobolevError sobolev_error(const SpectralSolution& sol, int n) {
    if (!sol.energy_norm_sq) throw std::invalid_argument("sobolev_error: problem has no exact solution");
    if (n < 0 || n > sol.n_max) throw std::invalid_argument("sobolev_error: n outside [0, n_max]");
    double captured = 0.0;
    for (int k = 0; k <= n; ++k) captured += sol.uhat[k] * sol.uhat[k] * sobolev_norm_sq(sol.basis, k);
    SobolevError e;
    e.raw = *sol.energy_norm_sq - captured;
    e.value = std::max(e.raw, 0.0);
    return e;
}

/// Direct quadrature of ||u - S_n(u, .)||_lambda^2, the cross-check for sobolev_error.
inline double sobolev_error_direct(const SpectralSolution& sol, int n) {
    if (!sol.problem.has_exact()) throw std::invalid_argument("sobolev_error_direct: problem has no exact solution");
    const double lam = sol.problem.params.lambda();
    return detail::integrate_half_line([&](double x) {
        const double d0 = sol.problem.exact(x) - partial_sum(sol, n, x);
        const double d1 = sol.problem.exact_deriv(x) - partial_sum_deriv(sol, n, x);
        return lam * d0 * d0 / x + d1 * d1;
    });
}

/// The two model problems with lambda = 1: "exp-decay" (u = x cos x e^{-x}) and
/// "rational-decay" (u = 10 x cos x / (x+1)^3).
inline BVProblem builtin_problem(const std::string& name) {
    BVProblem p;
    p.params = SobolevParams(1.0);
    p.label = name;
    if (name == "exp-decay") {
        p.rhs = [](double x) { return std::exp(-x) * (3.0 * std::cos(x) - 2.0 * (-1.0 + x) * std::sin(x)); };
        p.exact = [](double x) { return x * std::cos(x) * std::exp(-x); };
        p.exact_deriv = [](double x) { return std::exp(-x) * (std::cos(x) - x * std::sin(x) - x * std::cos(x)); };
    } else if (name == "rational-decay") {
        p.rhs = [](double x) {
            const double c = std::cos(x), s = std::sin(x);
            return 10.0 * ((7.0 + x * (-3.0 + x * (3.0 + x))) * c - 2.0 * (-1.0 + x + 2.0 * x * x) * s) /
                   std::pow(x + 1.0, 5);
        };
        p.exact = [](double x) { return 10.0 * x * std::cos(x) / std::pow(x + 1.0, 3); };
        p.exact_deriv = [](double x) {
            const double c = std::cos(x), s = std::sin(x);
            return 10.0 * ((c - x * s) * (x + 1.0) - 3.0 * x * c) / std::pow(x + 1.0, 4);
        };
    } else {
        throw std::invalid_argument("unknown builtin problem '" + name + "' (expected exp-decay or rational-decay)");
    }
    return p;
}

}  // namespace lagsob
