#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lagsob/laguerre.hpp"
#include "lagsob/sobolev.hpp"

namespace lagsob::validate {

struct SuiteResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;      // largest observed error measure
    double tolerance = 0.0;
    int checks = 0;
};

struct Options {
    double lambda = 1.0;
    /// Added to a_0 before the Sobolev suites run; nonzero only to prove the suites bite.
    double a0_perturbation = 0.0;
};

namespace detail {

inline SuiteResult finish(std::string name, double worst, double tol, int checks) {
    return {std::move(name), worst <= tol, worst, tol, checks};
}

inline std::vector<double> grid(double lo, double hi, int count) {
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) g[i] = lo + (hi - lo) * i / (count - 1);
    return g;
}

inline SobolevBasis basis_for(const Options& opt, int n_max) {
    const SobolevParams params(opt.lambda);
    const double a0 = 2.0 / (4.0 * opt.lambda + 2.0) + opt.a0_perturbation;
    return SobolevBasis(connection_recurrence_from(params, a0, std::max(n_max, 1)), n_max);
}

}  // namespace detail

/// |(n+1) L_{n+1} - (2n+1+alpha-x) L_n + (n+alpha) L_{n-1}| / max(1, |L_{n+1}|) for n <= 60,
/// alpha in {0, 0.5, 1, 2}, 50 points on [-10, 40].
inline SuiteResult three_term_recurrence() {
    double worst = 0.0;
    int checks = 0;
    for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
        const LaguerreFamily fam(alpha);
        for (double x : detail::grid(-10.0, 40.0, 50)) {
            for (int n = 1; n <= 60; ++n) {
                const double lm = laguerre_eval(fam, n - 1, x);
                const double l = laguerre_eval(fam, n, x);
                const double lp = laguerre_eval(fam, n + 1, x);
                const double r = (n + 1) * lp - (2 * n + 1 + alpha - x) * l + (n + alpha) * lm;
                worst = std::max(worst, std::abs(r) / std::max(1.0, std::abs(lp)));
                ++checks;
            }
        }
    }
    return detail::finish("three-term-recurrence", worst, 1e-10, checks);
}

/// L_n^(alpha) = L_n^(alpha+1) - L_{n-1}^(alpha+1) on the same grid, relative to max(1, |L_n^(alpha)|).
inline SuiteResult structure_relation() {
    double worst = 0.0;
    int checks = 0;
    for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
        const LaguerreFamily fam(alpha);
        const LaguerreFamily up = fam.shifted();
        for (double x : detail::grid(-10.0, 40.0, 50)) {
            const auto lo = laguerre_eval_all(fam, 60, x);
            const auto hi = laguerre_eval_all(up, 60, x);
            for (int n = 1; n <= 60; ++n) {
                const double r = lo[n] - (hi[n] - hi[n - 1]);
                worst = std::max(worst, std::abs(r) / std::max(1.0, std::abs(lo[n])));
                ++checks;
            }
        }
    }
    return detail::finish("structure-relation", worst, 1e-10, checks);
}

/// Central differences against the closed-form derivative. The differences are
/// taken in long double so roundoff stays below the h^2 term at h = 1e-5.
/// Passes when every err(1e-4) / err(1e-5) ratio exceeds 30 (ideal: 100);
/// the reported measure is 30 / smallest ratio.
inline SuiteResult derivative_formula() {
    using Long = long double;
    double worst_ratio = 1e300;
    int checks = 0;
    for (double alpha : {0.0, 1.0, 2.0}) {
        const LaguerreFamily fam(alpha);
        for (int n = 3; n <= 8; ++n) {
            for (double x : {0.5, 2.0, 4.3}) {
                const Long exact = -laguerre_eval<Long>(fam.shifted(), n - 1, x);
                double err[2];
                int k = 0;
                for (Long h : {1e-4L, 1e-5L}) {
                    const Long fd = (laguerre_eval<Long>(fam, n, x + h) - laguerre_eval<Long>(fam, n, x - h)) / (2 * h);
                    err[k++] = static_cast<double>(std::abs(fd - exact));
                }
                const double closed = laguerre_derivative(fam, n, x);
                if (std::abs(closed - static_cast<double>(exact)) > 1e-12 * std::max(1.0, std::abs(closed)))
                    err[1] = 1e300;  // closed form disagrees with the extended-precision reference
                worst_ratio = std::min(worst_ratio, err[0] / std::max(err[1], 1e-300));
                ++checks;
            }
        }
    }
    return detail::finish("derivative-formula", 30.0 / worst_ratio, 1.0, checks);
}

struct HardyHillePoint {
    double alpha, x, y, omega;
};

inline const std::vector<HardyHillePoint>& hardy_hille_points() {
    static const std::vector<HardyHillePoint> pts = {
        {1.0, 1.0, 1.0, -0.25}, {0.0, 1.0, 2.0, -0.4}, {0.5, 0.5, 3.0, -0.6},
        {2.0, 2.0, 2.0, -0.1},  {1.0, 3.0, 0.7, -0.8}, {1.5, 1.0, 1.0, -0.5},
    };
    return pts;
}

/// Truncated bilinear Laguerre series against its Bessel closed form, relative error.
inline SuiteResult hardy_hille() {
    double worst = 0.0;
    int checks = 0;
    for (const auto& p : hardy_hille_points()) {
        const auto v = hardy_hille_check(p.alpha, p.x, p.y, p.omega, 4000);
        worst = std::max(worst, std::abs(v.lhs - v.rhs) / std::abs(v.rhs));
        ++checks;
    }
    return detail::finish("hardy-hille", worst, 1e-8, checks);
}

struct GenFunPoint {
    double x, omega;
};

inline const std::vector<GenFunPoint>& sobolev_genfun_points() {
    static const std::vector<GenFunPoint> pts = {
        {1.0, 0.3}, {2.0, 0.5}, {0.5, 0.2}, {5.0, 0.6}, {10.0, 0.4}, {0.3, 0.8}, {3.0, 0.7},
    };
    return pts;
}

/// Sobolev generating function: series against closed form at the points above
/// (skipping any whose Bessel argument exceeds 60 for this lambda), relative error.
inline SuiteResult sobolev_generating_function(const Options& opt = {}) {
    constexpr int n_trunc = 2000;
    const auto basis = detail::basis_for(opt, n_trunc - 1);
    double worst = 0.0;
    int checks = 0;
    for (const auto& p : sobolev_genfun_points()) {
        if (4.0 * std::sqrt(p.x * opt.lambda * p.omega) / (1.0 - p.omega) > bessel_max_argument) continue;
        const auto v = gen_fun_sobolev(basis, p.x, p.omega, n_trunc);
        worst = std::max(worst, std::abs(v.lhs - v.rhs) / std::abs(v.rhs));
        ++checks;
    }
    if (checks < 3) worst = 1e300;
    return detail::finish("sobolev-generating-function", worst, 1e-8, checks);
}

/// Alternating-sum representation of S_n for n <= 40, x in {0, 1, 5, 10}.
inline SuiteResult alternating_sum(const Options& opt = {}) {
    const auto basis = detail::basis_for(opt, 40);
    double worst = 0.0;
    int checks = 0;
    for (double x : {0.0, 1.0, 5.0, 10.0})
        for (int n = 0; n <= 40; ++n) {
            worst = std::max(worst, alternating_sum_check(basis, n, x));
            ++checks;
        }
    return detail::finish("alternating-sum", worst, 1e-10, checks);
}

/// Gram matrix of S_0 ... S_10 under <.,.>_S: off-diagonal magnitude (1e-9) and
/// diagonal against s(n) (1e-10 relative), folded into one normalized measure.
inline SuiteResult gram_diagonality(const Options& opt = {}) {
    constexpr int n = 10;
    constexpr int m = 12;
    const auto basis = detail::basis_for(opt, n);
    std::vector<PolyCoeffs> s;
    for (int k = 0; k <= n; ++k) s.push_back(sobolev_coeffs(basis, k));
    double worst = 0.0;
    int checks = 0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= i; ++j) {
            const double g = sobolev_inner_poly(basis, s[i], s[j], m);
            const double measure = i == j ? std::abs(g - sobolev_norm_sq(basis, i)) / sobolev_norm_sq(basis, i) / 1e-10
                                          : std::abs(g) / 1e-9;
            worst = std::max(worst, measure);
            ++checks;
        }
    return detail::finish("gram-diagonality", worst, 1.0, checks);
}

inline std::vector<SuiteResult> run_all(const Options& opt = {}) {
    return {three_term_recurrence(),          structure_relation(),   derivative_formula(), hardy_hille(),
            sobolev_generating_function(opt), alternating_sum(opt),   gram_diagonality(opt)};
}

}  // namespace lagsob::validate
