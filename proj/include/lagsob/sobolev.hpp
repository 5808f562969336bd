#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lagsob/laguerre.hpp"
#include "lagsob/polynomial.hpp"
#include "lagsob/quadrature.hpp"
#include "lagsob/specfun.hpp"

namespace lagsob {

/// Strength lambda > 0 of the potential lambda / x.
class SobolevParams {
public:
    explicit SobolevParams(double lambda) : lambda_(lambda) {
        if (!(lambda > 0.0) || !std::isfinite(lambda))
            throw std::invalid_argument("SobolevParams: lambda must be finite and > 0, got " +
                                        std::to_string(lambda));
    }
    double lambda() const noexcept { return lambda_; }
    /// The point -4 lambda where L_n^(1) is sampled by the connection formulas.
    double pole() const noexcept { return -4.0 * lambda_; }

private:
    double lambda_;
};

/// Coefficients a_0 ... a_{N-1} of L_n^(1) = S_n + a_{n-1} S_{n-1}.
class ConnectionSequence {
public:
    ConnectionSequence(SobolevParams params, std::vector<double> a) : params_(params), a_(std::move(a)) {}

    const SobolevParams& params() const noexcept { return params_; }
    int n_max() const noexcept { return static_cast<int>(a_.size()); }
    double operator[](int n) const { return a_.at(static_cast<std::size_t>(n)); }
    const std::vector<double>& values() const noexcept { return a_; }

private:
    SobolevParams params_;
    std::vector<double> a_;
};

namespace detail {

inline ConnectionSequence run_connection_recurrence(SobolevParams params, double a0, int n_max) {
    if (n_max < 1) throw std::invalid_argument("connection_recurrence: n_max must be >= 1, got " + std::to_string(n_max));
    const double lam = params.lambda();
    std::vector<double> a(static_cast<std::size_t>(n_max));
    a[0] = a0;
    for (int n = 1; n < n_max; ++n) {
        const double denom = 4.0 * lam + 2.0 * (n + 1) - n * a[n - 1];
        if (!(denom > 0.0))
            throw std::logic_error("connection_recurrence: non-positive denominator at n = " + std::to_string(n));
        a[n] = (n + 2) / denom;
    }
    return ConnectionSequence(params, std::move(a));
}

}  // namespace detail

/// a_0 = 2 / (4 lambda + 2), a_n = (n + 2) / (4 lambda + 2 (n + 1) - n a_{n-1}).
inline ConnectionSequence connection_recurrence(SobolevParams params, int n_max) {
    return detail::run_connection_recurrence(params, 2.0 / (4.0 * params.lambda() + 2.0), n_max);
}

/// Same recurrence started from an arbitrary a_0. Only for fault injection in validation.
inline ConnectionSequence connection_recurrence_from(SobolevParams params, double a0, int n_max) {
    return detail::run_connection_recurrence(params, a0, n_max);
}

/// a_n = (n+2)/(n+1) L_n^(1)(-4 lambda) / L_{n+1}^(1)(-4 lambda).
inline double connection_ratio(SobolevParams params, int n) {
    if (n < 0) throw std::invalid_argument("connection_ratio: n must be >= 0");
    // L_{n+1}/L_n from the ratio form of the recurrence; every term is positive at x < 0
    const auto ratios = laguerre_successive_ratios(LaguerreFamily(1.0), n + 1, params.pole());
    return (n + 2.0) / (n + 1.0) / ratios[n + 1];
}

/// First-order large-n form 1 - 2 sqrt(lambda / n). Test oracle only.
inline double connection_asymptotic(SobolevParams params, int n) {
    if (n < 1) throw std::invalid_argument("connection_asymptotic: n must be >= 1");
    return 1.0 - 2.0 * std::sqrt(params.lambda() / n);
}

/// Sobolev polynomials S_0 ... S_N together with s(n) = ||S_n x e^{-x/2}||_lambda^2.
class SobolevBasis {
public:
    SobolevBasis(SobolevParams params, int n_max)
        : SobolevBasis(connection_recurrence(params, std::max(n_max, 1)), n_max) {}

    /// Builds s(0..n_max) on top of an existing connection sequence.
    SobolevBasis(ConnectionSequence connection, int n_max) : connection_(std::move(connection)), n_max_(n_max) {
        if (n_max < 0) throw std::invalid_argument("SobolevBasis: n_max must be >= 0");
        if (connection_.n_max() < n_max)
            throw std::invalid_argument("SobolevBasis: connection sequence too short");
        const double lam = params().lambda();
        s_.resize(static_cast<std::size_t>(n_max) + 1);
        s_[0] = lam + 0.5;
        for (int n = 1; n <= n_max; ++n) {
            const double a = connection_[n - 1];
            s_[n] = (n + 1) * (lam + 0.5 * (n + 1)) - a * a * s_[n - 1];
            if (!(s_[n] > 0.0))
                throw std::logic_error("SobolevBasis: non-positive Sobolev norm at n = " + std::to_string(n));
        }
    }

    const SobolevParams& params() const noexcept { return connection_.params(); }
    const ConnectionSequence& connection() const noexcept { return connection_; }
    int n_max() const noexcept { return n_max_; }
    double a(int n) const { return connection_[n]; }
    const std::vector<double>& norms_sq() const noexcept { return s_; }

private:
    ConnectionSequence connection_;
    int n_max_;
    std::vector<double> s_;
};

namespace detail {

inline void require_basis_index(const SobolevBasis& basis, int n, const char* who) {
    if (n < 0 || n > basis.n_max())
        throw std::invalid_argument(std::string(who) + ": index " + std::to_string(n) + " outside [0, " +
                                    std::to_string(basis.n_max()) + "]");
}

}  // namespace detail

/// S_0(x) ... S_n(x) via S_k = L_k^(1) - a_{k-1} S_{k-1}.
inline std::vector<double> sobolev_eval_all(const SobolevBasis& basis, int n, double x) {
    detail::require_basis_index(basis, n, "sobolev_eval_all");
    const auto lag = laguerre_eval_all(LaguerreFamily(1.0), n, x);
    std::vector<double> s(lag.size());
    s[0] = 1.0;
    for (int k = 1; k <= n; ++k) s[k] = lag[k] - basis.a(k - 1) * s[k - 1];
    return s;
}

inline double sobolev_eval(const SobolevBasis& basis, int n, double x) {
    return sobolev_eval_all(basis, n, x).back();
}

/// S_k'(x) for k = 0 ... n, from S_k' = -L_{k-1}^(2) - a_{k-1} S_{k-1}'.
inline std::vector<double> sobolev_derivative_all(const SobolevBasis& basis, int n, double x) {
    detail::require_basis_index(basis, n, "sobolev_derivative_all");
    std::vector<double> ds(static_cast<std::size_t>(n) + 1, 0.0);
    if (n == 0) return ds;
    const auto lag2 = laguerre_eval_all(LaguerreFamily(2.0), n - 1, x);
    for (int k = 1; k <= n; ++k) ds[k] = -lag2[k - 1] - basis.a(k - 1) * ds[k - 1];
    return ds;
}

inline constexpr int sobolev_coeff_max_degree = 30;

/// Monomial coefficients of S_n (coefficient mode, n <= 30).
inline PolyCoeffs sobolev_coeffs(const SobolevBasis& basis, int n) {
    detail::require_basis_index(basis, n, "sobolev_coeffs");
    if (n > sobolev_coeff_max_degree)
        throw std::invalid_argument("sobolev_coeffs: degree " + std::to_string(n) +
                                    " exceeds coefficient-mode limit 30; use sobolev_eval");
    const LaguerreFamily l1(1.0);
    PolyCoeffs s{1.0};
    for (int k = 1; k <= n; ++k) s = laguerre_coeffs(l1, k).axpy(-basis.a(k - 1), s);
    return s;
}

inline double sobolev_norm_sq(const SobolevBasis& basis, int n) {
    detail::require_basis_index(basis, n, "sobolev_norm_sq");
    return basis.norms_sq()[static_cast<std::size_t>(n)];
}

/// <p, q>_S = int p q (1 + lambda - x/4) x e^{-x} dx + int p' q' x^2 e^{-x} dx over (0, inf),
/// by the m-point alpha = 1 and alpha = 2 Gauss-Laguerre rules. Requires
/// deg p + deg q + 2 <= 2m - 1 so both rules are exact.
inline double sobolev_inner_poly(SobolevParams params, const PolyCoeffs& p, const PolyCoeffs& q, int m) {
    if (static_cast<long>(p.degree() + q.degree()) + 2 > 2L * m - 1)
        throw std::invalid_argument("sobolev_inner_poly: " + std::to_string(m) + " nodes cannot integrate degree " +
                                    std::to_string(p.degree()) + " x " + std::to_string(q.degree()) + " exactly");
    const double lam = params.lambda();
    const auto dp = p.derivative();
    const auto dq = q.derivative();
    const double value_part =
        integrate(gauss_laguerre(1.0, m), [&](double x) { return p(x) * q(x) * (1.0 + lam - 0.25 * x); });
    const double deriv_part = integrate(gauss_laguerre(2.0, m), [&](double x) { return dp(x) * dq(x); });
    return value_part + deriv_part;
}

inline double sobolev_inner_poly(const SobolevBasis& basis, const PolyCoeffs& p, const PolyCoeffs& q, int m) {
    return sobolev_inner_poly(basis.params(), p, q, m);
}

/// Relative residual of
///   S_n(x) L_n(-4 lambda) / (n+1) = sum_k (-1)^{n-k} L_k(x) L_k(-4 lambda) / (k+1),
/// normalized by |left-hand side|.
inline double alternating_sum_check(const SobolevBasis& basis, int n, double x) {
    detail::require_basis_index(basis, n, "alternating_sum_check");
    const LaguerreFamily l1(1.0);
    const auto at_x = laguerre_eval_all(l1, n, x);
    const auto at_pole = laguerre_eval_all(l1, n, basis.params().pole());
    const double lhs = sobolev_eval(basis, n, x) * at_pole[n] / (n + 1);
    double rhs = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double term = at_x[k] * at_pole[k] / (k + 1);
        rhs += ((n - k) % 2) ? -term : term;
    }
    if (lhs == rhs) return 0.0;
    return std::abs(lhs - rhs) / std::abs(lhs);
}

/// Truncated series against closed form for one generating-function identity.
struct GenFunValues {
    double lhs = 0.0;
    double rhs = 0.0;
    int terms = 0;

    double relative_gap() const { return std::abs(lhs - rhs) / (1.0 + std::abs(rhs)); }
};

namespace detail {

// Sums term(n) for n < n_trunc, stopping once four consecutive terms fall under
// 1e-14 (1 + |sum|) after the envelope has started to shrink.
template <class Term>
GenFunValues sum_series(Term&& term, int n_trunc) {
    GenFunValues out;
    double sum = 0.0, carry = 0.0, peak = 0.0;
    int quiet = 0;
    int n = 0;
    for (; n < n_trunc; ++n) {
        const double t = term(n);
        const double y = t - carry;
        const double s = sum + y;
        carry = (s - sum) - y;
        sum = s;
        peak = std::max(peak, std::abs(t));
        if (std::abs(t) < 1e-14 * (1.0 + std::abs(sum)) && std::abs(t) < peak) {
            if (++quiet == 4) {
                ++n;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    out.lhs = sum;
    out.terms = n;
    return out;
}

}  // namespace detail

inline constexpr double sobolev_genfun_max_omega = 0.8;

/// sum_n S_n(x) L_n^(1)(-4 lambda)/(n+1) w^n against
/// e^{-(x - 4 lambda) w/(1-w)} J_1(4 sqrt(x lambda w)/(1-w)) / ((1 - w^2) 2 sqrt(x lambda w)).
/// At most n_trunc terms (and no more than the basis holds) are summed.
inline GenFunValues gen_fun_sobolev(const SobolevBasis& basis, double x, double omega, int n_trunc) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("gen_fun_sobolev: x must be > 0");
    if (!(omega > 0.0) || !(omega <= sobolev_genfun_max_omega))
        throw std::domain_error("gen_fun_sobolev: omega must lie in (0, 0.8]");
    if (n_trunc < 1 || n_trunc > basis.n_max() + 1)
        throw std::invalid_argument("gen_fun_sobolev: n_trunc must lie in [1, basis size]");
    const double lam = basis.params().lambda();
    const double root = std::sqrt(x * lam * omega);
    const double arg = 4.0 * root / (1.0 - omega);
    if (arg > bessel_max_argument)
        throw std::domain_error("gen_fun_sobolev: Bessel argument " + std::to_string(arg) + " exceeds 60");

    const int n_last = n_trunc - 1;
    const auto s = sobolev_eval_all(basis, n_last, x);
    const auto pole = laguerre_eval_all(LaguerreFamily(1.0), n_last, basis.params().pole());
    auto out = detail::sum_series([&](int n) { return s[n] * pole[n] / (n + 1) * std::pow(omega, n); }, n_trunc);
    out.rhs = std::exp(-(x - 4.0 * lam) * omega / (1.0 - omega)) / (1.0 - omega * omega) *
              bessel_j(BesselOrder(1.0), arg) / (2.0 * root);
    return out;
}

/// sum_n binom(n+alpha, n)^{-1} L_n(x) L_n(y) w^n against
/// Gamma(alpha+1)/(1-w) e^{-(x+y) w/(1-w)} (-x y w)^{-alpha/2} J_alpha(2 sqrt(-x y w)/(1-w)),
/// for -1 < w < 0 where every factor is real.
inline GenFunValues hardy_hille_check(double alpha, double x, double y, double omega, int n_trunc) {
    const LaguerreFamily family(alpha);
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
        throw std::domain_error("hardy_hille_check: x and y must be > 0");
    if (!(omega > -1.0) || !(omega < 0.0)) throw std::domain_error("hardy_hille_check: omega must lie in (-1, 0)");
    if (n_trunc < 1) throw std::invalid_argument("hardy_hille_check: n_trunc must be >= 1");
    const double t = -x * y * omega;
    const double arg = 2.0 * std::sqrt(t) / (1.0 - omega);
    if (arg > bessel_max_argument)
        throw std::domain_error("hardy_hille_check: Bessel argument " + std::to_string(arg) + " exceeds 60");

    const auto lx = laguerre_eval_all(family, n_trunc - 1, x);
    const auto ly = laguerre_eval_all(family, n_trunc - 1, y);
    auto out = detail::sum_series(
        [&](int n) { return lx[n] * ly[n] / laguerre_binomial(alpha, n) * std::pow(omega, n); }, n_trunc);
    out.rhs = std::exp(log_gamma(alpha + 1.0)) / (1.0 - omega) * std::exp(-(x + y) * omega / (1.0 - omega)) *
              std::pow(t, -0.5 * alpha) * bessel_j(BesselOrder(alpha), arg);
    return out;
}

}  // namespace lagsob
