#pragma once

#include <cmath>
#include <concepts>
#include <stdexcept>
#include <string>
#include <vector>

#include "lagsob/polynomial.hpp"
#include "lagsob/specfun.hpp"

namespace lagsob {

/// Generalized Laguerre polynomials L_n^(alpha), orthogonal for x^alpha e^{-x} on (0, inf).
class LaguerreFamily {
public:
    explicit LaguerreFamily(double alpha) : alpha_(alpha) {
        if (!(alpha > -1.0) || !std::isfinite(alpha))
            throw std::invalid_argument("LaguerreFamily: alpha must be finite and > -1, got " +
                                        std::to_string(alpha));
    }
    double alpha() const noexcept { return alpha_; }
    LaguerreFamily shifted(double by = 1.0) const { return LaguerreFamily(alpha_ + by); }

private:
    double alpha_;
};

inline constexpr int laguerre_coeff_max_degree = 170;

namespace detail {

inline void require_degree(int n, const char* who) {
    if (n < 0) throw std::invalid_argument(std::string(who) + ": degree must be >= 0, got " + std::to_string(n));
}

inline void require_finite(double x, const char* who) {
    if (!std::isfinite(x)) throw std::domain_error(std::string(who) + ": non-finite argument");
}

}  // namespace detail

/// L_n^(alpha)(x) by the forward three-term recurrence from L_{-1} = 0, L_0 = 1.
template <std::floating_point Real = double>
Real laguerre_eval(const LaguerreFamily& family, int n, Real x) {
    detail::require_degree(n, "laguerre_eval");
    detail::require_finite(static_cast<double>(x), "laguerre_eval");
    const Real alpha = family.alpha();
    Real prev = 0;
    Real cur = 1;
    for (int k = 0; k < n; ++k) {
        Real next = ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// L_0(x) ... L_{n_max}(x) from one recurrence pass.
template <std::floating_point Real = double>
std::vector<Real> laguerre_eval_all(const LaguerreFamily& family, int n_max, Real x) {
    detail::require_degree(n_max, "laguerre_eval_all");
    detail::require_finite(static_cast<double>(x), "laguerre_eval_all");
    const Real alpha = family.alpha();
    std::vector<Real> out(static_cast<std::size_t>(n_max) + 1);
    out[0] = 1;
    if (n_max >= 1) out[1] = 1 + alpha - x;
    for (int k = 1; k < n_max; ++k)
        out[k + 1] = ((2 * k + 1 + alpha - x) * out[k] - (k + alpha) * out[k - 1]) / (k + 1);
    return out;
}

/// Ratio L_n(x) / L_{n-1}(x) carried through the recurrence without forming the
/// (possibly overflowing) values themselves. Only meaningful where no L_k(x)
/// vanishes, which is guaranteed for x < 0.
inline std::vector<double> laguerre_successive_ratios(const LaguerreFamily& family, int n_max, double x) {
    detail::require_degree(n_max, "laguerre_successive_ratios");
    detail::require_finite(x, "laguerre_successive_ratios");
    const double alpha = family.alpha();
    std::vector<double> ratio(static_cast<std::size_t>(n_max) + 1, 1.0);
    if (n_max >= 1) ratio[1] = 1.0 + alpha - x;
    for (int k = 1; k < n_max; ++k)
        ratio[k + 1] = ((2 * k + 1 + alpha - x) - (k + alpha) / ratio[k]) / (k + 1);
    return ratio;
}

/// binom(n + alpha, n) = Gamma(n + alpha + 1) / (Gamma(alpha + 1) n!), i.e. L_n^(alpha)(0).
inline double laguerre_binomial(double alpha, int n) {
    double b = 1.0;
    for (int j = 1; j <= n; ++j) b *= (alpha + j) / j;
    return b;
}

/// Monomial coefficients from the hypergeometric sum
/// sum_k (-1)^k binom(n + alpha, n - k) x^k / k!. Degree is capped at 170.
inline PolyCoeffs laguerre_coeffs(const LaguerreFamily& family, int n) {
    detail::require_degree(n, "laguerre_coeffs");
    if (n > laguerre_coeff_max_degree)
        throw std::invalid_argument("laguerre_coeffs: degree " + std::to_string(n) +
                                    " exceeds coefficient-mode limit 170; use laguerre_eval");
    const double alpha = family.alpha();
    std::vector<double> c(static_cast<std::size_t>(n) + 1);
    double kfact = 1.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) kfact *= k;
        // binom(n + alpha, n - k) = prod_{j=1}^{n-k} (alpha + k + j) / j
        double b = 1.0;
        for (int j = 1; j <= n - k; ++j) b *= (alpha + k + j) / j;
        c[k] = ((k % 2) ? -b : b) / kfact;
    }
    return PolyCoeffs(std::move(c));
}

/// ||L_n^(alpha)||^2 = Gamma(n + alpha + 1) / n!, formed in log space.
inline double laguerre_norm_sq(const LaguerreFamily& family, int n) {
    detail::require_degree(n, "laguerre_norm_sq");
    const double alpha = family.alpha();
    return std::exp(log_gamma(n + alpha + 1.0) - log_gamma(n + 1.0));
}

/// d/dx L_n^(alpha)(x) = -L_{n-1}^(alpha+1)(x).
inline double laguerre_derivative(const LaguerreFamily& family, int n, double x) {
    detail::require_degree(n, "laguerre_derivative");
    if (n == 0) {
        detail::require_finite(x, "laguerre_derivative");
        return 0.0;
    }
    return -laguerre_eval(family.shifted(), n - 1, x);
}

/// Large-n expansion of L_{n+j}^(alpha)(z) / L_n^(beta)(z) on the negative real axis,
/// truncated after d terms (d = 1 or 2).
inline double ratio_expansion(double alpha, double beta, int j, double z, int n, int d) {
    if (!(z < 0.0) || !std::isfinite(z))
        throw std::domain_error("ratio_expansion: z must be finite and < 0, got " + std::to_string(z));
    if (n < 1) throw std::invalid_argument("ratio_expansion: n must be >= 1");
    if (d != 1 && d != 2) throw std::invalid_argument("ratio_expansion: only d in {1, 2} is supported");
    const double nn = n;
    double series = 1.0;
    if (d == 2) {
        const double u1 = (beta * beta - alpha * alpha + 2.0 * z * (beta - alpha - 2.0 * j)) /
                          (4.0 * std::sqrt(-z));
        series += u1 / std::sqrt(nn);
    }
    return std::pow(-z / nn, 0.5 * (beta - alpha)) * series;
}

}  // namespace lagsob
