#pragma once

#include <cmath>
#include <cstddef>
#include <algorithm>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lagsob/laguerre.hpp"
#include "lagsob/specfun.hpp"
#include "lagsob/tridiagonal.hpp"

namespace lagsob {

using RealFunction = std::function<double(double)>;

/// Thrown when an integrand is not finite at a quadrature node.
class quadrature_error : public std::runtime_error {
public:
    quadrature_error(const std::string& what, std::size_t node_index, double node)
        : std::runtime_error(what), node_index_(node_index), node_(node) {}
    std::size_t node_index() const noexcept { return node_index_; }
    double node() const noexcept { return node_; }

private:
    std::size_t node_index_;
    double node_;
};

inline constexpr int gauss_laguerre_max_size = 256;

/// m-point Gauss rule for the weight x^alpha e^{-x} on (0, inf).
///
/// Nodes ascend and are positive. Weights are positive except that for m beyond
/// roughly 180 the weights of the outermost nodes underflow to exactly zero.
class QuadratureRule {
public:
    QuadratureRule(double alpha, std::vector<double> nodes, std::vector<double> weights)
        : alpha_(alpha), nodes_(std::move(nodes)), weights_(std::move(weights)) {
        if (nodes_.empty() || nodes_.size() != weights_.size())
            throw std::invalid_argument("QuadratureRule: nodes and weights must be non-empty and equal length");
    }
    double alpha() const noexcept { return alpha_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> weights() const noexcept { return weights_; }

private:
    double alpha_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

namespace detail {

inline void check_rule_args(double alpha, int m) {
    if (!(alpha > -1.0) || !std::isfinite(alpha))
        throw std::invalid_argument("gauss_laguerre: alpha must be finite and > -1, got " + std::to_string(alpha));
    if (m < 1 || m > gauss_laguerre_max_size)
        throw std::invalid_argument("gauss_laguerre: size must lie in [1, 256], got " + std::to_string(m));
}

inline TridiagonalEigen<double> laguerre_jacobi_eigen(double alpha, int m) {
    std::vector<double> diag(m), off(m - 1);
    for (int k = 0; k < m; ++k) diag[k] = 2.0 * k + alpha + 1.0;
    for (int k = 1; k < m; ++k) off[k - 1] = std::sqrt(k * (k + alpha));
    return symmetric_tridiagonal_eigen<double>(diag, off);
}

// L_m(x), L_{m-1}(x) as mantissas sharing a common factor exp(log_scale).
struct ScaledPair {
    double cur;
    double prev;
    double log_scale;
};

inline ScaledPair laguerre_scaled(double alpha, int m, double x) {
    double prev = 0.0, cur = 1.0, log_scale = 0.0;
    for (int k = 0; k < m; ++k) {
        double next = ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1);
        prev = cur;
        cur = next;
        if (std::abs(cur) > 1e100) {
            cur *= 1e-100;
            prev *= 1e-100;
            log_scale += 100.0 * std::log(10.0);
        }
    }
    return {cur, prev, log_scale};
}

}  // namespace detail

/// Golub-Welsch rule taken straight from the Jacobi matrix eigenpairs:
/// weights Gamma(alpha+1) v_0^2. The tiny outer weights only carry absolute accuracy.
inline QuadratureRule gauss_laguerre_golub_welsch(double alpha, int m) {
    detail::check_rule_args(alpha, m);
    auto eig = detail::laguerre_jacobi_eigen(alpha, m);
    const double mu0 = std::exp(log_gamma(alpha + 1.0));
    std::vector<double> w(m);
    for (int i = 0; i < m; ++i) w[i] = mu0 * eig.first_components[i] * eig.first_components[i];
    return QuadratureRule(alpha, std::move(eig.values), std::move(w));
}

/// Generalized Gauss-Laguerre rule. Nodes are the Jacobi-matrix eigenvalues,
/// polished by Newton on L_m^(alpha); weights are 1 / sum_k p_k(x_i)^2 over the
/// orthonormal polynomials, rescaled as needed, so they keep relative accuracy
/// down to underflow instead of the absolute accuracy of the eigenvectors.
inline QuadratureRule gauss_laguerre(double alpha, int m) {
    detail::check_rule_args(alpha, m);
    auto eig = detail::laguerre_jacobi_eigen(alpha, m);
    std::vector<double> nodes = std::move(eig.values);
    std::vector<double> weights(m);
    const double mu0 = std::exp(log_gamma(alpha + 1.0));
    for (int i = 0; i < m; ++i) {
        double x = nodes[i];
        for (int it = 0; it < 3; ++it) {
            auto p = detail::laguerre_scaled(alpha, m, x);
            const double dp = (m * p.cur - (m + alpha) * p.prev) / x;
            const double step = p.cur / dp;
            x -= step;
            if (std::abs(step) <= 1e-16 * x) break;
        }
        nodes[i] = x;

        // x p_k = b_{k+1} p_{k+1} + (2k + alpha + 1) p_k + b_k p_{k-1}, b_k = sqrt(k (k + alpha))
        double prev = 0.0, cur = 1.0 / std::sqrt(mu0), sum = cur * cur;
        int rescales = 0;
        for (int k = 0; k + 1 < m; ++k) {
            const double b_next = std::sqrt((k + 1) * (k + 1 + alpha));
            const double b_k = std::sqrt(k * (k + alpha));
            const double next = ((x - (2 * k + alpha + 1)) * cur - b_k * prev) / b_next;
            prev = cur;
            cur = next;
            sum += cur * cur;
            if (std::abs(cur) > 1e100) {
                prev *= 1e-100;
                cur *= 1e-100;
                sum *= 1e-200;
                ++rescales;
            }
        }
        weights[i] = rescales == 0 ? 1.0 / sum : std::exp(-std::log(sum) - 200.0 * rescales * std::log(10.0));
    }
    return QuadratureRule(alpha, std::move(nodes), std::move(weights));
}

/// sum_i w_i g(x_i), approximating the integral of g(x) x^alpha e^{-x} over (0, inf).
/// Nodes whose weight underflowed to zero are skipped.
template <class F>
double integrate(const QuadratureRule& rule, F&& g) {
    double sum = 0.0;
    const auto x = rule.nodes();
    const auto w = rule.weights();
    for (std::size_t i = 0; i < rule.size(); ++i) {
        if (w[i] == 0.0) continue;
        const double v = g(x[i]);
        if (!std::isfinite(v))
            throw quadrature_error("integrand is not finite at node " + std::to_string(i) + " (x = " +
                                       std::to_string(x[i]) + ")",
                                   i, x[i]);
        sum += w[i] * v;
    }
    return sum;
}

/// Integral of h(x) x e^{-x/2} over (0, inf) with the alpha = 1 rule after x = 2t.
template <class F>
double integrate_halfweight(const QuadratureRule& rule_alpha1, F&& h) {
    if (rule_alpha1.alpha() != 1.0)
        throw std::invalid_argument("integrate_halfweight: rule must have alpha = 1");
    return integrate(rule_alpha1, [&](double t) { return 4.0 * h(2.0 * t); });
}

template <class F>
double integrate_halfweight(F&& h, int m) {
    return integrate_halfweight(gauss_laguerre(1.0, m), std::forward<F>(h));
}

struct AdaptiveResult {
    double value = 0.0;
    int m_used = 0;
    bool converged = false;
    double achieved = 0.0;            // last |difference| / (1 + |value|)
    std::size_t evaluations = 0;      // integrand calls
};

/// The alpha = 1 rules m0, 2 m0, 4 m0, ... capped at 256, built once and reused
/// for every adaptive half-weight integral.
class HalfWeightIntegrator {
public:
    HalfWeightIntegrator(int m0, double tol) : tol_(tol) {
        if (m0 < 1 || m0 > gauss_laguerre_max_size)
            throw std::invalid_argument("integrate_adaptive: m0 must lie in [1, 256], got " + std::to_string(m0));
        if (!(tol > 0.0)) throw std::invalid_argument("integrate_adaptive: tol must be > 0");
        for (int m = m0;; m *= 2) {
            m = std::min(m, gauss_laguerre_max_size);
            rules_.push_back(gauss_laguerre(1.0, m));
            if (m == gauss_laguerre_max_size) break;
        }
    }

    double tol() const noexcept { return tol_; }
    std::span<const QuadratureRule> ladder() const noexcept { return rules_; }

    template <class F>
    AdaptiveResult operator()(F&& h) const {
        AdaptiveResult r;
        double prev = integrate_halfweight(rules_[0], h);
        r.evaluations += rules_[0].size();
        r.value = prev;
        r.m_used = static_cast<int>(rules_[0].size());
        r.achieved = std::numeric_limits<double>::infinity();
        for (std::size_t k = 1; k < rules_.size(); ++k) {
            const double cur = integrate_halfweight(rules_[k], h);
            r.evaluations += rules_[k].size();
            r.value = cur;
            r.m_used = static_cast<int>(rules_[k].size());
            r.achieved = std::abs(cur - prev) / (1.0 + std::abs(cur));
            if (r.achieved <= tol_) {
                r.converged = true;
                return r;
            }
            prev = cur;
        }
        return r;
    }

private:
    double tol_;
    std::vector<QuadratureRule> rules_;
};

/// Doubles the rule size from m0 until successive half-weight integrals agree to
/// tol (1 + |value|) or the 256-point cap is hit; the result says which.
template <class F>
AdaptiveResult integrate_adaptive(F&& h, int m0, double tol) {
    return HalfWeightIntegrator(m0, tol)(std::forward<F>(h));
}

}  // namespace lagsob
