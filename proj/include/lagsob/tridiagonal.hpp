#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lagsob {

template <std::floating_point Real>
struct TridiagonalEigen {
    std::vector<Real> values;            // ascending
    std::vector<Real> first_components;  // first entry of each unit eigenvector
};

inline constexpr int ql_max_sweeps = 50;

/// Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL with
/// Wilkinson-type shifts, tracking only the first row of the eigenvector matrix
/// (all Golub-Welsch needs).
///
/// `diag` has n entries, `offdiag` has n - 1. Throws std::runtime_error if an
/// eigenvalue needs more than 50 sweeps.
template <std::floating_point Real>
TridiagonalEigen<Real> symmetric_tridiagonal_eigen(std::span<const Real> diag, std::span<const Real> offdiag) {
    const std::size_t n = diag.size();
    if (n == 0) throw std::invalid_argument("symmetric_tridiagonal_eigen: empty matrix");
    if (offdiag.size() + 1 != n)
        throw std::invalid_argument("symmetric_tridiagonal_eigen: off-diagonal must have n-1 entries");

    std::vector<Real> d(diag.begin(), diag.end());
    std::vector<Real> e(n, Real(0));
    std::copy(offdiag.begin(), offdiag.end(), e.begin());
    std::vector<Real> z(n, Real(0));
    z[0] = 1;

    const Real eps = std::numeric_limits<Real>::epsilon();
    for (std::size_t l = 0; l < n; ++l) {
        int sweeps = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const Real dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (sweeps++ == ql_max_sweeps)
                throw std::runtime_error("symmetric_tridiagonal_eigen: no convergence after " +
                                         std::to_string(ql_max_sweeps) + " sweeps at index " +
                                         std::to_string(l));
            Real g = (d[l + 1] - d[l]) / (Real(2) * e[l]);
            Real r = std::hypot(g, Real(1));
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            Real s = 1, c = 1, p = 0;
            bool deflated = false;
            for (std::size_t i = m; i-- > l;) {
                Real f = s * e[i];
                const Real b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == Real(0)) {
                    d[i + 1] -= p;
                    e[m] = 0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + Real(2) * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if (deflated) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0;
        } while (m != l);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    TridiagonalEigen<Real> out;
    out.values.reserve(n);
    out.first_components.reserve(n);
    for (std::size_t k : order) {
        out.values.push_back(d[k]);
        out.first_components.push_back(z[k]);
    }
    return out;
}

}  // namespace lagsob
