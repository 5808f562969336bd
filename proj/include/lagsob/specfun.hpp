#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace lagsob {

/// Order of a Bessel function of the first kind.
class BesselOrder {
public:
    explicit BesselOrder(double alpha) : alpha_(alpha) {
        if (!(alpha >= 0.0) || !std::isfinite(alpha))
            throw std::invalid_argument("BesselOrder: order must be finite and >= 0, got " +
                                        std::to_string(alpha));
    }
    double value() const noexcept { return alpha_; }

private:
    double alpha_;
};

/// Natural log of the gamma function for x > 0.
inline double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("log_gamma: argument must be finite and > 0, got " +
                                std::to_string(x));
    return std::lgamma(x);
}

inline constexpr double bessel_max_argument = 60.0;

namespace detail {

// Sums 1 + sum_{m>=1} prod_{i<=m} (-q)/(i (i + alpha)), i.e. the bracketed part of
// the ascending series once (z/2)^alpha / Gamma(alpha+1) has been factored out.
// Kahan-compensated; the caller picks Real wide enough for the cancellation at hand.
template <class Real>
Real bessel_series_bracket(Real q, double alpha) {
    Real term = 1;
    Real sum = 1;
    Real carry = 0;
    for (int m = 1; m < 1000; ++m) {
        term *= -q / (Real(m) * (Real(m) + Real(alpha)));
        Real y = term - carry;
        Real t = sum + y;
        carry = (t - sum) - y;
        sum = t;
        using std::abs;
        if (abs(term) < Real(1e-17) * (abs(sum) + Real(1e-300)) && Real(m) * Real(m) > q)
            break;
    }
    return sum;
}

}  // namespace detail

/// Bessel function of the first kind J_alpha(z) by its ascending power series.
///
/// The series alternates with terms as large as I_alpha(z) ~ e^z / sqrt(2 pi z), so
/// for z > 4 the bracket is summed in 50-digit binary floating point; below that
/// double precision with compensated summation is enough for 1e-14 absolute.
/// Arguments outside [0, 60] are rejected.
inline double bessel_j(BesselOrder order, double z) {
    if (!(z >= 0.0) || !(z <= bessel_max_argument))
        throw std::domain_error("bessel_j: argument must lie in [0, 60], got " + std::to_string(z));
    const double alpha = order.value();
    if (z == 0.0) return alpha == 0.0 ? 1.0 : 0.0;

    const double half = 0.5 * z;
    const double prefactor = std::exp(alpha * std::log(half) - std::lgamma(alpha + 1.0));
    const double q = half * half;
    if (z <= 4.0) return prefactor * detail::bessel_series_bracket<double>(q, alpha);

    using wide = boost::multiprecision::cpp_bin_float_50;
    wide bracket = detail::bessel_series_bracket<wide>(wide(q), alpha);
    return prefactor * bracket.convert_to<double>();
}

}  // namespace lagsob
