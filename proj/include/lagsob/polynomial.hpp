#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lagsob {

/// Dense polynomial in the monomial basis, c[0] + c[1] x + ... + c[n] x^n.
class PolyCoeffs {
public:
    PolyCoeffs() : coeffs_{0.0} {}
    explicit PolyCoeffs(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw std::invalid_argument("PolyCoeffs: empty coefficient list");
    }
    PolyCoeffs(std::initializer_list<double> coeffs) : PolyCoeffs(std::vector<double>(coeffs)) {}

    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    std::span<const double> coeffs() const noexcept { return coeffs_; }
    double operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }
    double leading() const noexcept { return coeffs_.back(); }

    double operator()(double x) const noexcept {
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// sum |c_k| |x|^k, the scale against which rounding in operator() is measured.
    double abs_sum(double x) const noexcept {
        double acc = 0.0;
        const double ax = std::abs(x);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * ax + std::abs(*it);
        return acc;
    }

    PolyCoeffs derivative() const {
        if (coeffs_.size() == 1) return PolyCoeffs{0.0};
        std::vector<double> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
        return PolyCoeffs(std::move(d));
    }

    /// this + scale * other; the degree is the larger of the two.
    [[nodiscard]] PolyCoeffs axpy(double scale, const PolyCoeffs& other) const {
        std::vector<double> out(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = (*this)[k] + scale * other[k];
        return PolyCoeffs(std::move(out));
    }

private:
    std::vector<double> coeffs_;
};

}  // namespace lagsob
