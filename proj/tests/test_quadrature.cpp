#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "lagsob/laguerre.hpp"
#include "lagsob/quadrature.hpp"
#include "lagsob/tridiagonal.hpp"

using namespace lagsob;

TEST(Tridiagonal, SmallKnownSpectrum) {
    // tridiag(-1, 2, -1) of size 4: eigenvalues 2 - 2 cos(k pi / 5)
    const std::vector<double> d(4, 2.0), e(3, -1.0);
    const auto r = symmetric_tridiagonal_eigen<double>(d, e);
    ASSERT_EQ(r.values.size(), 4u);
    for (int k = 1; k <= 4; ++k) EXPECT_NEAR(r.values[k - 1], 2.0 - 2.0 * std::cos(k * M_PI / 5.0), 1e-14);
    double s = 0.0;
    for (double v : r.first_components) s += v * v;
    EXPECT_NEAR(s, 1.0, 1e-14);
}

TEST(GaussLaguerre, Examples) {
    const auto r0 = gauss_laguerre(0.0, 1);
    EXPECT_NEAR(r0.nodes()[0], 1.0, 1e-15);
    EXPECT_NEAR(r0.weights()[0], 1.0, 1e-15);

    const auto r1 = gauss_laguerre(1.0, 1);
    EXPECT_NEAR(r1.nodes()[0], 2.0, 1e-15);
    EXPECT_NEAR(r1.weights()[0], 1.0, 1e-15);

    const auto r2 = gauss_laguerre(0.0, 2);
    const double s2 = std::sqrt(2.0);
    EXPECT_NEAR(r2.nodes()[0], 2.0 - s2, 1e-15);
    EXPECT_NEAR(r2.nodes()[1], 2.0 + s2, 1e-14);
    EXPECT_NEAR(r2.weights()[0], (2.0 + s2) / 4.0, 1e-15);
    EXPECT_NEAR(r2.weights()[1], (2.0 - s2) / 4.0, 1e-15);
}

TEST(GaussLaguerre, RejectsBadSize) {
    EXPECT_THROW(gauss_laguerre(0.0, 0), std::invalid_argument);
    EXPECT_THROW(gauss_laguerre(0.0, 257), std::invalid_argument);
    EXPECT_THROW(gauss_laguerre(-1.0, 4), std::invalid_argument);
    EXPECT_NO_THROW(gauss_laguerre(0.0, 256));
}

TEST(GaussLaguerre, RuleInvariants) {
    for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
        for (int m = 1; m <= 150; ++m) {
            const auto r = gauss_laguerre(alpha, m);
            ASSERT_EQ(r.size(), static_cast<std::size_t>(m));
            double wsum = 0.0;
            for (int i = 0; i < m; ++i) {
                EXPECT_GT(r.nodes()[i], 0.0);
                if (i) { EXPECT_GT(r.nodes()[i], r.nodes()[i - 1]); }
                EXPECT_GT(r.weights()[i], 0.0) << alpha << " " << m << " " << i;
                wsum += r.weights()[i];
            }
            const double g = std::tgamma(alpha + 1.0);
            EXPECT_NEAR(wsum, g, 1e-10 * g) << alpha << " " << m;
        }
    }
}

TEST(GaussLaguerre, LargeRulesUnderflowGracefully) {
    for (int m : {200, 256}) {
        const auto r = gauss_laguerre(1.0, m);
        double wsum = 0.0;
        for (int i = 0; i < m; ++i) {
            EXPECT_GE(r.weights()[i], 0.0);
            EXPECT_TRUE(std::isfinite(r.nodes()[i]));
            if (i) { EXPECT_GT(r.nodes()[i], r.nodes()[i - 1]); }
            wsum += r.weights()[i];
        }
        EXPECT_NEAR(wsum, 1.0, 1e-10);
    }
}

TEST(GaussLaguerre, ExactnessAgainstGammaMoments) {
    for (double alpha : {0.0, 1.0, 2.0})
        for (int m = 1; m <= 40; ++m) {
            const auto r = gauss_laguerre(alpha, m);
            for (int k = 0; k <= 2 * m - 1; ++k) {
                const double q = integrate(r, [k](double x) { return std::pow(x, k); });
                const double exact = std::exp(std::lgamma(k + alpha + 1.0));
                EXPECT_NEAR(q, exact, 1e-9 * exact) << "alpha " << alpha << " m " << m << " k " << k;
            }
        }
}

TEST(GaussLaguerre, NodesInterlace) {
    for (double alpha : {0.0, 1.0, 2.0})
        for (int m = 1; m < 60; ++m) {
            const auto a = gauss_laguerre(alpha, m);
            const auto b = gauss_laguerre(alpha, m + 1);
            for (int i = 0; i < m; ++i) {
                EXPECT_LT(b.nodes()[i], a.nodes()[i]);
                EXPECT_LT(a.nodes()[i], b.nodes()[i + 1]);
            }
        }
}

TEST(GaussLaguerre, NodesAreLaguerreZeros) {
    for (double alpha : {0.0, 1.0, 2.5})
        for (int m : {5, 20, 64}) {
            const auto r = gauss_laguerre(alpha, m);
            const LaguerreFamily fam(alpha);
            for (double x : r.nodes()) {
                // residual relative to the size of the polynomial's derivative at the root
                const double d = std::abs(laguerre_derivative(fam, m, x));
                EXPECT_LE(std::abs(laguerre_eval(fam, m, x)), 1e-12 * d * std::max(1.0, x)) << m << " " << x;
            }
        }
}

// The two weight formulas are independent routes to the same rule.
TEST(GaussLaguerre, GolubWelschWeightsAgree) {
    for (double alpha : {0.0, 1.0, 2.0})
        for (int m : {1, 2, 7, 16, 32, 40}) {
            const auto gw = gauss_laguerre_golub_welsch(alpha, m);
            const auto r = gauss_laguerre(alpha, m);
            for (int i = 0; i < m; ++i) {
                EXPECT_NEAR(gw.nodes()[i], r.nodes()[i], 1e-11 * r.nodes()[i]);
                // eigenvector weights of tiny magnitude carry absolute, not relative, error
                EXPECT_NEAR(gw.weights()[i], r.weights()[i], 1e-9 * r.weights()[i] + 1e-15) << m << " " << i;
            }
        }
}

TEST(GaussLaguerre, DiscreteOrthogonality) {
    const LaguerreFamily l1(1.0);
    for (int n_max = 0; n_max <= 25; ++n_max) {
        const auto r = gauss_laguerre(1.0, n_max + 1);
        for (int i = 0; i <= n_max; ++i)
            for (int j = 0; j <= i; ++j) {
                const double g =
                    integrate(r, [&](double x) { return laguerre_eval(l1, i, x) * laguerre_eval(l1, j, x); });
                if (i == j)
                    EXPECT_NEAR(g, i + 1.0, 1e-9 * (i + 1.0));
                else
                    EXPECT_NEAR(g, 0.0, 1e-9) << n_max << " " << i << " " << j;
            }
    }
}

TEST(Integrate, Examples) {
    const LaguerreFamily l1(1.0);
    const auto r2 = gauss_laguerre(1.0, 2);
    const auto r3 = gauss_laguerre(1.0, 3);
    EXPECT_NEAR(integrate(r2, [](double) { return 1.0; }), 1.0, 1e-15);
    EXPECT_NEAR(integrate(r2, [&](double x) { return std::pow(laguerre_eval(l1, 1, x), 2); }), 2.0, 1e-14);
    EXPECT_NEAR(integrate(r3, [&](double x) { return laguerre_eval(l1, 1, x) * laguerre_eval(l1, 2, x); }), 0.0,
                1e-14);
}

TEST(Integrate, NonFiniteIntegrandNamesNode) {
    const auto r = gauss_laguerre(0.0, 4);
    const double bad = r.nodes()[2];
    try {
        integrate(r, [bad](double x) { return x == bad ? std::numeric_limits<double>::infinity() : x; });
        FAIL() << "expected quadrature_error";
    } catch (const quadrature_error& e) {
        EXPECT_EQ(e.node_index(), 2u);
        EXPECT_EQ(e.node(), bad);
        EXPECT_NE(std::string(e.what()).find("node 2"), std::string::npos);
    }
}

TEST(IntegrateHalfweight, Examples) {
    for (int m : {1, 3, 10}) EXPECT_NEAR(integrate_halfweight([](double) { return 1.0; }, m), 4.0, 1e-14);
    EXPECT_NEAR(integrate_halfweight([](double x) { return x; }, 2), 16.0, 1e-13);
    EXPECT_NEAR(integrate_halfweight([](double x) { return std::exp(-0.5 * x); }, 64), 1.0, 1e-13);
}

TEST(IntegrateHalfweight, RequiresAlphaOneRule) {
    EXPECT_THROW(integrate_halfweight(gauss_laguerre(0.0, 4), [](double) { return 1.0; }), std::invalid_argument);
}

TEST(IntegrateAdaptive, PolynomialConvergesAtFirstDoubling) {
    const auto r = integrate_adaptive([](double x) { return 1.0 + x * (2.0 + x * (-1.0 + x * x * x * 0.5)); }, 4,
                                      1e-12);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.m_used, 8);
    // 4 int 1 + 2x - x^2 + x^5/2 against x e^{-x/2}, moments 2^{k+2} (k+1)!
    EXPECT_NEAR(r.value, 4.0 + 2.0 * 16.0 - 96.0 + 0.5 * std::pow(2.0, 7) * 720.0, 1e-9);
    EXPECT_EQ(r.evaluations, 12u);
}

// numpy trapezoid, 1e6 panels on [0, 100]: 0.2530723689155666 (mpmath: 0.25307237141556668)
TEST(IntegrateAdaptive, ExpDecayRhsZerothMoment) {
    const auto r = integrate_adaptive(
        [](double x) { return std::exp(-x) * (3.0 * std::cos(x) - 2.0 * (-1.0 + x) * std::sin(x)); }, 16, 1e-12);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, 0.2530723689155666, 1e-8);
    EXPECT_NEAR(r.value, 0.25307237141556668, 1e-13);
}

// numpy trapezoid, 1e6 panels on [0, 200]: 0.38436594539226243
TEST(IntegrateAdaptive, AlgebraicIntegrandMatchesTrapezoid) {
    const auto r = integrate_adaptive([](double x) { return 1.0 / ((1.0 + x) * (1.0 + x)); }, 16, 1e-10);
    EXPECT_NEAR(r.value, 0.38436594539226243, 1e-8);
}

TEST(IntegrateAdaptive, ReportsNonConvergenceAtCap) {
    const auto r = integrate_adaptive([](double x) { return std::cos(3.0 * x) / std::pow(1.0 + x, 1.5); }, 32, 1e-15);
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.m_used, 256);
    EXPECT_GT(r.achieved, 1e-15);
    EXPECT_TRUE(std::isfinite(r.value));
}

TEST(IntegrateAdaptive, RejectsBadArguments) {
    auto one = [](double) { return 1.0; };
    EXPECT_THROW(integrate_adaptive(one, 0, 1e-12), std::invalid_argument);
    EXPECT_THROW(integrate_adaptive(one, 300, 1e-12), std::invalid_argument);
    EXPECT_THROW(integrate_adaptive(one, 8, 0.0), std::invalid_argument);
}

TEST(IntegrateAdaptive, LadderClampsAtCap) {
    const HalfWeightIntegrator integ(48, 1e-12);
    std::vector<int> sizes;
    for (const auto& r : integ.ladder()) sizes.push_back(static_cast<int>(r.size()));
    EXPECT_EQ(sizes, (std::vector<int>{48, 96, 192, 256}));
}
