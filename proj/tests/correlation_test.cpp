#include "maxproc/correlation.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "oracles.hpp"

using namespace maxproc;

TEST(CorrelationKernel, PiecewiseValues) {
    const ProcessParams p11{1.0, 1.0};
    EXPECT_EQ(correlation_kernel(p11, 0.5), 0.0);
    EXPECT_EQ(correlation_kernel(p11, 1.0), 0.0);
    // middle branch: (1/(pi r)) (sqrt((r-b)/b) + sqrt((r-a)/a)) at r = 1.5
    EXPECT_NEAR(correlation_kernel(p11, 1.5), 0.3001054387190354, 1e-12);
    EXPECT_NEAR(correlation_kernel(p11, 5.0), 1.0 / M_PI, 1e-15);

    const ProcessParams p21{2.0, 1.0};
    // r = a+b: both branch formulas collapse to 1/(pi sqrt(ab))
    EXPECT_NEAR(correlation_kernel(p21, 3.0), 1.0 / (M_PI * std::sqrt(2.0)), 1e-14);
    EXPECT_NEAR(correlation_kernel(p21, 3.0), 0.2250790790392765, 1e-12);
}

TEST(CorrelationKernel, ContinuityAtKnots) {
    const double eps = 1e-9;
    for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}, std::pair{9.0, 4.0}}) {
        const ProcessParams p{a, b};
        for (double knot : {b, a, a + b}) {
            const double lo = correlation_kernel(p, knot - eps);
            const double hi = correlation_kernel(p, knot + eps);
            EXPECT_NEAR(lo, hi, 1e-4) << "knot " << knot;  // sqrt has infinite slope at b
            EXPECT_NEAR(correlation_kernel(p, knot), hi, 1e-4);
        }
        // algebraic identity at a+b, no continuity tolerance needed
        EXPECT_NEAR(correlation_kernel(p, a + b), intensity(p), 1e-15);
    }
}

TEST(CorrelationKernel, OneSidedKernelIsUnboundedLeftReachCase) {
    // with the left reach pushed beyond the window, only the right-reach
    // factor of the two-reach kernel survives
    const double a = 1.0;
    for (double r : {1.2, 1.7, 3.0, 50.0}) {
        EXPECT_DOUBLE_EQ(one_sided_kernel(a, r), correlation_kernel(ProcessParams{1e9, a}, r)) << r;
    }
    EXPECT_EQ(one_sided_kernel(a, 0.9), 0.0);
    EXPECT_EQ(one_sided_kernel(a, a), 0.0);
}

TEST(CorrelationFunction, IntensityAndProducts) {
    const ProcessParams p{1.0, 1.0};
    const std::array<double, 1> one{0.0};
    EXPECT_NEAR(correlation_function(p, one), 1.0 / M_PI, 1e-15);

    const std::array<double, 2> close{0.0, 0.5};
    EXPECT_EQ(correlation_function(p, close), 0.0);

    // frozen from the kernel values: c * h(1.5) * h(3.0)
    const std::array<double, 3> three{0.0, 1.5, 4.5};
    EXPECT_NEAR(correlation_function(p, three), 0.0304070382685157, 1e-12);
}

TEST(CorrelationFunction, FactorizationAtLongRange) {
    // once a spacing reaches a+b the correlation function factorizes: the
    // kernel value at the long gap equals the intensity, so
    // f3(t1,t2,t3) = f2(t1,t2) f1(t3)
    const ProcessParams p{2.0, 1.0};
    const std::array<double, 3> times{0.0, 2.5, 6.0};  // 6.0 - 2.5 >= a+b
    const std::array<double, 2> head{0.0, 2.5};
    const std::array<double, 1> tail{6.0};
    const double lhs = correlation_function(p, times);
    const double rhs = correlation_function(p, head) * correlation_function(p, tail);
    EXPECT_NEAR(lhs, rhs, 1e-15);
}

TEST(CorrelationFunction, RejectsUnsortedOrEmpty) {
    const ProcessParams p{1.0, 1.0};
    const std::array<double, 2> bad{1.0, 0.0};
    EXPECT_THROW(correlation_function(p, bad), InvalidParams);
    EXPECT_THROW(correlation_function(p, std::span<const double>{}), InvalidParams);
}

TEST(NonDeterminantalFacts, PairFunctionZeroAtBPositiveAt2B) {
    for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}, std::pair{4.0, 1.0},
                        std::pair{9.0, 4.0}}) {
        const ProcessParams p{a, b};
        const std::array<double, 2> at_b{0.0, b};
        const std::array<double, 2> at_2b{0.0, 2.0 * b};
        EXPECT_EQ(correlation_function(p, at_b), 0.0) << a << "," << b;
        EXPECT_GT(correlation_function(p, at_2b), 0.0) << a << "," << b;
    }
}

TEST(KernelMaxRegime, RepulsiveWhenALeFourB) {
    const KernelMaxRegime r = check_h_max_regime(ProcessParams{1.0, 1.0});
    EXPECT_TRUE(r.repulsive);
    EXPECT_NEAR(r.maxval, 1.0 / M_PI, 1e-15);
    EXPECT_DOUBLE_EQ(r.argmax, 2.0);
}

TEST(KernelMaxRegime, InteriorPeakWhenAGreaterFourB) {
    const KernelMaxRegime r = check_h_max_regime(ProcessParams{9.0, 1.0});
    EXPECT_FALSE(r.repulsive);
    EXPECT_DOUBLE_EQ(r.argmax, 2.0);
    EXPECT_NEAR(r.maxval, 1.0 / (2.0 * M_PI), 1e-12);
    EXPECT_GT(r.maxval, intensity(ProcessParams{9.0, 1.0}));
    EXPECT_NEAR(intensity(ProcessParams{9.0, 1.0}), 1.0 / (3.0 * M_PI), 1e-15);
}

TEST(KernelMaxRegime, BoundaryCaseTies) {
    // at a = 4b the interior peak exactly matches the plateau
    const ProcessParams p{4.0, 1.0};
    EXPECT_NEAR(correlation_kernel(p, 2.0), intensity(p), 1e-15);
    const KernelMaxRegime r = check_h_max_regime(p);
    EXPECT_TRUE(r.repulsive);
}

TEST(RiseFallLaplace, ClosedFormValues) {
    EXPECT_NEAR(rise_fall_laplace(1.0, 1.0), std::sqrt(2.0) / 3.0, 1e-15);
    EXPECT_NEAR(rise_fall_laplace(1.0, 1.0), 0.4714045207910317, 1e-14);
    EXPECT_NEAR(rise_fall_laplace(2.0, 3.0), 0.2413364125799320, 1e-14);
    EXPECT_DOUBLE_EQ(rise_fall_laplace(0.0, 0.0), 1.0);
    for (double beta : {0.25, 1.0, 4.0})
        EXPECT_NEAR(rise_fall_laplace(0.0, beta), 1.0 / std::sqrt(1.0 + beta), 1e-15);
    EXPECT_THROW(rise_fall_laplace(-1.0, 0.5), InvalidParams);
}

TEST(RiseFallLaplace, MatchesAngularQuadrature) {
    // independent oracle: (2/pi) int_0^{pi/2} dth / ((1+alpha sin^2)(1+beta cos^2))
    for (auto [alpha, beta] : {std::pair{1.0, 1.0}, std::pair{2.0, 3.0}, std::pair{0.5, 4.0}}) {
        auto f = [alpha = alpha, beta = beta](double th) {
            const double s = std::sin(th), c = std::cos(th);
            return 1.0 / ((1.0 + alpha * s * s) * (1.0 + beta * c * c));
        };
        const double quad = (2.0 / M_PI) * oracle::simpson(f, 0.0, M_PI / 2.0, 400);
        EXPECT_NEAR(rise_fall_laplace(alpha, beta), quad, 1e-10);
    }
}

TEST(ProcessParams, Validation) {
    EXPECT_THROW(validate(ProcessParams{1.0, 2.0}), InvalidParams);
    EXPECT_THROW(validate(ProcessParams{1.0, 0.0}), InvalidParams);
    EXPECT_NO_THROW(validate(ProcessParams{2.0, 2.0}));
}
