// Randomized invariant checks with a fixed-seed generator: parameter pairs,
// grids and evaluation points are drawn fresh each iteration, the asserted
// properties hold for every draw.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "maxproc/correlation.hpp"
#include "maxproc/gap_density.hpp"
#include "maxproc/grid_function.hpp"
#include "maxproc/kummer.hpp"

using namespace maxproc;

namespace {

std::mt19937_64 g_rng(0x9e3779b9);

ProcessParams random_params() {
    std::uniform_real_distribution<double> ub(0.2, 3.0);
    std::uniform_real_distribution<double> uf(1.0, 6.0);
    const double b = ub(g_rng);
    return {b * uf(g_rng), b};
}

}  // namespace

TEST(KernelProperties, SupportBoundsAndKnots) {
    for (int it = 0; it < 200; ++it) {
        const ProcessParams p = random_params();
        const double plateau = intensity(p);
        const double cap = std::max(plateau, correlation_kernel(p, 2.0 * p.b));
        std::uniform_real_distribution<double> ur(0.0, 2.0 * (p.a + p.b));
        for (int j = 0; j < 50; ++j) {
            const double r = ur(g_rng);
            const double h = correlation_kernel(p, r);
            EXPECT_GE(h, 0.0);
            EXPECT_LE(h, cap * (1.0 + 1e-12)) << "a=" << p.a << " b=" << p.b << " r=" << r;
            if (r <= p.b) EXPECT_EQ(h, 0.0);
        }
        EXPECT_NEAR(correlation_kernel(p, p.a + p.b), plateau, 1e-14 * plateau);
        // peak regime boundary: interior max beats the plateau iff a > 4b
        const KernelMaxRegime reg = check_h_max_regime(p);
        EXPECT_EQ(reg.repulsive, !(p.a > 4.0 * p.b * (1.0 + 1e-12)))
            << "a=" << p.a << " b=" << p.b;
    }
}

TEST(KernelProperties, CorrelationFunctionFactorizesAcrossLongGaps) {
    for (int it = 0; it < 100; ++it) {
        const ProcessParams p = random_params();
        std::uniform_real_distribution<double> gap(0.0, 2.0 * (p.a + p.b));
        const double t1 = 0.0;
        const double t2 = t1 + gap(g_rng);
        const double t3 = t2 + p.a + p.b + gap(g_rng);  // decoupling spacing
        const std::array<double, 3> all{t1, t2, t3};
        const std::array<double, 2> head{t1, t2};
        const std::array<double, 1> tail{t3};
        const double lhs = correlation_function(p, all);
        const double rhs = correlation_function(p, head) * correlation_function(p, tail);
        EXPECT_NEAR(lhs, rhs, 1e-13 * std::max(1.0, std::abs(rhs)));
    }
}

TEST(RiseFallLaplace, SymmetricAndInUnitInterval) {
    std::uniform_real_distribution<double> u(0.0, 20.0);
    for (int it = 0; it < 500; ++it) {
        const double alpha = u(g_rng), beta = u(g_rng);
        const double v = rise_fall_laplace(alpha, beta);
        EXPECT_GT(v, 0.0);
        EXPECT_LE(v, 1.0);
        EXPECT_DOUBLE_EQ(v, rise_fall_laplace(beta, alpha));
        // adding damping can only shrink the transform
        EXPECT_LE(rise_fall_laplace(alpha + 1.0, beta), v);
    }
}

TEST(ConvProperties, SupportAdditionOnRandomGrids) {
    std::uniform_int_distribution<int> usize(40, 160);
    std::uniform_real_distribution<double> uval(0.1, 2.0);
    for (int it = 0; it < 50; ++it) {
        const int n = usize(g_rng);
        std::uniform_int_distribution<int> ustart(1, n / 2);
        const int s1 = ustart(g_rng), s2 = ustart(g_rng);
        GridFunction f = make_grid(0.01, static_cast<std::size_t>(n));
        GridFunction g = make_grid(0.01, static_cast<std::size_t>(n));
        for (int k = s1; k < n; ++k) f.values[static_cast<std::size_t>(k)] = uval(g_rng);
        for (int k = s2; k < n; ++k) g.values[static_cast<std::size_t>(k)] = uval(g_rng);
        const GridFunction conv = conv_grid(f, g);
        for (int k = 0; k < std::min(s1 + s2, n); ++k)
            EXPECT_EQ(conv.values[static_cast<std::size_t>(k)], 0.0);
        if (s1 + s2 + 1 < n) EXPECT_GT(conv.values[static_cast<std::size_t>(s1 + s2 + 1)], 0.0);
    }
}

TEST(GapDensityProperties, SupportAndKernelSegmentForRandomParams) {
    for (int it = 0; it < 8; ++it) {
        const ProcessParams p = random_params();
        const double dx = p.b / 60.0;
        const double r_max = 2.5 * (p.a + p.b);
        const GridFunction g = gap_density(p, dx, r_max);
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double r = g.x(k);
            if (r <= p.b) {
                EXPECT_EQ(g.values[k], 0.0);
            } else if (r <= 2.0 * p.b) {
                EXPECT_NEAR(g.values[k], correlation_kernel(p, r), 1e-12);
            }
            EXPECT_GE(g.values[k], -1e-9);
        }
    }
}

TEST(KummerProperties, DerivativeIdentityAtRandomPoints) {
    std::uniform_real_distribution<double> ux(-3.0, 1.5);
    for (int it = 0; it < 100; ++it) {
        const double x = ux(g_rng);
        const double h = 1e-5;
        const double fd = (kummer_m(-0.5, 0.5, x + h) - kummer_m(-0.5, 0.5, x - h)) / (2.0 * h);
        const double ref = -kummer_m(0.5, 1.5, x);
        EXPECT_NEAR(fd, ref, 1e-6 * std::max(1.0, std::abs(ref))) << x;
    }
}

TEST(GridProperties, IntegralToWindowEndMatchesGridIntegral) {
    std::uniform_int_distribution<int> usize(10, 200);
    std::uniform_real_distribution<double> uval(-1.0, 3.0);
    for (int it = 0; it < 50; ++it) {
        GridFunction f = make_grid(0.05, static_cast<std::size_t>(usize(g_rng)));
        for (double& v : f.values) v = uval(g_rng);
        EXPECT_NEAR(integral_to(f, f.x_back()), grid_integral(f), 1e-12);
        EXPECT_NEAR(integral_to(f, f.x_back() + 5.0), grid_integral(f), 1e-12);
    }
}
