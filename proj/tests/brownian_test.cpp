#include "maxproc/brownian.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace maxproc;

TEST(GenBrownian, ZeroAtOrigin) {
    const PathConfig cfg{1.0 / 64.0, 4.0, 42, 1};
    const BrownianPath p = gen_brownian(cfg, 0);
    EXPECT_EQ(p.values[p.zero_index()], 0.0);
    EXPECT_EQ(p.values.size(), 2 * p.n_side + 1);
    EXPECT_DOUBLE_EQ(p.t_of(p.zero_index()), 0.0);
    EXPECT_DOUBLE_EQ(p.t_of(0), -4.0);
}

TEST(GenBrownian, DeterministicPerSeedAndIndex) {
    const PathConfig cfg{1.0 / 64.0, 4.0, 42, 4};
    const BrownianPath p1 = gen_brownian(cfg, 3);
    const BrownianPath p2 = gen_brownian(cfg, 3);
    ASSERT_EQ(p1.values.size(), p2.values.size());
    for (std::size_t i = 0; i < p1.values.size(); ++i) EXPECT_EQ(p1.values[i], p2.values[i]);

    const BrownianPath q = gen_brownian(cfg, 4);
    bool differs = false;
    for (std::size_t i = 0; i < p1.values.size() && !differs; ++i)
        differs = p1.values[i] != q.values[i];
    EXPECT_TRUE(differs);
}

TEST(GenBrownian, SubstreamSeedsDecorrelate) {
    EXPECT_NE(substream_seed(1, 0), substream_seed(1, 1));
    EXPECT_NE(substream_seed(1, 0), substream_seed(2, 0));
}

TEST(GenBrownian, EndpointVarianceMatchesHorizon) {
    const double T = 4.0;
    const PathConfig cfg{1.0 / 64.0, T, 20240517, 10000};
    double s2r = 0.0, s2l = 0.0;
    for (int i = 0; i < cfg.n_paths; ++i) {
        const BrownianPath p = gen_brownian(cfg, static_cast<std::uint64_t>(i));
        const double br = p.values.back();
        const double bl = p.values.front();
        s2r += br * br;
        s2l += bl * bl;
    }
    const double n = cfg.n_paths;
    // Var of the variance estimator of N(0, T) is 2 T^2 / n
    const double band = 5.0 * T * std::sqrt(2.0 / n);
    EXPECT_NEAR(s2r / n, T, band);
    EXPECT_NEAR(s2l / n, T, band);
}

TEST(GenBrownian, DisjointIncrementsUncorrelated) {
    const double T = 4.0;
    const PathConfig cfg{1.0 / 64.0, T, 7, 8000};
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (int i = 0; i < cfg.n_paths; ++i) {
        const BrownianPath p = gen_brownian(cfg, static_cast<std::uint64_t>(i));
        const std::size_t z = p.zero_index();
        const std::size_t half = p.n_side / 2;
        const double x = p.values[z + half];                     // B_{T/2}
        const double y = p.values[z + 2 * half] - p.values[z + half];  // B_T - B_{T/2}
        sxy += x * y;
        sxx += x * x;
        syy += y * y;
    }
    const double corr = sxy / std::sqrt(sxx * syy);
    EXPECT_NEAR(corr, 0.0, 5.0 / std::sqrt(static_cast<double>(cfg.n_paths)));
}

TEST(GenBrownian, TwoSidesIndependent) {
    const PathConfig cfg{1.0 / 64.0, 4.0, 99, 8000};
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (int i = 0; i < cfg.n_paths; ++i) {
        const BrownianPath p = gen_brownian(cfg, static_cast<std::uint64_t>(i));
        const double x = p.values.front();
        const double y = p.values.back();
        sxy += x * y;
        sxx += x * x;
        syy += y * y;
    }
    EXPECT_NEAR(sxy / std::sqrt(sxx * syy), 0.0, 5.0 / std::sqrt(static_cast<double>(cfg.n_paths)));
}

TEST(PathConfig, Validation) {
    EXPECT_THROW(validate(PathConfig{0.0, 1.0, 0, 1}), InvalidParams);
    EXPECT_THROW(validate(PathConfig{0.1, -1.0, 0, 1}), InvalidParams);
    EXPECT_THROW(validate(PathConfig{0.1, 1.0, 0, 0}), InvalidParams);
}
