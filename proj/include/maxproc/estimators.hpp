#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include "maxproc/brownian.hpp"
#include "maxproc/correlation.hpp"
#include "maxproc/detect.hpp"
#include "maxproc/errors.hpp"
#include "maxproc/grid_function.hpp"

namespace maxproc {

inline unsigned max_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("MAXPROC_THREADS")) {
        const long v = std::atol(env);
        if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return hw;
}

// Runs fn(path_index) for every index, possibly on several threads.  Each
// job writes only to its own slot, so the result is identical whatever the
// schedule.
template <class Fn>
void parallel_paths(int n_paths, Fn&& fn) {
    const unsigned nt = std::min<unsigned>(max_threads(), static_cast<unsigned>(n_paths));
    if (nt <= 1) {
        for (int i = 0; i < n_paths; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    workers.reserve(nt);
    for (unsigned t = 0; t < nt; ++t)
        workers.emplace_back([&] {
            for (int i; (i = next.fetch_add(1)) < n_paths;) fn(i);
        });
    for (auto& w : workers) w.join();
}

inline std::vector<PointSample> run_detection(const ProcessParams& p, const PathConfig& cfg) {
    validate(p);
    validate(cfg);
    if (!(cfg.horizon >= 10.0 * (p.a + p.b)))
        throw InvalidParams("run_detection: need horizon >= 10 (a+b)");
    std::vector<PointSample> out(static_cast<std::size_t>(cfg.n_paths));
    parallel_paths(cfg.n_paths, [&](int i) {
        out[static_cast<std::size_t>(i)] =
            detect_m_ab(gen_brownian(cfg, static_cast<std::uint64_t>(i)), p);
    });
    return out;
}

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t n = 0;
};

namespace detail {

inline MeanStderr mean_stderr(const std::vector<double>& xs) {
    MeanStderr s;
    s.n = xs.size();
    if (s.n == 0) return s;
    double m = 0.0;
    for (double x : xs) m += x;
    m /= static_cast<double>(s.n);
    double v = 0.0;
    for (double x : xs) v += (x - m) * (x - m);
    s.mean = m;
    if (s.n > 1) s.stderr_ = std::sqrt(v / static_cast<double>(s.n - 1) / static_cast<double>(s.n));
    return s;
}

}  // namespace detail

// Points per unit valid window, averaged over paths, with the path-to-path
// standard error.
inline MeanStderr estimate_intensity(const std::vector<PointSample>& samples) {
    if (samples.size() < 2) throw InsufficientData("estimate_intensity: need >= 2 samples");
    std::vector<double> rates;
    rates.reserve(samples.size());
    for (const auto& s : samples)
        rates.push_back(static_cast<double>(s.times.size()) / s.window_length());
    return detail::mean_stderr(rates);
}

// Histogram estimate of the correlation kernel h from ordered pair
// distances.  Bins are centered at multiples of bin_width.  The pair count
// in a bin around r, divided by the pair measure (window length minus r,
// times the bin width), estimates the two-point correlation f2(0, r); h is
// f2 over the intensity.
struct PairCorrelationEstimate {
    double bin_width = 0.0;
    std::vector<double> centers;
    std::vector<double> h_hat;
    std::vector<double> h_se;
    std::vector<long long> counts;
    double intensity_hat = 0.0;
    double intensity_se = 0.0;
    double min_distance = std::numeric_limits<double>::infinity();

    GridFunction to_grid() const {
        GridFunction g;
        g.x0 = bin_width;
        g.dx = bin_width;
        g.values = h_hat;
        return g;
    }
};

inline PairCorrelationEstimate estimate_pair_correlation(const std::vector<PointSample>& samples,
                                                         double bin_width, double r_max) {
    if (samples.size() < 2) throw InsufficientData("estimate_pair_correlation: need >= 2 samples");
    if (!(bin_width > 0.0) || !(r_max > bin_width))
        throw InvalidParams("estimate_pair_correlation: need 0 < bin_width < r_max");
    for (const auto& s : samples)
        if (bin_width < 2.0 * s.dt)
            throw InvalidParams("estimate_pair_correlation: need bin_width >= 2 dt");

    const auto n_bins = static_cast<std::size_t>(std::floor(r_max / bin_width + 1e-9));
    const std::size_t n_paths = samples.size();

    PairCorrelationEstimate est;
    est.bin_width = bin_width;
    est.centers.resize(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k)
        est.centers[k] = static_cast<double>(k + 1) * bin_width;
    est.counts.assign(n_bins, 0);

    // per-path f2 estimates per bin, for path-level standard errors
    std::vector<std::vector<double>> f2(n_bins, std::vector<double>(n_paths, 0.0));
    for (std::size_t pi = 0; pi < n_paths; ++pi) {
        const auto& t = samples[pi].times;
        const double wlen = samples[pi].window_length();
        for (std::size_t i = 0; i < t.size(); ++i) {
            for (std::size_t j = i + 1; j < t.size(); ++j) {
                const double r = t[j] - t[i];
                est.min_distance = std::min(est.min_distance, r);
                if (r >= r_max + 0.5 * bin_width) break;  // times sorted
                const auto bin = static_cast<long long>(std::floor(r / bin_width + 0.5)) - 1;
                if (bin < 0 || bin >= static_cast<long long>(n_bins)) continue;
                const double measure = wlen - est.centers[static_cast<std::size_t>(bin)];
                if (!(measure > 0.0)) continue;  // bin beyond the observable spacings
                ++est.counts[static_cast<std::size_t>(bin)];
                f2[static_cast<std::size_t>(bin)][pi] += 1.0 / (bin_width * measure);
            }
        }
    }

    const MeanStderr c = estimate_intensity(samples);
    if (!(c.mean > 0.0)) throw InsufficientData("estimate_pair_correlation: no detected points");
    est.intensity_hat = c.mean;
    est.intensity_se = c.stderr_;

    est.h_hat.resize(n_bins);
    est.h_se.resize(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k) {
        const MeanStderr m = detail::mean_stderr(f2[k]);
        est.h_hat[k] = m.mean / c.mean;
        const double rel_f2 = (m.mean != 0.0) ? m.stderr_ / m.mean : 0.0;
        const double rel_c = c.stderr_ / c.mean;
        est.h_se[k] = (m.mean != 0.0)
                          ? std::abs(est.h_hat[k]) * std::sqrt(rel_f2 * rel_f2 + rel_c * rel_c)
                          : m.stderr_ / c.mean;
    }
    return est;
}

// Pooled spacing statistics: mean, lag-1 correlation of consecutive spacings
// within a path, and the Kolmogorov-Smirnov distance to a reference density
// given on a grid.
struct GapStats {
    MeanStderr mean;
    double lag1_corr = 0.0;
    double lag1_se = 0.0;
    std::size_t lag1_pairs = 0;
    double ks_distance = 0.0;
    std::size_t n_gaps = 0;
};

inline GapStats gap_statistics(const std::vector<PointSample>& samples,
                               const GridFunction& g_ref) {
    std::vector<double> gaps;
    double sxy = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
    std::size_t np = 0;
    for (const auto& s : samples) {
        for (std::size_t i = 0; i + 1 < s.times.size(); ++i) {
            const double g = s.times[i + 1] - s.times[i];
            gaps.push_back(g);
            if (i + 2 < s.times.size()) {
                const double g2 = s.times[i + 2] - s.times[i + 1];
                sx += g;
                sy += g2;
                sxx += g * g;
                syy += g2 * g2;
                sxy += g * g2;
                ++np;
            }
        }
    }
    if (gaps.size() < 2) throw InsufficientData("gap_statistics: need >= 2 gaps");

    GapStats out;
    out.n_gaps = gaps.size();
    out.mean = detail::mean_stderr(gaps);

    if (np >= 2) {
        const double n = static_cast<double>(np);
        const double cov = sxy / n - (sx / n) * (sy / n);
        const double vx = sxx / n - (sx / n) * (sx / n);
        const double vy = syy / n - (sy / n) * (sy / n);
        out.lag1_corr = cov / std::sqrt(vx * vy);
        out.lag1_se = 1.0 / std::sqrt(n);
        out.lag1_pairs = np;
    }

    // reference CDF at the grid nodes; flat beyond the window
    std::vector<double> cdf = cumulative_trapezoid(g_ref);
    for (double& v : cdf) v = std::min(v, 1.0);
    std::sort(gaps.begin(), gaps.end());
    const double n = static_cast<double>(gaps.size());
    double d = 0.0;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        const double x = gaps[i];
        double f;
        if (x >= g_ref.x_back()) {
            f = cdf.back();
        } else {
            const double s = (x - g_ref.x0) / g_ref.dx;
            const auto k = static_cast<std::size_t>(std::max(s, 0.0));
            const double w = s - static_cast<double>(k);
            f = cdf[k] * (1.0 - w) + cdf[std::min(k + 1, cdf.size() - 1)] * w;
        }
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
        d = std::max(d, std::abs(static_cast<double>(i) / n - f));
    }
    out.ks_distance = d;
    return out;
}

// One draw of (argmax time, rise to the maximum, fall from the maximum) of a
// Brownian path over [s, t]:
//   (s cos^2 Th + t sin^2 Th, sqrt(2X (t-s)) sin Th, sqrt(2Y (t-s)) cos Th)
// with Th uniform on [0, pi/2] and X, Y unit exponentials, all independent.
struct ArgmaxTriplet {
    double argmax;
    double rise;
    double fall;
};

template <class Urbg>
ArgmaxTriplet sample_argmax_triplet(double s, double t, Urbg& rng) {
    if (!(s < t)) throw InvalidParams("sample_argmax_triplet: need s < t");
    std::uniform_real_distribution<double> unif(0.0, M_PI / 2.0);
    std::exponential_distribution<double> expo(1.0);
    const double th = unif(rng);
    const double x = expo(rng);
    const double y = expo(rng);
    const double ct = std::cos(th), st = std::sin(th);
    return {s * ct * ct + t * st * st, std::sqrt(2.0 * x * (t - s)) * st,
            std::sqrt(2.0 * y * (t - s)) * ct};
}

// Joint density of (argmax time, running maximum, endpoint value) over [0, t]
// evaluated at the (argmax, rise, fall) coordinates: with m = rise and
// e = rise - fall (the endpoint), the density is
//   m (m - e) / (pi r^{3/2} (t-r)^{3/2}) exp(-m^2/(2r)) exp(-(m-e)^2/(2(t-r))),
// which in (rise, fall) variables keeps unit Jacobian.  Zero off the domain.
inline double argmax_triplet_density(double t, double r, double rise, double fall) {
    if (!(t > 0.0)) throw InvalidParams("argmax_triplet_density: t must be positive");
    if (!(r > 0.0) || !(r < t) || !(rise > 0.0) || !(fall > 0.0)) return 0.0;
    const double num = rise * fall;
    const double den = M_PI * std::pow(r, 1.5) * std::pow(t - r, 1.5);
    return num / den * std::exp(-rise * rise / (2.0 * r)) *
           std::exp(-fall * fall / (2.0 * (t - r)));
}

// Probability the triplet lands in the box [r1,r2] x [g1,g2] x [d1,d2]:
// the rise and fall integrate in closed form conditionally on the argmax,
// leaving a one-dimensional integral handled by Simpson in the angle
// variable (r = t sin^2 phi absorbs the arcsine endpoint singularity).
inline double argmax_triplet_box_probability(double t, double r1, double r2, double g1, double g2,
                                             double d1, double d2) {
    // survival factor exp(-v^2 / (2 scale)) with its limits at the domain
    // edges: 1 at v = 0, 0 for positive v over a vanishing scale
    auto expd = [](double v, double scale) {
        if (v <= 0.0) return 1.0;
        if (std::isinf(v)) return 0.0;
        if (scale <= 0.0) return 0.0;
        return std::exp(-v * v / (2.0 * scale));
    };
    const double p1 = std::asin(std::sqrt(std::clamp(r1 / t, 0.0, 1.0)));
    const double p2 = std::asin(std::sqrt(std::clamp(r2 / t, 0.0, 1.0)));
    const int panels = 64;
    const double hstep = (p2 - p1) / (2 * panels);
    auto f = [&](double phi) {
        const double sp = std::sin(phi);
        const double r = t * sp * sp;
        const double tr = t - r;
        return (expd(g1, r) - expd(g2, r)) * (expd(d1, tr) - expd(d2, tr));
    };
    double s = f(p1) + f(p2);
    for (int i = 1; i < 2 * panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(p1 + i * hstep);
    return (2.0 / M_PI) * s * hstep / 3.0;
}

}  // namespace maxproc
