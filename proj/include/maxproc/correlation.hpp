#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "maxproc/errors.hpp"

namespace maxproc {

// Reach thresholds of the point process: a point of the path is kept when it
// dominates the window reaching a to the left and b to the right.
struct ProcessParams {
    double a;
    double b;
};

inline void validate(const ProcessParams& p) {
    if (!(p.b > 0.0) || !(p.a >= p.b))
        throw InvalidParams("ProcessParams: need a >= b > 0");
}

// Mean number of points per unit time.
inline double intensity(const ProcessParams& p) {
    return 1.0 / (M_PI * std::sqrt(p.a * p.b));
}

// Correlation kernel h of the process: the n-point correlation function is
// the intensity times the product of h over consecutive gaps.  Piecewise in
// the gap r, continuous at the three knots b, a, a+b; constant at the
// intensity level beyond a+b, where occurrences decouple.
inline double correlation_kernel(const ProcessParams& p, double r) {
    const double a = p.a, b = p.b;
    if (r <= b) return 0.0;
    if (r <= a) return std::sqrt((r - b) / b) / (M_PI * r);
    if (r <= a + b) return (std::sqrt((r - b) / b) + std::sqrt((r - a) / a)) / (M_PI * r);
    return 1.0 / (M_PI * std::sqrt(a * b));
}

// Limiting kernel when the left reach is unbounded: only the right-reach
// factor survives.  Support is (a, infinity).
inline double one_sided_kernel(double a, double r) {
    if (r <= a) return 0.0;
    return std::sqrt((r - a) / a) / (M_PI * r);
}

// n-point correlation function at sorted times; n = 1 gives the intensity.
inline double correlation_function(const ProcessParams& p, std::span<const double> times) {
    if (times.empty()) throw InvalidParams("correlation_function: need at least one time");
    double f = intensity(p);
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        if (times[k + 1] < times[k])
            throw InvalidParams("correlation_function: times must be sorted");
        f *= correlation_kernel(p, times[k + 1] - times[k]);
    }
    return f;
}

// Where the kernel peaks.  For a <= 4b the kernel never exceeds its plateau:
// nearby points are suppressed relative to far-apart ones.  For a > 4b it has
// a strict global maximum at r = 2b.
struct KernelMaxRegime {
    bool repulsive;
    double argmax;
    double maxval;
};

inline KernelMaxRegime check_h_max_regime(const ProcessParams& p) {
    validate(p);
    const double plateau = intensity(p);
    const int n_scan = 4000;
    double best_v = plateau;
    for (int i = 1; i <= n_scan; ++i) {
        const double r = p.b + p.a * static_cast<double>(i) / n_scan;
        best_v = std::max(best_v, correlation_kernel(p, r));
    }
    // the only interior candidate is the peak of r^{-1} sqrt(r-b) at 2b
    best_v = std::max(best_v, correlation_kernel(p, 2.0 * p.b));
    KernelMaxRegime out{};
    out.repulsive = !(best_v > plateau * (1.0 + 1e-12));
    if (out.repulsive) {
        out.argmax = p.a + p.b;
        out.maxval = plateau;
    } else {
        out.argmax = 2.0 * p.b;
        out.maxval = correlation_kernel(p, out.argmax);
    }
    return out;
}

// Joint Laplace transform E[exp(-(alpha G^2 + beta D^2)/2)] where G and D are
// the rise to and the fall from the maximum of a Brownian path over a fixed
// interval.  Closed form; the (0,0) corner is 1 by continuity.
inline double rise_fall_laplace(double alpha, double beta) {
    if (alpha < 0.0 || beta < 0.0)
        throw InvalidParams("rise_fall_laplace: alpha, beta must be >= 0");
    if (alpha == 0.0 && beta == 0.0) return 1.0;
    return (alpha / std::sqrt(1.0 + alpha) + beta / std::sqrt(1.0 + beta)) /
           (alpha + beta + alpha * beta);
}

}  // namespace maxproc
