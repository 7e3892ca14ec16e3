#pragma once

#include <cmath>
#include <cstddef>

#include "maxproc/correlation.hpp"
#include "maxproc/errors.hpp"
#include "maxproc/grid_function.hpp"

namespace maxproc {

// Density of the spacing between consecutive points, as the alternating
// convolution series g = h - h*h + h*h*h - ...  The n-fold convolution is
// supported on [n b, infinity), so the truncation at N = ceil(r_max/b)+1
// terms is exact on the window.
inline GridFunction gap_density(const ProcessParams& p, double dx, double r_max) {
    validate(p);
    if (!(dx > 0.0) || !(r_max > 0.0)) throw InvalidParams("gap_density: dx, r_max must be positive");
    if (dx > p.b / 50.0) throw ResolutionTooCoarse("gap_density: need dx <= b/50");

    const auto n = static_cast<std::size_t>(std::llround(r_max / dx)) + 1;
    GridFunction h = make_grid(dx, n);
    for (std::size_t k = 0; k < n; ++k) h.values[k] = correlation_kernel(p, h.x(k));

    const int n_terms = static_cast<int>(std::ceil(r_max / p.b)) + 1;
    GridFunction g = make_grid(dx, n);
    GridFunction term = h;
    double sign = 1.0;
    for (int m = 1; m <= n_terms; ++m) {
        if (m > 1) term = conv_grid(term, h);
        for (std::size_t k = 0; k < n; ++k) g.values[k] += sign * term.values[k];
        sign = -sign;
    }
    return g;
}

// Density of the first point after 0 for the stationary process:
// f(t) = c (1 - int_0^t g), constant at the intensity c on [0, b].
inline double first_point_density(const ProcessParams& p, const GridFunction& g, double t) {
    validate(p);
    if (t < 0.0) return 0.0;
    const double mass = std::min(integral_to(g, t), 1.0);
    return intensity(p) * (1.0 - mass);
}

// Joint density of the two points straddling 0 (the last one before and the
// first one after): intensity times the gap density of their spacing.
inline double straddling_pair_density(const ProcessParams& p, const GridFunction& g,
                                      double t0, double t1) {
    validate(p);
    if (!(t0 < 0.0) || !(t1 > 0.0))
        throw DomainError("straddling_pair_density: need t0 < 0 < t1");
    return intensity(p) * g.value_at(t1 - t0);
}

}  // namespace maxproc
