#pragma once

#include <cmath>
#include <cstddef>
#include <optional>

#include "maxproc/errors.hpp"
#include "maxproc/grid_function.hpp"
#include "maxproc/kummer.hpp"
#include "maxproc/levy_tail.hpp"

namespace maxproc {

// What to assume about a grid function beyond its window when integrating to
// infinity: nothing, or an exponential profile A exp(-rate r).  Without an
// explicit amplitude the profile is fitted to the last grid value.
struct TailCompletion {
    enum class Kind { truncate, exponential };
    Kind kind = Kind::truncate;
    double rate = 0.0;
    std::optional<double> amplitude;

    static TailCompletion truncate() { return {}; }
    static TailCompletion exponential(double rate, std::optional<double> amplitude = std::nullopt) {
        TailCompletion t;
        t.kind = Kind::exponential;
        t.rate = rate;
        t.amplitude = amplitude;
        return t;
    }
};

namespace detail {

// f(x_end) under the tail model, i.e. A exp(-rate x_end).
inline double tail_start_value(const GridFunction& f, const TailCompletion& t) {
    if (t.amplitude) return *t.amplitude * std::exp(-t.rate * f.x_back());
    return f.value_at(f.x_back());
}

// int_l^r y^{-1/2} (linear through (l,el),(r,er)) dy, exact kernel moments.
inline double singular_linear_cell(double l, double r, double el, double er) {
    const double m0 = 2.0 * (std::sqrt(r) - std::sqrt(l));
    const double m1 = (2.0 / 3.0) * (r * std::sqrt(r) - l * std::sqrt(l));
    const double w = r - l;
    return el * (r * m0 - m1) / w + er * (m1 - l * m0) / w;
}

}  // namespace detail

// int_0^inf exp(-theta r) f(r) dr.  The regular part goes by trapezoid; the
// r^{-1/2} part by product integration with each grid cell subdivided so the
// exponential factor is well resolved by its linear interpolant.  The tail
// beyond the window follows the completion model.
inline double laplace_numeric(const GridFunction& f, double theta, const TailCompletion& tail) {
    if (!(theta > 0.0)) throw InvalidParams("laplace_numeric: theta must be positive");
    if (f.size() < 2) return 0.0;

    double s = 0.0;
    for (std::size_t k = 0; k + 1 < f.size(); ++k) {
        const double e0 = std::exp(-theta * f.x(k));
        const double e1 = std::exp(-theta * f.x(k + 1));
        s += 0.5 * (f.values[k] * e0 + f.values[k + 1] * e1) * f.dx;
    }

    if (f.singular_coeff != 0.0) {
        constexpr int subdiv = 4;
        double ssing = 0.0;
        for (std::size_t k = 0; k + 1 < f.size(); ++k) {
            for (int i = 0; i < subdiv; ++i) {
                const double l = f.x(k) + f.dx * i / subdiv;
                const double r = l + f.dx / subdiv;
                ssing += detail::singular_linear_cell(l, r, std::exp(-theta * l), std::exp(-theta * r));
            }
        }
        s += f.singular_coeff * ssing;
    }

    if (tail.kind == TailCompletion::Kind::exponential) {
        const double fe = detail::tail_start_value(f, tail);
        s += fe * std::exp(-theta * f.x_back()) / (theta + tail.rate);
    }
    return s;
}

// int f over [x0, infinity) under the tail model.
inline double integral_with_tail(const GridFunction& f, const TailCompletion& tail) {
    double s = grid_integral(f);
    if (tail.kind == TailCompletion::Kind::exponential && tail.rate > 0.0)
        s += detail::tail_start_value(f, tail) / tail.rate;
    return s;
}

// int r f(r) dr over [x0, infinity) under the tail model.
inline double first_moment_with_tail(const GridFunction& f, const TailCompletion& tail) {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < f.size(); ++k)
        s += 0.5 * (f.values[k] * f.x(k) + f.values[k + 1] * f.x(k + 1)) * f.dx;
    if (f.singular_coeff != 0.0)
        s += f.singular_coeff * (2.0 / 3.0) *
             (f.x_back() * std::sqrt(f.x_back()) - f.x0 * std::sqrt(f.x0));
    if (tail.kind == TailCompletion::Kind::exponential && tail.rate > 0.0) {
        const double e = f.x_back();
        s += detail::tail_start_value(f, tail) * (e + 1.0 / tail.rate) / tail.rate;
    }
    return s;
}

namespace detail {

// (2 pi)^{-1/2} (2 b^{-1/2} + int_0^b (1 - e^{-theta x}) x^{-3/2} dx), the
// denominator of the gap Laplace transform.  On (0, b] the jump measure has
// the explicit density (2 pi)^{-1/2} x^{-3/2}, so the integral reduces to an
// erf expression.
inline double gap_laplace_denominator(double b, double theta) {
    const double v = 2.0 / std::sqrt(b) * std::exp(-theta * b) +
                     2.0 * std::sqrt(M_PI * theta) * std::erf(std::sqrt(theta * b));
    return v / std::sqrt(2.0 * M_PI);
}

}  // namespace detail

// Laplace transform of the spacing between consecutive points, expressed
// through the jump measure of the regeneration set:
//   E[e^{-theta gap}] = 1 - theta L G_a(theta) / D(theta),
// with the closed-form transform of G_a in the numerator.
inline double gap_laplace_via_levy(double a, double b, double theta) {
    if (!(a > 0.0) || !(b > 0.0)) throw InvalidParams("gap_laplace_via_levy: a, b must be positive");
    if (b > a) throw DomainError("gap_laplace_via_levy: need b <= a");
    if (!(theta > 0.0)) throw InvalidParams("gap_laplace_via_levy: theta must be positive");
    return 1.0 - theta * levy_tail_laplace(a, theta) / detail::gap_laplace_denominator(b, theta);
}

// Same transform but with L G_a evaluated numerically from a solved tail
// grid (exponential completion at the tail's own decay rate), so the closed
// form above can be cross-checked against any of the three solvers.
inline double gap_laplace_via_levy(double a, double b, double theta, const LevyTail& tail) {
    if (!(a > 0.0) || !(b > 0.0)) throw InvalidParams("gap_laplace_via_levy: a, b must be positive");
    if (b > a) throw DomainError("gap_laplace_via_levy: need b <= a");
    if (!(theta > 0.0)) throw InvalidParams("gap_laplace_via_levy: theta must be positive");
    static const TailConstants tc = tail_constants();
    const double lg = laplace_numeric(tail.grid, theta, TailCompletion::exponential(tc.rate_for_a(a)));
    return 1.0 - theta * lg / detail::gap_laplace_denominator(b, theta);
}

}  // namespace maxproc
