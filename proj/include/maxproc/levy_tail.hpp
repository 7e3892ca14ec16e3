#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "maxproc/correlation.hpp"
#include "maxproc/errors.hpp"
#include "maxproc/grid_function.hpp"

namespace maxproc {

// G_a(r): mass the jump measure of the regeneration-set subordinator puts on
// gap heights exceeding r.  Equal to sqrt(2/(pi r)) up to r = a; beyond that
// three independent numerical routes are provided.
enum class LevyMethod { series, volterra_abel, recursion_hb };

inline const char* to_string(LevyMethod m) {
    switch (m) {
        case LevyMethod::series: return "series";
        case LevyMethod::volterra_abel: return "volterra";
        case LevyMethod::recursion_hb: return "recursion";
    }
    return "?";
}

struct LevyTail {
    double a = 0.0;
    GridFunction grid;
    LevyMethod method = LevyMethod::series;

    double value_at(double r) const { return grid.value_at(r); }
};

// sqrt(2/pi): coefficient of the r^{-1/2} profile that all tails share.
inline double levy_singular_coeff() { return std::sqrt(2.0 / M_PI); }

// Exact tail on (0, a]: the regeneration set looks like the record set of the
// running maximum until the first gap longer than a, so the small-gap rates
// do not depend on a.
inline double levy_tail_closed(double a, double r) {
    if (!(a > 0.0)) throw InvalidParams("levy_tail_closed: a must be positive");
    if (!(r > 0.0) || r > a) throw DomainError("levy_tail_closed: need 0 < r <= a");
    return std::sqrt(2.0 / (M_PI * r));
}

namespace detail {

// Hat-function moments of the Abel kernel K(y) = min(y, a)^{-1/2} over the
// grid cells: the kernel is integrated exactly against the linear
// interpolant of the unknown.
struct AbelKernelWeights {
    std::vector<double> left, right;

    AbelKernelWeights(std::size_t n_cells, double dx, double a) : left(n_cells), right(n_cells) {
        for (std::size_t j = 0; j < n_cells; ++j) {
            const double xl = static_cast<double>(j) * dx;
            const double xr = xl + dx;
            const auto [m0, m1] = moments(xl, xr, a);
            left[j] = (xr * m0 - m1) / dx;
            right[j] = (m1 - xl * m0) / dx;
        }
    }

  private:
    static std::pair<double, double> moments(double lo, double hi, double a) {
        if (hi <= a) {
            return {2.0 * (std::sqrt(hi) - std::sqrt(lo)),
                    (2.0 / 3.0) * (hi * std::sqrt(hi) - lo * std::sqrt(lo))};
        }
        if (lo >= a) {
            const double k = 1.0 / std::sqrt(a);
            return {k * (hi - lo), 0.5 * k * (hi * hi - lo * lo)};
        }
        const auto [m0a, m1a] = moments(lo, a, a);
        const auto [m0b, m1b] = moments(a, hi, a);
        return {m0a + m0b, m1a + m1b};
    }
};

// int_0^x min(y,a)^{-1/2} (x-y)^{-1/2} dy, the Abel kernel applied to the
// pure r^{-1/2} profile; closed form via arcsin.
inline double abel_kernel_on_singular(double x, double a) {
    const double m = std::min(x, a);
    double v = 2.0 * std::asin(std::sqrt(m / x));
    if (x > a) v += 2.0 * std::sqrt(x - a) / std::sqrt(a);
    return v;
}

inline std::size_t grid_points(double dx, double r_max) {
    return static_cast<std::size_t>(std::llround(r_max / dx)) + 1;
}

}  // namespace detail

// Tail by the alternating series u - u*k + u*k*k - ... where u is the
// r^{-1/2} profile and k the one-sided kernel.  The n-th term is supported on
// [n a, infinity), so the truncation is exact on the window.
inline LevyTail levy_tail_series(double a, double dx, double r_max) {
    if (!(a > 0.0)) throw InvalidParams("levy_tail_series: a must be positive");
    if (!(dx > 0.0) || dx > a / 100.0) throw ResolutionTooCoarse("levy_tail_series: need dx <= a/100");

    const std::size_t n = detail::grid_points(dx, r_max);
    GridFunction kern = make_grid(dx, n);
    for (std::size_t i = 0; i < n; ++i) kern.values[i] = one_sided_kernel(a, kern.x(i));

    GridFunction u = make_grid(dx, n);
    u.singular_coeff = levy_singular_coeff();

    LevyTail out{a, make_grid(dx, n), LevyMethod::series};
    out.grid.singular_coeff = u.singular_coeff;

    const int n_terms = static_cast<int>(std::ceil(r_max / a)) + 1;
    GridFunction term = conv_grid(u, kern);
    double sign = -1.0;
    for (int m = 1; m <= n_terms; ++m) {
        if (m > 1) term = conv_grid(term, kern);
        for (std::size_t i = 0; i < n; ++i) out.grid.values[i] += sign * term.values[i];
        sign = -sign;
    }
    return out;
}

// Tail from the first-kind Abel-kernel equation
//   int_0^x min(y,a)^{-1/2} G(x-y) dy = sqrt(2 pi)   for all x > 0,
// marched forward in x.  Writing G = u + R with u the exact r^{-1/2} part,
// the u contribution is closed form and the newest value of R is solved from
// the exactly integrated kernel moment of the leading cell.  abel_residual
// below re-evaluates the equation for any solved tail.
inline LevyTail levy_tail_volterra_abel(double a, double dx, double r_max) {
    if (!(a > 0.0)) throw InvalidParams("levy_tail_volterra_abel: a must be positive");
    if (!(dx > 0.0) || dx > a / 100.0)
        throw ResolutionTooCoarse("levy_tail_volterra_abel: need dx <= a/100");

    const std::size_t n = detail::grid_points(dx, r_max);
    const double c = levy_singular_coeff();
    const double target = std::sqrt(2.0 * M_PI);
    const detail::AbelKernelWeights w(n - 1, dx, a);
    if (!(w.left[0] > 1e-300)) throw SingularStep("levy_tail_volterra_abel: leading cell moment underflowed");

    std::vector<double> r_part(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) {
        const double xk = static_cast<double>(k) * dx;
        if (xk <= a) continue;  // exact initial segment: R = 0
        double hist = w.right[0] * r_part[k - 1];
        for (std::size_t j = 1; j < k; ++j)
            hist += w.left[j] * r_part[k - j] + w.right[j] * r_part[k - j - 1];
        r_part[k] = (target - c * detail::abel_kernel_on_singular(xk, a) - hist) / w.left[0];
    }

    LevyTail out{a, make_grid(dx, n), LevyMethod::volterra_abel};
    out.grid.singular_coeff = c;
    out.grid.values = std::move(r_part);
    return out;
}

// Tail from the renewal convolution identity
//   int_0^x h(y) G(x-y) dy = G(b) - G(max(x, b)),
// which is explicit in G(x) for x > b because h vanishes on [0, b].  The
// step is snapped so that b falls on a grid node.  h_override substitutes a
// different kernel (used by the negative-control checks).
inline LevyTail levy_tail_recursion(const ProcessParams& p, double dx, double r_max,
                                    std::function<double(double)> h_override = {}) {
    validate(p);
    if (!(dx > 0.0) || dx > p.b / 50.0) throw ResolutionTooCoarse("levy_tail_recursion: need dx <= b/50");

    const auto mb = static_cast<std::size_t>(std::llround(p.b / dx));
    dx = p.b / static_cast<double>(mb);
    const std::size_t n = detail::grid_points(dx, r_max);
    const double c = levy_singular_coeff();

    auto kern = [&](double r) { return h_override ? h_override(r) : correlation_kernel(p, r); };
    std::vector<double> h(n);
    for (std::size_t k = 0; k < n; ++k) h[k] = kern(static_cast<double>(k) * dx);

    const detail::SingularHatWeights w(n - 1, dx);
    const double g_at_b = c / std::sqrt(p.b);

    std::vector<double> r_part(n, 0.0);
    for (std::size_t k = mb + 1; k < n; ++k) {
        const double xk = static_cast<double>(k) * dx;
        const std::size_t m = k - mb;
        // int_0^{x_k - b} z^{-1/2} h(x_k - z) dz, kernel values exact at nodes
        double s1 = 0.0;
        for (std::size_t j = 0; j < m; ++j) s1 += w.left[j] * h[k - j] + w.right[j] * h[k - j - 1];
        // int_0^{x_k - b} h(x_k - z) R(z) dz by trapezoid; h(b) = 0 at the end node
        double s2 = 0.0;
        for (std::size_t i = 1; i < m; ++i) s2 += h[k - i] * r_part[i];
        s2 += 0.5 * h[k] * r_part[0] + 0.5 * h[k - m] * r_part[m];
        s2 *= dx;
        r_part[k] = g_at_b - c / std::sqrt(xk) - c * s1 - s2;
    }

    LevyTail out{p.a, make_grid(dx, n), LevyMethod::recursion_hb};
    out.grid.singular_coeff = c;
    out.grid.values = std::move(r_part);
    return out;
}

// Residual of the defining Abel-kernel equation at every grid node past the
// first: how far int_0^x min(y,a)^{-1/2} G(x-y) dy sits from sqrt(2 pi).
// Meaningful for a tail produced by any of the three methods.
inline std::vector<double> abel_residual(const LevyTail& tail) {
    const GridFunction& g = tail.grid;
    const std::size_t n = g.size();
    std::vector<double> res(n, 0.0);
    if (n < 2) return res;
    const detail::AbelKernelWeights w(n - 1, g.dx, tail.a);
    const double target = std::sqrt(2.0 * M_PI);
    for (std::size_t k = 1; k < n; ++k) {
        const double xk = static_cast<double>(k) * g.dx;
        double v = g.singular_coeff * detail::abel_kernel_on_singular(xk, tail.a);
        for (std::size_t j = 0; j < k; ++j)
            v += w.left[j] * g.values[k - j] + w.right[j] * g.values[k - j - 1];
        res[k] = v - target;
    }
    return res;
}

}  // namespace maxproc
