#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "maxproc/errors.hpp"

namespace maxproc {

// Uniformly sampled function on [x0, x0 + n*dx], optionally carrying an
// explicit C * r^{-1/2} component on top of the sampled values.  The square
// root singularity at 0 shows up in the jump-measure tail and in the factor
// u(r) = sqrt(2/(pi r)); it is carried symbolically and every quadrature
// below integrates it in closed form per cell.  When singular_coeff != 0 the
// grid must start at 0 and values[0] holds the regular remainder at 0 (by
// continuity), never an infinity.
struct GridFunction {
    double x0 = 0.0;
    double dx = 0.0;
    std::vector<double> values;
    double singular_coeff = 0.0;

    std::size_t size() const { return values.size(); }
    double x(std::size_t k) const { return x0 + static_cast<double>(k) * dx; }
    double x_back() const { return values.empty() ? x0 : x(values.size() - 1); }

    // Piecewise-linear value of the regular part; 0 outside the grid.
    double regular_at(double r) const {
        if (values.empty()) return 0.0;
        const double s = (r - x0) / dx;
        if (s < 0.0 || s > static_cast<double>(values.size() - 1)) return 0.0;
        const auto k = static_cast<std::size_t>(s);
        if (k + 1 >= values.size()) return values.back();
        const double w = s - static_cast<double>(k);
        return values[k] * (1.0 - w) + values[k + 1] * w;
    }

    // Full value including the singular component.  At r <= 0 the singular
    // part is defined as 0 (its support is the open positive axis).
    double value_at(double r) const {
        double v = regular_at(r);
        if (singular_coeff != 0.0 && r > 0.0) v += singular_coeff / std::sqrt(r);
        return v;
    }
};

inline void validate(const GridFunction& g) {
    if (!(g.dx > 0.0)) throw InvalidParams("GridFunction: dx must be positive");
    if (g.singular_coeff != 0.0 && g.x0 != 0.0)
        throw InvalidParams("GridFunction: singular part requires x0 == 0");
    for (double v : g.values)
        if (!std::isfinite(v)) throw InvalidParams("GridFunction: values must be finite");
}

inline GridFunction make_grid(double dx, std::size_t n_points, double x0 = 0.0) {
    GridFunction g;
    g.x0 = x0;
    g.dx = dx;
    g.values.assign(n_points, 0.0);
    return g;
}

namespace detail {

// Hat-function moments of the y^{-1/2} kernel over cell j = [j*dx, (j+1)*dx]:
//   P[j] = int y^{-1/2} (x_{j+1}-y)/dx dy   (weight of the left node),
//   Q[j] = int y^{-1/2} (y-x_j)/dx dy       (weight of the right node).
// Closed forms of int y^{-1/2} dy and int y^{1/2} dy per cell.
struct SingularHatWeights {
    std::vector<double> left, right;

    explicit SingularHatWeights(std::size_t n_cells, double dx) : left(n_cells), right(n_cells) {
        for (std::size_t j = 0; j < n_cells; ++j) {
            const double xl = static_cast<double>(j) * dx;
            const double xr = xl + dx;
            const double m0 = 2.0 * (std::sqrt(xr) - std::sqrt(xl));
            const double m1 = (2.0 / 3.0) * (xr * std::sqrt(xr) - xl * std::sqrt(xl));
            left[j] = (xr * m0 - m1) / dx;
            right[j] = (m1 - xl * m0) / dx;
        }
    }
};

inline std::size_t first_nonzero(const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0.0) return i;
    return v.size();
}

// S_k = int_0^{x_k} y^{-1/2} g(x_k - y) dy with g piecewise linear on the
// grid (product integration: the singular factor is integrated exactly
// against the interpolant of g on each cell).
inline std::vector<double> convolve_singular_kernel(const std::vector<double>& g, double dx) {
    const std::size_t n = g.size();
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    const SingularHatWeights w(n - 1, dx);
    const std::size_t sg = first_nonzero(g);
    for (std::size_t k = 1; k < n; ++k) {
        double s = 0.0;
        // g(x_k - x_j) vanishes for k - j < sg
        const std::size_t jmax = (k >= sg) ? (k - sg) : 0;
        for (std::size_t j = 0; j <= jmax && j < k; ++j) {
            const double gl = g[k - j];
            const double gr = (j + 1 <= k) ? g[k - j - 1] : 0.0;
            s += w.left[j] * gl + w.right[j] * gr;
        }
        out[k] = s;
    }
    return out;
}

// Trapezoid convolution of two node-sampled functions sharing dx.
inline std::vector<double> convolve_trapezoid(const std::vector<double>& f,
                                              const std::vector<double>& g, double dx) {
    const std::size_t n = std::max(f.size(), g.size());
    std::vector<double> out(n, 0.0);
    if (f.empty() || g.empty()) return out;
    const std::size_t sf = first_nonzero(f);
    const std::size_t sg = first_nonzero(g);
    for (std::size_t k = 0; k < n; ++k) {
        if (k < sf + sg) continue;  // supports add under convolution
        double s = 0.0;
        const std::size_t jlo = (k + 1 > g.size()) ? (k + 1 - g.size()) : 0;
        const std::size_t jhi = std::min(k, f.size() - 1);
        for (std::size_t j = std::max(jlo, sf); j <= jhi; ++j) s += f[j] * g[k - j];
        if (k < f.size()) s -= 0.5 * f[k] * g[0];
        if (k < g.size()) s -= 0.5 * f[0] * g[k];
        out[k] = s * dx;
    }
    return out;
}

}  // namespace detail

// Convolution (f*g)(x) = int f(y) g(x-y) dy on the shared grid.  At most one
// operand may carry a singular part; the result is always regular (the
// singular factor is smoothed by the integration).  The output is truncated
// to the longer of the two input windows.
inline GridFunction conv_grid(const GridFunction& f, const GridFunction& g) {
    if (f.dx != g.dx) throw GridMismatch("conv_grid: operands must share dx");
    if (f.x0 != 0.0 || g.x0 != 0.0) throw GridMismatch("conv_grid: operands must start at 0");
    if (f.singular_coeff != 0.0 && g.singular_coeff != 0.0)
        throw DoubleSingularity("conv_grid: at most one operand may be singular");

    const GridFunction& sing = (g.singular_coeff != 0.0) ? g : f;
    const GridFunction& reg = (g.singular_coeff != 0.0) ? f : g;

    GridFunction out = make_grid(f.dx, std::max(f.size(), g.size()));
    out.values = detail::convolve_trapezoid(sing.values, reg.values, f.dx);
    if (sing.singular_coeff != 0.0) {
        auto s = detail::convolve_singular_kernel(reg.values, f.dx);
        for (std::size_t k = 0; k < out.values.size() && k < s.size(); ++k)
            out.values[k] += sing.singular_coeff * s[k];
    }
    return out;
}

// Integral over the grid window, singular part handled in closed form.
inline double grid_integral(const GridFunction& f) {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < f.size(); ++k) s += 0.5 * (f.values[k] + f.values[k + 1]);
    s *= f.dx;
    if (f.singular_coeff != 0.0) s += 2.0 * f.singular_coeff * (std::sqrt(f.x_back()) - std::sqrt(f.x0));
    return s;
}

// Cumulative integral of the regular part at the grid nodes.
inline std::vector<double> cumulative_trapezoid(const GridFunction& f) {
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t k = 1; k < f.size(); ++k)
        out[k] = out[k - 1] + 0.5 * (f.values[k - 1] + f.values[k]) * f.dx;
    return out;
}

// int_{x0}^{t} f, with the partial last cell interpolated linearly; t is
// clamped to the grid window.
inline double integral_to(const GridFunction& f, double t) {
    if (f.size() < 2) return 0.0;
    double s = 0.0;
    if (f.singular_coeff != 0.0) {
        const double hi = std::clamp(t, 0.0, f.x_back());
        s += 2.0 * f.singular_coeff * std::sqrt(hi);
    }
    const double end = std::min(t, f.x_back());
    if (end <= f.x0) return s;
    const std::size_t kmax = static_cast<std::size_t>((end - f.x0) / f.dx);
    for (std::size_t k = 0; k + 1 <= kmax; ++k) s += 0.5 * (f.values[k] + f.values[k + 1]) * f.dx;
    const double rem = end - f.x(kmax);
    if (rem > 0.0 && kmax + 1 < f.size()) {
        const double fl = f.values[kmax];
        const double fr = f.regular_at(end);
        s += 0.5 * (fl + fr) * rem;
    }
    return s;
}

}  // namespace maxproc
