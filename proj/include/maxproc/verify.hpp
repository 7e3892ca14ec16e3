#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "maxproc/brownian.hpp"
#include "maxproc/correlation.hpp"
#include "maxproc/detect.hpp"
#include "maxproc/estimators.hpp"
#include "maxproc/gap_density.hpp"
#include "maxproc/grid_function.hpp"
#include "maxproc/kummer.hpp"
#include "maxproc/laplace.hpp"
#include "maxproc/levy_tail.hpp"
#include "maxproc/report.hpp"

namespace maxproc {
namespace verify {

// Pinned verification parameters.  Every tolerance lives here, next to the
// check that uses it, not in a config file.
struct Pinned {
    // deterministic analytics
    static constexpr double dx = 1.0 / 400.0;
    static constexpr double r_max = 8.0;
    static constexpr double closed_form_tol = 1e-3;
    static constexpr double cross_method_tol = 2e-3;
    static constexpr double residual_tol_factor = 1e-3;  // times sqrt(2 pi)
    static constexpr double laplace_rel_tol = 5e-3;
    static constexpr double rho_ref = 0.85403;
    static constexpr double rho_tol = 1e-4;
    static constexpr double slope_tol = 0.09;
    static constexpr double mean_rel_tol = 1e-2;
    // Monte Carlo
    static constexpr double mc_dt = 1.0 / 512.0;
    static constexpr double mc_horizon = 200.0;
    static constexpr int mc_paths = 200;
    static constexpr double mc_sys_allowance = 0.02;  // discrete-window detection bias
    static constexpr int mr_paths = 40;
    static constexpr int triplet_draws = 200000;
    static constexpr double chi2_p_min = 0.01;
};

namespace detail {

class Stopwatch {
  public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

  private:
    std::chrono::steady_clock::time_point t0_;
};

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

inline void add_check(VerificationReport& rep, std::string id, std::string name, double measured,
                      double target, double tolerance, bool pass, std::string detail = "") {
    rep.checks.push_back(
        {std::move(id), std::move(name), measured, target, tolerance, pass, std::move(detail)});
}

// least-squares slope of y against x
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (sxy - sx * sy / n) / (sxx - sx * sx / n);
}

struct Tails {
    LevyTail series, abel, recursion;
};

inline Tails solve_all_tails(double a, double dx, double r_max,
                             std::function<double(double)> h_override = {}) {
    Tails t{levy_tail_series(a, dx, r_max), levy_tail_volterra_abel(a, dx, r_max),
            levy_tail_recursion(ProcessParams{a, a}, dx, r_max, std::move(h_override))};
    return t;
}

inline double max_abs_diff_on(const LevyTail& f, const LevyTail& g, double lo, double hi) {
    double d = 0.0;
    const GridFunction& grid = f.grid;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const double r = grid.x(k);
        if (r < lo || r > hi) continue;
        d = std::max(d, std::abs(f.value_at(r) - g.value_at(r)));
    }
    return d;
}

inline double closed_form_error(const LevyTail& t, double a) {
    double err = 0.0;
    for (std::size_t k = 1; k < t.grid.size(); ++k) {
        const double r = t.grid.x(k);
        if (r < 0.05 * a || r > 2.0 * a) continue;
        const double ref = (r <= a) ? std::sqrt(2.0 / (M_PI * r))
                                    : 2.0 * std::sqrt(2.0 / (M_PI * r)) - std::sqrt(2.0 / (M_PI * a));
        err = std::max(err, std::abs(t.value_at(r) - ref));
    }
    return err;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace detail

// --- criterion 1: closed-form anchors -------------------------------------

inline void check_closed_form_anchor(VerificationReport& rep, const detail::Tails& t,
                                     double solve_seconds) {
    const double e1 = detail::closed_form_error(t.series, 1.0);
    const double e2 = detail::closed_form_error(t.abel, 1.0);
    const double e3 = detail::closed_form_error(t.recursion, 1.0);
    detail::add_check(rep, "1a", "closed form on [0.05,2], series", e1, 0.0, Pinned::closed_form_tol,
                      e1 <= Pinned::closed_form_tol);
    detail::add_check(rep, "1b", "closed form on [0.05,2], volterra", e2, 0.0,
                      Pinned::closed_form_tol, e2 <= Pinned::closed_form_tol);
    detail::add_check(rep, "1c", "closed form on [0.05,2], recursion", e3, 0.0,
                      Pinned::closed_form_tol,
                      e3 <= Pinned::closed_form_tol && solve_seconds < 5.0,
                      "includes the 5 s budget on the three-method solve");
}

// --- criterion 2: cross-method agreement and defining residual ------------

inline void check_cross_method(VerificationReport& rep, const detail::Tails& t,
                               double solve_seconds) {
    detail::Stopwatch sw;
    const double d12 = detail::max_abs_diff_on(t.series, t.abel, 0.0, 5.0);
    const double d13 = detail::max_abs_diff_on(t.series, t.recursion, 0.0, 5.0);
    const double d23 = detail::max_abs_diff_on(t.abel, t.recursion, 0.0, 5.0);
    const double dmax = std::max({d12, d13, d23});
    const double res_tol = Pinned::residual_tol_factor * std::sqrt(2.0 * M_PI);
    const double r1 = detail::max_abs(abel_residual(t.series));
    const double r2 = detail::max_abs(abel_residual(t.abel));
    const double r3 = detail::max_abs(abel_residual(t.recursion));
    const double rmax = std::max({r1, r2, r3});
    const double runtime = solve_seconds + sw.seconds();
    detail::add_check(rep, "2a", "pairwise G_1 discrepancy on [0,5]", dmax, 0.0,
                      Pinned::cross_method_tol, dmax <= Pinned::cross_method_tol,
                      "series/volterra " + detail::fmt(d12) + ", series/recursion " +
                          detail::fmt(d13) + ", volterra/recursion " + detail::fmt(d23));
    detail::add_check(rep, "2b", "Abel-kernel equation residual", rmax, 0.0, res_tol,
                      rmax <= res_tol && runtime < 10.0,
                      "per method " + detail::fmt(r1) + " / " + detail::fmt(r2) + " / " +
                          detail::fmt(r3) + "; includes the 10 s solve+check budget");
    rep.timings.emplace_back("analytic solve+residual", runtime);
}

// --- criterion 3: Kummer-form Laplace transform ----------------------------

inline void check_kummer_transform(VerificationReport& rep, const detail::Tails& t) {
    static const TailConstants tc = tail_constants();
    double worst = 0.0;
    std::string per;
    for (double theta : {0.5, 1.0, 2.0, 5.0}) {
        const double num =
            laplace_numeric(t.series.grid, theta, TailCompletion::exponential(tc.rate_for_a(1.0)));
        const double ref = levy_tail_laplace(1.0, theta);
        const double rel = std::abs(num - ref) / ref;
        worst = std::max(worst, rel);
        per += "theta=" + detail::fmt(theta) + ": " + detail::fmt(rel) + "  ";
    }
    detail::add_check(rep, "3", "numeric Laplace of G_1 vs Kummer closed form (rel)", worst, 0.0,
                      Pinned::laplace_rel_tol, worst <= Pinned::laplace_rel_tol, per);
}

// --- criterion 4: decay root and log-slope ---------------------------------

inline void check_root_and_slope(VerificationReport& rep, const detail::Tails& t) {
    const double rho = find_rho(1e-10);
    detail::add_check(rep, "4a", "root of M(-1/2;1/2;x)", rho, Pinned::rho_ref, Pinned::rho_tol,
                      std::abs(rho - Pinned::rho_ref) <= Pinned::rho_tol);

    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < t.series.grid.size(); ++k) {
        const double r = t.series.grid.x(k);
        if (r < 3.0 || r > 5.0) continue;
        xs.push_back(r);
        ys.push_back(std::log(t.series.value_at(r)));
    }
    const double slope = detail::ls_slope(xs, ys);
    detail::add_check(rep, "4b", "slope of ln G_1 on [3,5]", slope, -rho, Pinned::slope_tol,
                      std::abs(slope + rho) <= Pinned::slope_tol);
}

// --- criterion 5: renewal mean ---------------------------------------------

inline void check_renewal_mean(VerificationReport& rep) {
    static const TailConstants tc = tail_constants();
    const GridFunction g = gap_density(ProcessParams{1.0, 1.0}, Pinned::dx, 12.0);
    const double mean = first_moment_with_tail(g, TailCompletion::exponential(tc.rate_for_a(1.0)));
    detail::add_check(rep, "5a", "mean spacing from gap density, a=b=1", mean, M_PI,
                      Pinned::mean_rel_tol * M_PI, std::abs(mean - M_PI) <= Pinned::mean_rel_tol * M_PI,
                      "int g = " +
                          detail::fmt(integral_with_tail(
                              g, TailCompletion::exponential(tc.rate_for_a(1.0)))));

    const double eps = 1e-4;
    int idx = 0;
    for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{4.0, 1.0}}) {
        const double target = M_PI * std::sqrt(a * b);
        const double fd = (1.0 - gap_laplace_via_levy(a, b, eps)) / eps;
        detail::add_check(rep, idx == 0 ? "5b" : "5c",
                          "gap Laplace derivative at 0, a=" + detail::fmt(a) + " b=" + detail::fmt(b),
                          fd, target, Pinned::mean_rel_tol * target,
                          std::abs(fd - target) <= Pinned::mean_rel_tol * target);
        ++idx;
    }
}

// --- criterion 6: Monte Carlo intensity ------------------------------------

inline void check_mc_intensity(VerificationReport& rep, const std::vector<PointSample>& samples,
                               std::uint64_t seed, double runtime_s) {
    const ProcessParams p{1.0, 1.0};
    const double target = intensity(p);
    const MeanStderr est = estimate_intensity(samples);
    const double band = 3.0 * est.stderr_ + Pinned::mc_sys_allowance * target;
    detail::add_check(rep, "6a", "intensity, a=b=1, dt=1/512", est.mean, target, band,
                      std::abs(est.mean - target) <= band && runtime_s < 600.0,
                      "stderr " + detail::fmt(est.stderr_) + "; includes the 600 s run budget");
    rep.timings.emplace_back("simulation run", runtime_s);

    // trend: halving dt must not grow the discretization bias beyond noise
    PathConfig fine{Pinned::mc_dt / 2.0, Pinned::mc_horizon, seed + 1, Pinned::mc_paths};
    const MeanStderr est2 = estimate_intensity(run_detection(p, fine));
    const double b1 = std::abs(est.mean - target);
    const double b2 = std::abs(est2.mean - target);
    const double noise = 2.0 * std::hypot(est.stderr_, est2.stderr_);
    detail::add_check(rep, "6b", "bias shrinks when dt is halved", b2, 0.0, b1 + noise,
                      b2 <= b1 + noise,
                      "bias(dt) " + detail::fmt(b1) + ", bias(dt/2) " + detail::fmt(b2) +
                          ", noise allowance " + detail::fmt(noise));
}

// --- criterion 7: Monte Carlo pair correlation ------------------------------

inline void check_mc_pair_correlation(VerificationReport& rep, const PairCorrelationEstimate& pc) {
    const ProcessParams p{1.0, 1.0};
    bool all = true;
    double worst_excess = 0.0;
    std::string per;
    for (double r : {1.25, 1.5, 1.75, 3.0}) {
        const auto k = static_cast<std::size_t>(std::llround(r / pc.bin_width)) - 1;
        const double ref = correlation_kernel(p, pc.centers[k]);
        const double band = 3.0 * pc.h_se[k] + Pinned::mc_sys_allowance * ref;
        const double err = std::abs(pc.h_hat[k] - ref);
        all = all && err <= band;
        worst_excess = std::max(worst_excess, err - band);
        per += "r=" + detail::fmt(r) + ": est " + detail::fmt(pc.h_hat[k]) + " vs " +
               detail::fmt(ref) + " (band " + detail::fmt(band) + ")  ";
    }
    detail::add_check(rep, "7a", "pair correlation vs kernel at 4 bins", worst_excess, 0.0, 0.0,
                      all, per);

    long long below = 0;
    for (std::size_t k = 0; k < pc.centers.size(); ++k)
        if (pc.centers[k] + 0.5 * pc.bin_width <= p.b) below += pc.counts[k];
    const bool no_close = below == 0 && pc.min_distance > p.b;
    detail::add_check(rep, "7b", "no detected pairs closer than b", static_cast<double>(below), 0.0,
                      0.0, no_close, "min pair distance " + detail::fmt(pc.min_distance));
}

// --- criterion 8: spacing law ------------------------------------------------

inline void check_mc_gap_law(VerificationReport& rep, const GapStats& gs) {
    const double crit = 1.628 / std::sqrt(static_cast<double>(gs.n_gaps));  // 1% asymptotic
    detail::add_check(rep, "8a", "KS distance of pooled spacings vs gap density", gs.ks_distance,
                      0.0, crit, gs.ks_distance <= crit,
                      "n = " + detail::fmt(static_cast<double>(gs.n_gaps)));
    const double band = 3.0 * gs.lag1_se;
    detail::add_check(rep, "8b", "lag-1 autocorrelation of spacings", gs.lag1_corr, 0.0, band,
                      std::abs(gs.lag1_corr) <= band);
}

// --- criterion 9: argmax triplet law -----------------------------------------

inline void check_triplet_law(VerificationReport& rep, std::uint64_t seed) {
    std::mt19937_64 rng(substream_seed(seed, 777));
    const int n = Pinned::triplet_draws;

    // decile edges in the argmax coordinate (exact arcsine mass 1/10 each),
    // fixed edges for rise and fall, overflow bins to infinity
    const int nr = 10;
    std::vector<double> redges(nr + 1);
    for (int i = 0; i <= nr; ++i) {
        const double phi = 0.5 * M_PI * static_cast<double>(i) / nr;
        redges[i] = std::sin(phi) * std::sin(phi);
    }
    const std::vector<double> gedges = {0.0, 0.25, 0.5,  0.75, 1.0,
                                        1.3, 1.6,  1.95, 2.4,  3.0,
                                        std::numeric_limits<double>::infinity()};
    const auto& dedges = gedges;
    const int ng = static_cast<int>(gedges.size()) - 1;

    std::vector<long long> observed(static_cast<std::size_t>(nr * ng * ng), 0);
    double corollary_sum = 0.0, corollary_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const ArgmaxTriplet tr = sample_argmax_triplet(0.0, 1.0, rng);
        const double w = std::exp(-(tr.rise * tr.rise + tr.fall * tr.fall) / 2.0);
        corollary_sum += w;
        corollary_sq += w * w;
        // argmax can round to the closed upper edge; keep it in the last bin
        const auto ri = std::min<std::size_t>(
            static_cast<std::size_t>(std::upper_bound(redges.begin(), redges.end(), tr.argmax) -
                                     redges.begin() - 1),
            static_cast<std::size_t>(nr - 1));
        const auto gi = std::min<std::size_t>(
            static_cast<std::size_t>(std::upper_bound(gedges.begin(), gedges.end(), tr.rise) -
                                     gedges.begin() - 1),
            static_cast<std::size_t>(ng - 1));
        const auto di = std::min<std::size_t>(
            static_cast<std::size_t>(std::upper_bound(dedges.begin(), dedges.end(), tr.fall) -
                                     dedges.begin() - 1),
            static_cast<std::size_t>(ng - 1));
        ++observed[(ri * ng + gi) * ng + di];
    }

    // expected counts from the density integrated over each box; boxes with
    // expectation under 5 pool into a rest bucket
    double chi2 = 0.0;
    double rest_obs = 0.0, rest_exp = 0.0;
    int kept = 0;
    for (int ri = 0; ri < nr; ++ri)
        for (int gi = 0; gi < ng; ++gi)
            for (int di = 0; di < ng; ++di) {
                const double pbox = argmax_triplet_box_probability(
                    1.0, redges[ri], redges[ri + 1], gedges[gi], gedges[gi + 1], dedges[di],
                    dedges[di + 1]);
                const double e = pbox * n;
                const double o =
                    static_cast<double>(observed[(static_cast<std::size_t>(ri) * ng + gi) * ng + di]);
                if (e < 5.0) {
                    rest_obs += o;
                    rest_exp += e;
                } else {
                    chi2 += (o - e) * (o - e) / e;
                    ++kept;
                }
            }
    if (rest_exp > 0.0) {
        chi2 += (rest_obs - rest_exp) * (rest_obs - rest_exp) / rest_exp;
        ++kept;
    }
    const boost::math::chi_squared dist(static_cast<double>(kept - 1));
    const double pval = boost::math::cdf(boost::math::complement(dist, chi2));
    detail::add_check(rep, "9a", "chi^2 of sampled triplets vs density", pval, 1.0,
                      Pinned::chi2_p_min, pval > Pinned::chi2_p_min,
                      "chi2 " + detail::fmt(chi2) + ", cells " + detail::fmt(kept));

    const double m = corollary_sum / n;
    const double sd = std::sqrt((corollary_sq / n - m * m) / (n - 1));
    const double target = std::sqrt(2.0) / 3.0;
    detail::add_check(rep, "9b", "E[exp(-(rise^2+fall^2)/2)] vs closed form", m, target, 3.0 * sd,
                      std::abs(m - target) <= 3.0 * sd);

    double worst = 0.0;
    for (double beta : {0.5, 1.0, 2.0, 5.0, 10.0})
        worst = std::max(worst,
                         std::abs(rise_fall_laplace(0.0, beta) - 1.0 / std::sqrt(1.0 + beta)));
    detail::add_check(rep, "9c", "alpha=0 reduction of the rise/fall transform", worst, 0.0, 1e-14,
                      worst <= 1e-14);
}

// --- criterion 10: regeneration-set structure --------------------------------

inline void check_regeneration_structure(VerificationReport& rep, std::uint64_t seed) {
    const ProcessParams p{1.0, 1.0};
    const PathConfig cfg{Pinned::mc_dt, Pinned::mc_horizon, seed + 2, Pinned::mr_paths};

    std::vector<long long> mismatches(static_cast<std::size_t>(cfg.n_paths), 0);
    std::vector<long long> matched(static_cast<std::size_t>(cfg.n_paths), 0);
    std::vector<std::vector<double>> heights(static_cast<std::size_t>(cfg.n_paths));

    parallel_paths(cfg.n_paths, [&](int pi) {
        const BrownianPath path = gen_brownian(cfg, static_cast<std::uint64_t>(pi));
        const PointSample ms = detect_m_ab(path, p);
        const auto runs = detect_r_a(path, p.a);
        heights[static_cast<std::size_t>(pi)] = run_gap_heights(runs);

        if (runs.size() < 2) return;
        const double step = path.dt;
        // gap starts with height strictly beyond b, inside the comparable range
        std::vector<double> gap_starts;
        for (std::size_t k = 0; k + 1 < runs.size(); ++k) {
            const double h = runs[k + 1].begin - runs[k].end;
            if (h > p.b + 0.5 * step && runs[k].end > p.a && runs[k].end <= ms.window_hi)
                gap_starts.push_back(runs[k].end);
        }
        const double last_observable = runs[runs.size() - 2].end;
        std::vector<double> m_pts;
        for (double t : ms.times)
            if (t > p.a && t <= last_observable + 0.5 * step) m_pts.push_back(t);

        auto near = [&](const std::vector<double>& v, double x) {
            auto it = std::lower_bound(v.begin(), v.end(), x - 1.5 * step);
            return it != v.end() && *it <= x + 1.5 * step;
        };
        long long bad = 0, good = 0;
        for (double t : m_pts) (near(gap_starts, t) ? good : bad)++;
        for (double t : gap_starts) {
            if (!near(m_pts, t)) ++bad;
        }
        mismatches[static_cast<std::size_t>(pi)] = bad;
        matched[static_cast<std::size_t>(pi)] = good;
    });

    long long bad = 0, good = 0;
    for (int i = 0; i < cfg.n_paths; ++i) {
        bad += mismatches[static_cast<std::size_t>(i)];
        good += matched[static_cast<std::size_t>(i)];
    }
    detail::add_check(rep, "10a", "two-sided points match gap starts of the running-max set",
                      static_cast<double>(bad), 0.0, 0.0, bad == 0,
                      detail::fmt(static_cast<double>(good)) + " matched within one step");

    // jump-height ratio test on (0, a]: conditionally on exceeding r1, a gap
    // exceeds r2 with probability sqrt(r1/r2)
    bool ratios_ok = true;
    std::string per;
    for (auto [r1, r2] : {std::pair{0.25, 1.0}, std::pair{0.5, 1.0}}) {
        long long n1 = 0, n2 = 0;
        for (const auto& hs : heights)
            for (double h : hs) {
                if (h >= r1) ++n1;
                if (h >= r2) ++n2;
            }
        const double phat = static_cast<double>(n2) / static_cast<double>(n1);
        const double ptar = std::sqrt(r1 / r2);
        const double se = std::sqrt(ptar * (1.0 - ptar) / static_cast<double>(n1));
        ratios_ok = ratios_ok && std::abs(phat - ptar) <= 3.0 * se;
        per += "p(" + detail::fmt(r2) + "|" + detail::fmt(r1) + ") = " + detail::fmt(phat) +
               " vs " + detail::fmt(ptar) + " (3se " + detail::fmt(3.0 * se) + ")  ";
    }
    detail::add_check(rep, "10b", "jump-height tail ratios on (0,a]", ratios_ok ? 0.0 : 1.0, 0.0,
                      0.0, ratios_ok, per);
}

// --- criterion 11: negative control ------------------------------------------

// Kernel with the plateau deliberately wrong; the cross-method and pair
// correlation checks must detect it.
inline std::function<double(double)> corrupted_kernel(const ProcessParams& p, double factor) {
    return [p, factor](double r) {
        if (r >= p.a + p.b) return factor / (M_PI * std::sqrt(p.a * p.b));
        return correlation_kernel(p, r);
    };
}

inline void check_negative_control_analytic(VerificationReport& rep, const detail::Tails& t) {
    const ProcessParams p{1.0, 1.0};
    const LevyTail bad = levy_tail_recursion(p, Pinned::dx, Pinned::r_max, corrupted_kernel(p, 1.25));
    const double d = detail::max_abs_diff_on(bad, t.abel, 0.0, 5.0);
    detail::add_check(rep, "11a", "corrupted plateau breaks cross-method agreement", d,
                      Pinned::cross_method_tol, 0.0, d > Pinned::cross_method_tol,
                      "discrepancy must exceed the tolerance");
    const double res = detail::max_abs(abel_residual(bad));
    const double res_tol = Pinned::residual_tol_factor * std::sqrt(2.0 * M_PI);
    detail::add_check(rep, "11b", "corrupted plateau breaks the residual check", res, res_tol, 0.0,
                      res > res_tol, "residual must exceed the tolerance");
}

inline void check_negative_control_mc(VerificationReport& rep, const PairCorrelationEstimate& pc) {
    const ProcessParams p{1.0, 1.0};
    const double r = 3.0;
    const auto k = static_cast<std::size_t>(std::llround(r / pc.bin_width)) - 1;
    const double bad_ref = corrupted_kernel(p, 1.25)(r);
    const double band = 3.0 * pc.h_se[k] + Pinned::mc_sys_allowance * bad_ref;
    const double err = std::abs(pc.h_hat[k] - bad_ref);
    detail::add_check(rep, "11c", "corrupted plateau breaks the pair-correlation check", err, band,
                      0.0, err > band, "estimate must sit outside the corrupted band");
}

// --- driver -------------------------------------------------------------------

inline VerificationReport run_verification(const std::string& profile, std::uint64_t seed) {
    VerificationReport rep;
    rep.profile = profile;
    rep.seed = seed;

    detail::Stopwatch solve_sw;
    const detail::Tails tails = detail::solve_all_tails(1.0, Pinned::dx, Pinned::r_max);
    const double solve_seconds = solve_sw.seconds();
    rep.timings.emplace_back("three-method tail solve", solve_seconds);
    check_closed_form_anchor(rep, tails, solve_seconds);
    check_cross_method(rep, tails, solve_seconds);
    check_kummer_transform(rep, tails);
    check_root_and_slope(rep, tails);
    check_renewal_mean(rep);
    check_negative_control_analytic(rep, tails);

    if (profile == "full") {
        const ProcessParams p{1.0, 1.0};
        detail::Stopwatch sw;
        const PathConfig cfg{Pinned::mc_dt, Pinned::mc_horizon, seed, Pinned::mc_paths};
        const std::vector<PointSample> samples = run_detection(p, cfg);
        const double sim_s = sw.seconds();

        check_mc_intensity(rep, samples, seed, sim_s);
        const PairCorrelationEstimate pc = estimate_pair_correlation(samples, 0.25, 6.0);
        check_mc_pair_correlation(rep, pc);
        const GridFunction g = gap_density(p, Pinned::dx, 14.0);
        check_mc_gap_law(rep, gap_statistics(samples, g));
        check_triplet_law(rep, seed);
        check_regeneration_structure(rep, seed);
        check_negative_control_mc(rep, pc);
    }
    return rep;
}

}  // namespace verify
}  // namespace maxproc
