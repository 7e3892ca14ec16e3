#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "maxproc/errors.hpp"

namespace maxproc {

// Confluent hypergeometric series M(a;b;x) = sum_n (a)_n/(b)_n x^n/n!.
// Only the scalar real case is provided; everything downstream needs the
// two parameter pairs (-1/2,1/2) and (1/2,3/2).
struct KummerParams {
    double a_param;
    double b_param;
    double tol = 1e-15;
    int max_terms = 500;
};

namespace detail {

inline bool is_nonpositive_integer(double b) {
    return b <= 0.0 && std::nearbyint(b) == b;
}

}  // namespace detail

// Series evaluation with the term recurrence
//   term_{n+1} = term_n * (a+n) / ((b+n)(n+1)) * x.
// The sum stops once two consecutive terms are below tol*|partial sum|;
// a single small term is not trusted because for x < 0 the alternating
// terms pass through zero.
inline double kummer_m(const KummerParams& p, double x) {
    if (detail::is_nonpositive_integer(p.b_param))
        throw InvalidParams("kummer_m: b parameter must not be a non-positive integer");
    if (!(p.tol > 0.0) || p.max_terms < 1)
        throw InvalidParams("kummer_m: tol must be positive and max_terms >= 1");

    double term = 1.0;
    double sum = 1.0;
    int small_streak = 0;
    for (int n = 0; n < p.max_terms; ++n) {
        term *= (p.a_param + n) / ((p.b_param + n) * (n + 1)) * x;
        sum += term;
        if (std::abs(term) < p.tol * std::abs(sum)) {
            if (++small_streak >= 2) return sum;
        } else {
            small_streak = 0;
        }
        if (p.a_param + n == 0.0) return sum;  // polynomial case: series terminates
    }
    throw NonConvergence("kummer_m: series did not settle within max_terms");
}

inline double kummer_m(double a_param, double b_param, double x) {
    return kummer_m(KummerParams{a_param, b_param}, x);
}

// Unique positive zero of x -> M(-1/2;1/2;x), located by bisection on [0,2].
// The function is 1 at 0 and strictly decreasing on the positive axis (every
// non-constant series term is negative there), so one sign change exists and
// the bracket is checked at runtime rather than assumed.
inline double find_rho(double tol) {
    if (!(tol > 0.0)) throw InvalidParams("find_rho: tol must be positive");
    const double lo0 = 0.0, hi0 = 2.0;
    auto f = [](double x) { return kummer_m(-0.5, 0.5, x); };
    if (!(f(lo0) > 0.0) || !(f(hi0) < 0.0))
        throw BracketFailure("find_rho: no sign change of M(-1/2;1/2;x) on [0,2]");
    double lo = lo0, hi = hi0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Constants of the exponential tail regime of the jump-measure tail G_a:
//   G_a(r) ~ amplitude_for_a(a) * exp(-rate_for_a(a) * r).
// rho is the positive zero of M(-1/2;1/2;.), lambda = M(1/2;3/2;rho) which is
// the magnitude of the slope of M(-1/2;1/2;.) at rho.
struct TailConstants {
    double rho;
    double lambda;

    double amplitude_for_a(double a) const { return std::sqrt(2.0 * M_PI) / (lambda * std::sqrt(a)); }
    double rate_for_a(double a) const { return rho / a; }
};

inline TailConstants tail_constants(double tol = 1e-12) {
    TailConstants c{};
    c.rho = find_rho(tol);
    c.lambda = kummer_m(0.5, 1.5, c.rho);
    return c;
}

// Closed-form Laplace transform of the jump-measure tail:
//   L G_a(theta) = sqrt(2 pi a) / M(-1/2;1/2;-theta a).
// For theta < 0 the expression continues analytically as long as
// -theta*a stays below rho, the zero of the denominator.
inline double levy_tail_laplace(double a, double theta) {
    if (!(a > 0.0)) throw InvalidParams("levy_tail_laplace: a must be positive");
    const double x = -theta * a;
    if (x > 0.0) {
        static const double rho = find_rho(1e-12);
        if (x >= rho) throw PoleRegion("levy_tail_laplace: -theta*a beyond the continuation region");
    }
    return std::sqrt(2.0 * M_PI * a) / kummer_m(-0.5, 0.5, x);
}

}  // namespace maxproc
