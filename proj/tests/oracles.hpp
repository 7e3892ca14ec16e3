// Test-only independent oracles.  These deliberately avoid the code paths
// they check: the Kummer sum below builds each term from scratch instead of
// using the term recurrence, and the quadratures are plain Simpson rules.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

// Direct evaluation of sum_n (a)_n/(b)_n x^n/n! with every factor computed
// as an explicit product.
inline double kummer_naive(double a, double b, double x, int n_terms = 80) {
    double sum = 0.0;
    for (int n = 0; n < n_terms; ++n) {
        double poch_a = 1.0, poch_b = 1.0, fact = 1.0;
        for (int k = 0; k < n; ++k) {
            poch_a *= a + k;
            poch_b *= b + k;
            fact *= k + 1;
        }
        sum += poch_a / poch_b * std::pow(x, n) / fact;
    }
    return sum;
}

inline double simpson(const std::function<double(double)>& f, double lo, double hi, int panels) {
    const double h = (hi - lo) / (2 * panels);
    double s = f(lo) + f(hi);
    for (int i = 1; i < 2 * panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    return s * h / 3.0;
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double flo = f(lo);
    if (flo * f(hi) > 0.0) throw std::runtime_error("bisect: no sign change");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (flo * f(mid) > 0.0) {
            lo = mid;
            flo = f(mid);
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracle
