#pragma once

// Bracketing scalar solvers.  Every inversion in the flow solver is either
// a monotone root (bisection) or a unimodal extremum (golden section); both
// are derivative-free and immune to the steep gradients the angle and flux
// maps develop near degenerate root configurations.

#include <cmath>
#include <stdexcept>
#include <utility>

namespace sectorflow {

struct BisectOptions {
    double param_tol = 1e-12;  // relative bracket width at which to stop
    int max_iter = 200;
};

// Root of f on [lo, hi]; f(lo) and f(hi) must not have the same strict sign.
// Returns the bracket midpoint once the width drops below
// param_tol * max(1, |x|).
template <class F>
double bisect(F&& f, double lo, double hi, BisectOptions opt = {}) {
    if (!(lo <= hi)) throw std::domain_error("bisect: empty bracket");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::domain_error("bisect: no sign change over the bracket");
    for (int i = 0; i < opt.max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) return mid;  // bracket exhausted to one ulp
        if (hi - lo <= opt.param_tol * std::max(1.0, std::abs(mid))) return mid;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Argmin of a unimodal f on [a, b] by golden-section to the given absolute
// x-tolerance.  Evaluations are reused; ~1.44 log2((b-a)/tol) calls.
template <class F>
double golden_min(F&& f, double a, double b, double tol, int max_iter = 400) {
    if (!(a <= b)) throw std::domain_error("golden_min: empty interval");
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

template <class F>
double golden_max(F&& f, double a, double b, double tol, int max_iter = 400) {
    return golden_min([&](double x) { return -f(x); }, a, b, tol, max_iter);
}

}  // namespace sectorflow
