#pragma once

// Double-exponential (tanh-sinh) quadrature on a finite interval.
//
// The substitution x = tanh((pi/2) sinh t) maps (-1,1) to the real line and
// clusters nodes doubly exponentially at both endpoints, so integrands with
// integrable endpoint singularities (inverse square roots in particular)
// converge to near machine precision.  Refinement halves the step in t and
// reuses all previous evaluations; the number of correct digits roughly
// doubles per level.
//
// Integrands are invoked either as f(x) or as f(x, d_lo, d_hi), where d_lo
// = x - a and d_hi = b - x are supplied *without cancellation* (the deepest
// nodes sit ~1e-50 from an endpoint, far below what 1 - x can resolve in
// double precision).  Integrands that are singular at an endpoint must use
// the three-argument form and build the vanishing factors from d_lo / d_hi.

#include <cmath>
#include <cstddef>
#include <limits>
#include <type_traits>
#include <vector>

#include "errors.hpp"

namespace sectorflow {

// Which endpoints the caller declares singular.  Used for diagnostics and
// for the non-finite-sample policy: a non-finite integrand value at a node
// hugging a declared-singular endpoint is dropped (its weight is already
// negligible); anywhere else it is an error.
enum class SingularEnds { none, lower, upper, both };

struct QuadratureOptions {
    double rel_tol = 1e-12;       // early-stop agreement between levels
    int max_level = 12;           // step 2^-max_level in t
    double agreement_tol = 1e-9;  // required agreement after the last level
};

namespace detail {

// abscissa complement c = 1 - tanh(u) and weight w = (pi/2) cosh t / cosh^2 u
// for u = (pi/2) sinh t, tabulated once for every refinement level.
struct TanhSinhNode {
    double complement;  // distance of |x| from 1, exact down to ~1e-51
    double weight;      // dx/dt at the node (step factor applied at sum time)
};

// t_cutoff = 4.3 puts the smallest complement near 2e-51: deep enough that
// an inverse-square-root singularity has decayed below 1e-25 of its scale,
// while every intermediate quantity stays in double range.
struct TanhSinhTables {
    static constexpr double t_cutoff = 4.3;
    static constexpr int max_level = 12;

    // level 0: nodes at t = 0,1,...; level L>0: odd multiples of 2^-L.
    std::vector<std::vector<TanhSinhNode>> level;

    TanhSinhTables() {
        level.resize(max_level + 1);
        for (int j = 0; j * 1.0 <= t_cutoff; ++j) level[0].push_back(make(j * 1.0));
        for (int L = 1; L <= max_level; ++L) {
            const double h = std::ldexp(1.0, -L);
            for (int j = 1; j * h <= t_cutoff; j += 2) level[L].push_back(make(j * h));
        }
    }

    static TanhSinhNode make(double t) {
        const double pi_half = 1.5707963267948966;
        const double u = pi_half * std::sinh(t);
        const double e2u = std::exp(-2.0 * u);
        TanhSinhNode n;
        n.complement = 2.0 * e2u / (1.0 + e2u);
        const double ch = std::cosh(u);
        n.weight = pi_half * std::cosh(t) / (ch * ch);
        return n;
    }
};

inline const TanhSinhTables& tanh_sinh_tables() {
    static const TanhSinhTables tables;
    return tables;
}

template <class F>
double invoke_integrand(F& f, double x, double d_lo, double d_hi) {
    if constexpr (std::is_invocable_r_v<double, F&, double, double, double>) {
        return f(x, d_lo, d_hi);
    } else {
        static_assert(std::is_invocable_r_v<double, F&, double>,
                      "integrand must be callable as f(x) or f(x, d_lo, d_hi)");
        return f(x);
    }
}

}  // namespace detail

// Integrates f over [a, b].  Throws quadrature_error when the levels fail
// to agree (divergent or pathological integrand) and std::domain_error for
// an empty interval.  Deterministic: fixed node order, fixed summation.
template <class F>
double quad_singular(F&& f, double a, double b,
                     SingularEnds ends = SingularEnds::both,
                     QuadratureOptions opt = {}) {
    if (!(a < b)) throw std::domain_error("quad_singular: requires a < b");

    const auto& tables = detail::tanh_sinh_tables();
    const int max_level = std::min(opt.max_level, tables.max_level);
    const double half_width = 0.5 * (b - a);
    const bool lower_singular = ends == SingularEnds::lower || ends == SingularEnds::both;
    const bool upper_singular = ends == SingularEnds::upper || ends == SingularEnds::both;

    double tail = 0.0;  // |weighted sample| at the outermost node pair

    // One weighted sample w * f at signed node position; t > 0 hugs b.
    auto sample = [&](const detail::TanhSinhNode& n, bool positive) -> double {
        const double d_near = half_width * n.complement;
        const double d_far = (b - a) - d_near;
        const double x = positive ? b - d_near : a + d_near;
        const double d_lo = positive ? d_far : d_near;
        const double d_hi = positive ? d_near : d_far;
        const double v = detail::invoke_integrand(f, x, d_lo, d_hi);
        if (!std::isfinite(v)) {
            const bool at_singular_end = positive ? upper_singular : lower_singular;
            if (at_singular_end && n.complement < 1e-14) return 0.0;
            throw quadrature_error(
                "quad_singular: non-finite integrand sample away from a declared "
                "singular endpoint");
        }
        return n.weight * v;
    };

    // Level 0: center node plus the coarse tails.
    double sum = 0.0;
    {
        const auto& nodes = tables.level[0];
        sum = sample(nodes[0], true);  // t = 0: both distances equal, side moot
        for (std::size_t k = 1; k < nodes.size(); ++k) {
            const double sp = sample(nodes[k], true);
            const double sn = sample(nodes[k], false);
            sum += sp + sn;
            if (k + 1 == nodes.size()) tail = std::abs(sp) + std::abs(sn);
        }
    }

    // Truncation guard: the transformed integrand must have decayed at
    // t_cutoff, otherwise the level sums agree on a truncated (wrong,
    // typically divergent) value.
    auto check_tail = [&](double value, double step) {
        if (tail * step * half_width > 1e-10 * std::max(1.0, std::abs(value)))
            throw quadrature_error(
                "quad_singular: integrand tail has not decayed; integral "
                "appears divergent");
    };

    double h = 1.0;
    double previous = sum * h * half_width;
    double value = previous;
    double diff = std::numeric_limits<double>::infinity();
    for (int L = 1; L <= max_level; ++L) {
        h = std::ldexp(1.0, -L);
        const auto& nodes = tables.level[L];
        double add = 0.0;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const double sp = sample(nodes[k], true);
            const double sn = sample(nodes[k], false);
            add += sp + sn;
            if (k + 1 == nodes.size()) tail = std::abs(sp) + std::abs(sn);
        }
        sum += add;
        value = sum * h * half_width;
        const double scale = std::max(std::abs(value), std::numeric_limits<double>::min());
        diff = std::abs(value - previous);
        if (diff <= opt.rel_tol * scale) {
            check_tail(value, h);
            return value;
        }
        previous = value;
    }

    // Out of levels: accept if the last two refinements already agree to the
    // coarser acceptance tolerance, otherwise report non-convergence.
    if (diff <= opt.agreement_tol * std::max(std::abs(value), std::numeric_limits<double>::min())) {
        check_tail(value, h);
        return value;
    }
    throw quadrature_error(
        "quad_singular: refinement levels disagree after level " +
        std::to_string(max_level) + " (last delta " + std::to_string(diff) + ")");
}

}  // namespace sectorflow
