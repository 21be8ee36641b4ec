#pragma once

// Arc and period integrals of a root triple.
//
// With Q(f) = -(2/3)(f - e1)(f - e2)(f - e3), a monotone piece of the
// profile between turning points contributes
//
//   angle:  int df / sqrt(Q)         flux moment:  int f df / sqrt(Q)
//
// over the corresponding f-range.  The positive (outflow) arc runs over
// [0, e1], the negative (inflow) arc over [e2, 0], and a full period over
// [e2, e1].  Quadrature is taken in a normalized variable so the sqrt
// singularity always sits at an interval endpoint and every cubic factor is
// assembled from non-cancelling pieces; full-period integrals reduce to
// complete elliptic integrals and use the closed forms.
//
//   I+ = sqrt(e1)  int_0^1 dg / sqrt((2/3)(1-g)(e1 g - e2)(e1 g - e3))
//   I- = sqrt(-e2) int_0^1 dg / sqrt((2/3)(e1 - e2 g)(1-g)((e2-e3) - e2(1-g)))
//   I = sqrt(6) K(gamma) / sqrt(e1 - e3),
//   J = sqrt(6) (e3 K(gamma) + (e1 - e3) E(gamma)) / sqrt(e1 - e3),
//
// gamma^2 = (e1 - e2)/(e1 - e3).  A collapsed gap e2 == e3 reachable from
// the integration range makes the angle integral log-divergent; that is
// reported as divergence_error, never as a large float.

#include <cmath>
#include <stdexcept>

#include "cubic.hpp"
#include "elliptic.hpp"
#include "errors.hpp"
#include "quadrature.hpp"

namespace sectorflow {

namespace detail {

constexpr double c23 = 2.0 / 3.0;

// int_0^1 g^pow dg / sqrt((2/3)(1-g) P2(g)) with P2 the remaining quadratic
// of Q at f = e1 g; pow = 0 for angles, 1 for flux moments.
template <int pow>
double outflow_core(const RootTriple& rt) {
    const double e1 = rt.e1();
    if (rt.is_real()) {
        const auto& r = rt.real();
        const SingularEnds ends = r.e2 == 0.0 ? SingularEnds::both : SingularEnds::upper;
        auto f = [&r](double g, double d_lo, double d_hi) {
            const double q =
                c23 * d_hi * (r.e1 * d_lo - r.e2) * (r.e1 * g - r.e3);
            if constexpr (pow == 0) return 1.0 / std::sqrt(q);
            else return g / std::sqrt(q);
        };
        return quad_singular(f, 0.0, 1.0, ends);
    }
    const auto& p = rt.pair();
    const double re = 3.0 + 0.5 * p.e1;  // -(real part of the pair)
    auto f = [&p, re](double g, double, double d_hi) {
        const double s = p.e1 * g + re;
        const double q = c23 * d_hi * (s * s + p.c * p.c);
        if constexpr (pow == 0) return 1.0 / std::sqrt(q);
        else return g / std::sqrt(q);
    };
    return quad_singular(f, 0.0, 1.0, SingularEnds::upper);
}

template <int pow>
double inflow_core(const RealRoots& r) {
    const double a2 = -r.e2;          // |e2|
    const double gap = r.e2 - r.e3;   // root gap, > 0 or the integral diverges
    const SingularEnds ends = r.e1 == 0.0 ? SingularEnds::both : SingularEnds::upper;
    auto f = [&r, a2, gap](double g, double d_lo, double d_hi) {
        const double q = c23 * (r.e1 + a2 * d_lo) * d_hi * (gap + a2 * d_hi);
        if constexpr (pow == 0) return 1.0 / std::sqrt(q);
        else return g / std::sqrt(q);
    };
    return quad_singular(f, 0.0, 1.0, ends);
}

inline const RealRoots& period_roots(const RootTriple& rt, const char* who) {
    if (!rt.is_real())
        throw std::domain_error(std::string(who) + ": complex pair has no real period");
    const auto& r = rt.real();
    if (!(r.e3 <= r.e2 && r.e2 <= 0.0 && 0.0 <= r.e1))
        throw std::domain_error(std::string(who) + ": requires e3 <= e2 <= 0 <= e1");
    return r;
}

inline Modulus period_modulus(const RealRoots& r) {
    const double g2 = (r.e1 - r.e2) / (r.e1 - r.e3);
    if (std::sqrt(g2) >= modulus_degenerate_cutoff)
        throw divergence_error("period integral diverges: e2 collapses onto e3");
    return Modulus(std::sqrt(g2));
}

}  // namespace detail

// Angular width of the rising half of an outflow arc (f: 0 -> e1).
inline double angle_pos(const RootTriple& rt) {
    const double e1 = rt.e1();
    if (!(e1 > 0.0)) throw std::domain_error("angle_pos: requires e1 > 0");
    if (rt.is_real() && !(rt.real().e2 <= 0.0))
        throw std::domain_error("angle_pos: requires e2 <= 0");
    return std::sqrt(e1) * detail::outflow_core<0>(rt);
}

// Flux moment of the same half-arc: int_0^{e1} f df / sqrt(Q) > 0.
inline double flux_pos(const RootTriple& rt) {
    const double e1 = rt.e1();
    if (!(e1 > 0.0)) throw std::domain_error("flux_pos: requires e1 > 0");
    if (rt.is_real() && !(rt.real().e2 <= 0.0))
        throw std::domain_error("flux_pos: requires e2 <= 0");
    return e1 * std::sqrt(e1) * detail::outflow_core<1>(rt);
}

// Angular width of the falling half of an inflow arc (f: e2 -> 0).
inline double angle_neg(const RootTriple& rt) {
    if (!rt.is_real()) throw std::domain_error("angle_neg: requires real roots");
    const auto& r = rt.real();
    if (!(r.e2 < 0.0) || !(r.e1 >= 0.0))
        throw std::domain_error("angle_neg: requires e2 < 0 <= e1");
    if (r.e2 == r.e3)
        throw divergence_error("angle_neg diverges: double root at e2");
    return std::sqrt(-r.e2) * detail::inflow_core<0>(r);
}

// Flux moment of the inflow half-arc: int_{e2}^0 f df / sqrt(Q) < 0.
inline double flux_neg(const RootTriple& rt) {
    if (!rt.is_real()) throw std::domain_error("flux_neg: requires real roots");
    const auto& r = rt.real();
    if (!(r.e2 < 0.0) || !(r.e1 >= 0.0))
        throw std::domain_error("flux_neg: requires e2 < 0 <= e1");
    if (r.e2 == r.e3)
        throw divergence_error("flux_neg diverges: double root at e2");
    return -(-r.e2) * std::sqrt(-r.e2) * detail::inflow_core<1>(r);
}

// Full-period angle int_{e2}^{e1} df / sqrt(Q), closed elliptic form.
inline double angle_period(const RootTriple& rt) {
    const auto& r = detail::period_roots(rt, "angle_period");
    const Modulus m = detail::period_modulus(r);
    return std::sqrt(6.0) * ellip_K(m) / std::sqrt(r.e1 - r.e3);
}

// Full-period flux moment int_{e2}^{e1} f df / sqrt(Q), closed elliptic form.
inline double flux_period(const RootTriple& rt) {
    const auto& r = detail::period_roots(rt, "flux_period");
    const Modulus m = detail::period_modulus(r);
    const double span = r.e1 - r.e3;
    return std::sqrt(6.0) * (r.e3 * ellip_K(m) + span * ellip_E(m.value())) /
           std::sqrt(span);
}

struct ArcIntegrals {
    double i_plus, i_minus, i_full;
    double j_plus, j_minus, j_full;
};

// All six integrals of a strictly ordered real triple (used by diagnostics
// and tests; the additivity i_plus + i_minus == i_full is an invariant).
inline ArcIntegrals compute_arc_integrals(const RootTriple& rt) {
    return {angle_pos(rt),  angle_neg(rt),  angle_period(rt),
            flux_pos(rt),   flux_neg(rt),   flux_period(rt)};
}

// Total half-opening angle of a flow of the given type built on rt:
//   (1,0): I+           (0,1): I-           (m,m): m I
//   (m,m+1): m I+ + (m+1) I-  ==  (m+1) I - I+     (closed-form friendly)
//   (m+1,m): (m+1) I+ + m I-  ==  m I + I+
//   (m,0), m >= 2: m I+ at e2 == 0 (humps touch zero between arcs).
inline double angle_of(const RootTriple& rt, const FlowType& t) {
    require_valid(t);
    if (!admissible(rt, t))
        throw std::domain_error("angle_of: root triple not admissible for this type");
    if (t.pure_outflow()) return angle_pos(rt);
    if (t.pure_inflow()) return angle_neg(rt);
    if (t.m_minus == 0) {  // limiting family (m, 0), m >= 2
        if (std::abs(rt.real().e2) > 1e-12)
            throw std::domain_error("angle_of: type (m,0) requires e2 == 0");
        return t.m_plus * angle_pos(rt);
    }
    if (t.m_plus == t.m_minus) return t.m_plus * angle_period(rt);
    if (t.m_plus < t.m_minus)  // (m, m+1)
        return t.m_minus * angle_period(rt) - angle_pos(rt);
    return t.m_minus * angle_period(rt) + angle_pos(rt);  // (m+1, m)
}

// Half the total flux of such a flow (the flux is 2x by up-down symmetry of
// each arc): same composition rules applied to the flux moments.
inline double half_flux_of(const RootTriple& rt, const FlowType& t) {
    require_valid(t);
    if (!admissible(rt, t))
        throw std::domain_error("half_flux_of: root triple not admissible for this type");
    if (t.pure_outflow()) return flux_pos(rt);
    if (t.pure_inflow()) return flux_neg(rt);
    if (t.m_minus == 0) {
        if (std::abs(rt.real().e2) > 1e-12)
            throw std::domain_error("half_flux_of: type (m,0) requires e2 == 0");
        return t.m_plus * flux_pos(rt);
    }
    if (t.m_plus == t.m_minus) return t.m_plus * flux_period(rt);
    if (t.m_plus < t.m_minus) return t.m_minus * flux_period(rt) - flux_pos(rt);
    return t.m_minus * flux_period(rt) + flux_pos(rt);
}

}  // namespace sectorflow
