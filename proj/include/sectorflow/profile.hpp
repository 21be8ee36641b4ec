#pragma once

// Angular profile reconstruction from a root triple.
//
// The profile f(theta) on [-alpha, alpha] is assembled arc by arc: an
// outflow arc rises 0 -> e1 -> 0, an inflow arc falls 0 -> e2 -> 0, and arcs
// alternate (the limiting (m,0) family chains outflow arcs through tangent
// junctions where f and f' vanish together).  Within a monotone sub-arc the
// first integral (f')^2 = Q(f) inverts to theta(f) = theta0 + int df/sqrt(Q):
// nodes are Chebyshev-distributed in f, clustered at the turning values
// where dtheta/df blows up, and consecutive increments are tanh-sinh
// quadratures whose endpoint singularities are rebuilt from exact end
// distances.  f' is recovered as +-sqrt(Q(f)), so wall and junction samples
// carry f = 0 exactly and turning samples carry f' = 0 exactly.
//
// Validation never estimates f'': the ODE residual is the first-integral
// defect |(f')^2 - Q(f)|, the flux residual integrates the cubic Hermite
// interpolant (the exact slopes are on hand), and the boundary residual
// reads the wall samples.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubic.hpp"
#include "errors.hpp"
#include "integrals.hpp"
#include "quadrature.hpp"
#include "solve.hpp"

namespace sectorflow {

struct ProfileSample {
    double theta = 0.0;
    double f = 0.0;
    double fprime = 0.0;
};

struct ProfileArc {
    int sign = 0;  // +1 outflow hump, -1 inflow trough
    double theta_start = 0.0;
    double theta_end = 0.0;
};

struct ProfileResiduals {
    double bc = 0.0;    // max |f| at the two walls
    double flux = 0.0;  // |int f dtheta - phi| by Hermite quadrature
    double ode = 0.0;   // max |(f')^2 - Q(f)| over interior samples
};

// Sampled profile.  Samples are strictly increasing in theta and span
// [-alpha, alpha] exactly; arc signs alternate except in the (m,0) family,
// and junction samples sit at f == 0.
struct Profile {
    double alpha = 0.0;
    FlowType flow_type;
    RootTriple roots = make_real_triple(0.0, 0.0);
    CubicCoeffs coeffs{0.0, 0.0};
    std::vector<ProfileSample> samples;
    std::vector<ProfileArc> arcs;
    ProfileResiduals residuals{};
};

struct FlowFields {
    double u_r = 0.0;
    double u_theta = 0.0;  // identically zero for these flows
    double pressure = 0.0;
};

namespace detail {

// theta increment int_a^b df / sqrt(Q) over a monotone piece of an arc.
// [a, b] lies inside the hump range [0, e1] or the trough range [e2, 0], so
// the inverse-sqrt singularity can only sit where the interval touches a
// root of Q; there the vanishing factor is rebuilt from the quadrature's
// exact end distances instead of a cancelling subtraction.
inline double arc_increment(const RealRoots& r, double a, double b) {
    const bool sing_hi = b == r.e1;  // hump apex, or trough end when e1 == 0
    const bool sing_lo = a == r.e2;  // trough bottom, or hump start when e2 == 0
    const SingularEnds ends = sing_lo && sing_hi ? SingularEnds::both
                              : sing_lo          ? SingularEnds::lower
                              : sing_hi          ? SingularEnds::upper
                                                 : SingularEnds::none;
    auto g = [&](double f, double d_lo, double d_hi) {
        const double t1 = sing_hi ? d_hi : r.e1 - f;
        const double t2 = sing_lo ? d_lo : f - r.e2;
        return 1.0 / std::sqrt(c23 * t1 * t2 * (f - r.e3));
    };
    return quad_singular(g, a, b, ends);
}

inline double arc_increment(const ComplexPairRoots& p, double a, double b) {
    const bool sing_hi = b == p.e1;
    const double re = 3.0 + 0.5 * p.e1;  // -(real part of the pair)
    auto g = [&](double f, double, double d_hi) {
        const double t1 = sing_hi ? d_hi : p.e1 - f;
        const double s = f + re;
        return 1.0 / std::sqrt(c23 * t1 * (s * s + p.c * p.c));
    };
    return quad_singular(g, a, b, sing_hi ? SingularEnds::upper : SingularEnds::none);
}

inline double arc_increment(const RootTriple& rt, double a, double b) {
    return rt.is_real() ? arc_increment(rt.real(), a, b)
                        : arc_increment(rt.pair(), a, b);
}

// One monotone half-arc from f = 0 to the turning value: Chebyshev-Lobatto
// nodes in f and the cumulative angles reached at each node.
struct HalfArc {
    std::vector<double> f;      // f_0 = 0, ..., f_n = turning value
    std::vector<double> angle;  // 0 = A_0 <= ... <= A_n = half the arc width
};

inline HalfArc half_arc(const RootTriple& rt, bool outflow, int n) {
    const double turning = outflow ? rt.e1() : rt.real().e2;
    HalfArc h;
    h.f.resize(n + 1);
    h.angle.resize(n + 1);
    const double quarter_pi_step = std::numbers::pi / (2.0 * n);
    for (int j = 0; j <= n; ++j) {
        const double s = std::sin(j * quarter_pi_step);
        h.f[j] = turning * (s * s);  // exact turning value at j = n
    }
    h.f[0] = 0.0;  // not -0.0 for troughs
    h.angle[0] = 0.0;
    for (int j = 1; j <= n; ++j) {
        const double lo = outflow ? h.f[j - 1] : h.f[j];
        const double hi = outflow ? h.f[j] : h.f[j - 1];
        h.angle[j] = h.angle[j - 1] + arc_increment(rt, lo, hi);
    }
    return h;
}

inline double slope_at(const RootTriple& rt, double f, bool rising) {
    const double q = std::max(0.0, eval_Q(rt, f));
    return rising ? std::sqrt(q) : -std::sqrt(q);
}

// Hermite interpolation of f on the sample interval containing theta.
inline double interp_f(const Profile& p, double theta) {
    const auto& s = p.samples;
    auto it = std::upper_bound(s.begin(), s.end(), theta,
                               [](double t, const ProfileSample& a) { return t < a.theta; });
    std::size_t i = static_cast<std::size_t>(it - s.begin());
    if (i == 0) i = 1;
    if (i == s.size()) i = s.size() - 1;
    const auto& a = s[i - 1];
    const auto& b = s[i];
    const double h = b.theta - a.theta;
    const double u = (theta - a.theta) / h;
    const double u2 = u * u;
    const double u3 = u2 * u;
    return a.f * (2.0 * u3 - 3.0 * u2 + 1.0) + b.f * (3.0 * u2 - 2.0 * u3) +
           h * (a.fprime * (u3 - 2.0 * u2 + u) + b.fprime * (u3 - u2));
}

// Flux of the sampled profile: exact integral of the two-point quintic
// Hermite interpolant on each interval.  Slopes are exact by construction
// and curvatures are exact through the ODE f'' = -f^2 - 4f + b, so the
// composite rule is sixth-order in the node spacing.
inline double hermite_flux(const std::vector<ProfileSample>& s, double b) {
    auto curvature = [b](const ProfileSample& a) { return -a.f * a.f - 4.0 * a.f + b; };
    double total = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        const double h = s[i].theta - s[i - 1].theta;
        total += 0.5 * h * (s[i - 1].f + s[i].f) +
                 h * h / 10.0 * (s[i - 1].fprime - s[i].fprime) +
                 h * h * h / 120.0 * (curvature(s[i - 1]) + curvature(s[i]));
    }
    return total;
}

inline ProfileResiduals profile_residuals(const Profile& p, const RootTriple& rt,
                                          double phi) {
    ProfileResiduals res;
    res.bc = std::max(std::abs(p.samples.front().f), std::abs(p.samples.back().f));
    res.flux = std::abs(hermite_flux(p.samples, p.coeffs.b) - phi);
    for (std::size_t i = 1; i + 1 < p.samples.size(); ++i) {
        const auto& s = p.samples[i];
        res.ode = std::max(res.ode, std::abs(s.fprime * s.fprime - eval_Q(rt, s.f)));
    }
    return res;
}

}  // namespace detail

// Rebuilds the angular profile of a validated solution with n_per_arc
// Chebyshev intervals per monotone half-arc.  The leftmost arc is an outflow
// arc when m_plus >= m_minus and an inflow arc otherwise; mirror reflects
// theta -> -theta (both orientations solve the same boundary problem).
inline Profile reconstruct(const Solution& s, const FlowType& t, int n_per_arc = 64,
                           bool mirror = false) {
    require_valid(t);
    if (n_per_arc < 8)
        throw std::invalid_argument("reconstruct: n_per_arc must be at least 8");
    const double alpha = angle_of(s.roots, t);  // rejects inadmissible triples
    const double phi = 2.0 * half_flux_of(s.roots, t);

    const int n = n_per_arc;
    const detail::HalfArc plus =
        t.m_plus > 0 ? detail::half_arc(s.roots, true, n) : detail::HalfArc{};
    const detail::HalfArc minus =
        t.m_minus > 0 ? detail::half_arc(s.roots, false, n) : detail::HalfArc{};

    Profile p;
    p.flow_type = t;
    p.roots = s.roots;
    p.coeffs = coeffs(s.roots);

    // Lay the arcs left to right from a cursor at 0; rescale afterwards.
    bool outflow = t.m_plus >= t.m_minus;
    double cursor = 0.0;
    for (int k = 0; k < t.arcs(); ++k) {
        const detail::HalfArc& h = outflow ? plus : minus;
        const double width = 2.0 * h.angle[n];
        if (p.samples.empty())
            p.samples.push_back({0.0, 0.0, detail::slope_at(s.roots, 0.0, outflow)});
        for (int j = 1; j <= n; ++j)  // towards the turning value: f' carries the arc sign
            p.samples.push_back(
                {cursor + h.angle[j], h.f[j], detail::slope_at(s.roots, h.f[j], outflow)});
        for (int j = n - 1; j >= 0; --j)  // back to zero: f' flips sign
            p.samples.push_back({cursor + width - h.angle[j], h.f[j],
                                 detail::slope_at(s.roots, h.f[j], !outflow)});
        p.arcs.push_back({outflow ? +1 : -1, cursor, cursor + width});
        cursor += width;
        if (t.m_minus > 0) outflow = !outflow;  // (m,0) keeps chaining humps
    }

    if (std::abs(0.5 * cursor - alpha) > 1e-8)
        throw arc_assembly_error(
            "reconstruct: cumulative arc angle " + std::to_string(0.5 * cursor) +
            " disagrees with the subtended half-angle " + std::to_string(alpha));

    // Affine map [0, cursor] -> [-alpha, alpha]; endpoints land exactly.
    const double total = cursor;
    auto place = [&](double theta) { return -alpha + (theta / total) * (2.0 * alpha); };
    for (auto& smp : p.samples) smp.theta = place(smp.theta);
    for (auto& arc : p.arcs) {
        arc.theta_start = place(arc.theta_start);
        arc.theta_end = place(arc.theta_end);
    }

    if (mirror) {
        std::reverse(p.samples.begin(), p.samples.end());
        for (auto& smp : p.samples) {
            smp.theta = -smp.theta;
            smp.fprime = -smp.fprime;
        }
        std::reverse(p.arcs.begin(), p.arcs.end());
        for (auto& arc : p.arcs) {
            const double start = -arc.theta_end;
            arc.theta_end = -arc.theta_start;
            arc.theta_start = start;
        }
    }

    p.alpha = alpha;
    p.residuals = detail::profile_residuals(p, s.roots, phi);
    return p;
}

// Residuals of a profile against the solution it claims to sample: wall
// values, flux defect against the triple's own flux, and the worst
// first-integral defect over interior samples.
inline ProfileResiduals validate(const Profile& p, const Solution& s) {
    if (p.samples.size() < 3)
        throw std::invalid_argument("validate: profile has too few samples");
    return detail::profile_residuals(p, s.roots, 2.0 * half_flux_of(s.roots, s.flow_type));
}

// Physical fields at (r, theta): u_r = f/r, u_theta = 0, and the pressure
// (2 f - b/2) / r^2, with f interpolated between samples.
inline FlowFields fields(const Profile& p, double r, double theta) {
    if (!(r > 0.0)) throw std::domain_error("fields: requires r > 0");
    if (!(theta >= -p.alpha && theta <= p.alpha))
        throw std::domain_error("fields: theta outside [-alpha, alpha]");
    const double f = detail::interp_f(p, theta);
    return {f / r, 0.0, (2.0 * f - 0.5 * p.coeffs.b) / (r * r)};
}

}  // namespace sectorflow
