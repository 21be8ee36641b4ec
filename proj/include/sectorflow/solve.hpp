#pragma once

// Solvers built on the arc integrals: critical roots of the angle maps,
// level-set inversions producing root triples that subtend a prescribed
// half-angle, maximum fluxes per flow type, existence classification with
// solution enumeration, and the half-plane leading-order construction.
//
// Every scalar inversion is a bisection of a map that is monotone on its
// bracket; every optimum is a golden-section pass over a section that a
// coarse presweep has localized first.  Divergent angle evaluations near
// degenerate walls are mapped to a huge finite value so brackets can lean
// on them.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cubic.hpp"
#include "elliptic.hpp"
#include "errors.hpp"
#include "integrals.hpp"
#include "rootfind.hpp"

namespace sectorflow {

// A flux prescribed through the sector of half-angle alpha, to be carried by
// a profile of the given composition.
struct SectorProblem {
    double alpha = 0.0;  // half-angle, in (0, pi)
    double phi = 0.0;    // total flux through any arc r = const
    FlowType flow_type;
};

// One self-similar profile: the root triple of its cubic, derived
// quantities, and the residuals of the two defining conditions.
struct Solution {
    FlowType flow_type;  // composition realized (boundary cases report the limiting one)
    RootTriple roots;
    CubicCoeffs coeffs;
    std::optional<Modulus> gamma;  // real triples with a non-degenerate spread only
    double residual_angle = 0.0;   // |angle(roots) - alpha|
    double residual_flux = 0.0;    // |2 half_flux(roots) - phi|
};

// Supremum of the flux a flow type can carry at a given half-angle.
struct PhiMaxResult {
    double value = 0.0;
    std::optional<RootTriple> argmax;  // triple meeting the angle condition at (or arbitrarily near) the supremum
    bool attained = false;             // reached by an interior configuration of the requested type
};

// One traced point of a level curve in the (e1, e2) plane.
struct CurvePoint {
    double e1 = 0.0;
    double e2 = 0.0;
    double half_flux = 0.0;
};

// Outcome of classify(): the validated solutions found, their count as a
// lower bound on the true number, and whether the flux sits within
// tolerance of the type's maximum.
struct Existence {
    bool exists = false;
    int count_lower_bound = 0;
    std::vector<Solution> solutions;
    bool boundary_case = false;
};

// Quarter-plane far-field pair of the half-plane flow at leading order.
struct HalfPlaneFlow {
    FlowType upstream;
    FlowType downstream;
    Solution upstream_solution;
    Solution downstream_solution;
};

// Absolute width of the band around phi_max reported as a boundary case.
inline constexpr double boundary_flux_tol = 1e-8;

namespace detail {

inline constexpr double half_pi = std::numbers::pi / 2.0;

// Composite angle with divergent configurations mapped to a huge finite
// value, so optimizers and brackets can probe degenerate walls.
inline double angle_capped(double e1, double e2, const FlowType& t) {
    try {
        return angle_of(make_real_triple(e1, e2), t);
    } catch (const divergence_error&) {
        return 1e300;
    }
}

// The e2 sections are solved in the stretched variable u = sqrt(-e2): the
// angle has a square-root cusp at the e2 -> 0 edge (each inflow arc closes
// like sqrt(-e2)), so in u its slope stays bounded and bisection tolerances
// translate into comparable angle residuals.
inline double section_u_min(double e1) { return std::sqrt(1e-13 * std::max(1.0, e1)); }

inline double section_u_max(double e1) {
    return std::sqrt(3.0 + 0.5 * e1 - std::max(1e-12, 1e-10 * (3.0 + e1)));
}

// Location (in u) of the interior dip of a surplus-type angle section at
// fixed e1, from a uniform presweep in u followed by golden section.
inline double dip_u(const FlowType& t, double e1) {
    const double ul = section_u_min(e1);
    const double uh = section_u_max(e1);
    auto f = [&](double u) { return angle_capped(e1, -u * u, t); };
    const int n = 25;
    int kb = 1;
    double fb = std::numeric_limits<double>::max();
    for (int k = 1; k < n; ++k) {
        const double v = f(ul + (uh - ul) * k / n);
        if (v < fb) {
            fb = v;
            kb = k;
        }
    }
    const double a = ul + (uh - ul) * (kb - 1) / n;
    const double b = ul + (uh - ul) * std::min(n, kb + 1) / n;
    return golden_min(f, a, b, 1e-6 * std::max(1.0, uh));
}

}  // namespace detail

// Critical abscissa of the single-hump outflow family: root of the strictly
// decreasing map e1 -> I+(e1, 0) = alpha.  Defined for alpha in (0, pi/2);
// the hump subtends exactly pi/2 in the e1 -> 0 limit.
inline double e1_star(double alpha) {
    if (!(alpha > 0.0 && alpha < detail::half_pi))
        throw std::domain_error("e1_star: requires 0 < alpha < pi/2");
    auto f = [&](double e1) { return angle_pos(make_real_triple(e1, 0.0)) - alpha; };
    double lo = 1e-8;
    int guard = 0;
    while (f(lo) < 0.0) {
        lo *= 0.0625;
        if (++guard > 60) throw std::domain_error("e1_star: alpha too close to pi/2");
    }
    double hi = std::max(8.0, 4.0 * lo);
    guard = 0;
    while (f(hi) >= 0.0) {
        lo = hi;
        hi *= 4.0;
        if (++guard > 60) throw std::domain_error("e1_star: alpha too close to zero");
    }
    return bisect(f, lo, hi);
}

// Modulus at which the periodic-cell angle matches alpha on the e1 = 0
// edge: root of the strictly increasing (gamma^2 + 1) K(gamma)^2 = alpha^2.
// Exactly zero at alpha = pi/2.
inline Modulus gamma_star(double alpha) {
    if (!(alpha >= detail::half_pi && alpha < std::numbers::pi))
        throw std::domain_error("gamma_star: requires pi/2 <= alpha < pi");
    const double target = alpha * alpha;
    auto f = [&](double g) {
        const double K = ellip_K(g);
        return (g * g + 1.0) * K * K - target;
    };
    return Modulus(bisect(f, 0.0, 1.0 - 1e-9));
}

// Second root of the periodic cell pinned to the e1 = 0 edge at half-angle
// alpha; the single-inflow-arc angle there equals alpha.
inline double e2_star(double alpha) {
    const Modulus gs = gamma_star(alpha);
    const double K = ellip_K(gs);
    const double g2 = gs.value() * gs.value();
    return -2.0 - (2.0 / (alpha * alpha)) * (2.0 * g2 - 1.0) * K * K;
}

// Every e2 in (-3 - e1/2, 0) at which the mixed-type angle equals alpha, in
// ascending order.  Alternating types (m, m+1) have an angle strictly
// decreasing in e2: zero or one root.  Surplus types (m+1, m) dip through an
// interior minimum: zero, one (tangency), or two roots.
inline std::vector<double> solve_e2_on_level(double e1, double alpha, const FlowType& t) {
    require_valid(t);
    if (!(std::isfinite(e1) && e1 > 0.0))
        throw std::domain_error("solve_e2_on_level: requires e1 > 0");
    if (!(alpha > 0.0 && alpha < std::numbers::pi))
        throw std::domain_error("solve_e2_on_level: half-angle must lie in (0, pi)");
    const bool alternating = (t.m_minus == t.m_plus + 1);
    const bool surplus = (t.m_plus == t.m_minus + 1 && t.m_minus >= 1);
    if (!alternating && !surplus)
        throw std::invalid_argument("solve_e2_on_level: type must be (m, m+1) or (m+1, m)");

    const double ul = detail::section_u_min(e1);  // e2 -> 0 side
    const double uh = detail::section_u_max(e1);  // wall side
    auto f = [&](double u) { return detail::angle_capped(e1, -u * u, t) - alpha; };

    // bisections run to bracket exhaustion: near the e2 -> 0 edge and near
    // the double-root merger the angle slope in u is effectively unbounded
    const BisectOptions exact{0.0, 200};
    std::vector<double> roots;
    if (alternating) {
        if (f(ul) >= 0.0) return roots;  // even the e2 -> 0 edge subtends at least alpha
        const double u = bisect(f, ul, uh, exact);
        roots.push_back(-u * u);
        return roots;
    }
    if (f(ul) < 0.0) {
        // past the curve start the section crosses the level exactly once
        const double u = bisect(f, ul, uh, exact);
        roots.push_back(-u * u);
        return roots;
    }
    const double ud = detail::dip_u(t, e1);
    const double fdip = f(ud);
    if (fdip > 1e-11) return roots;
    if (fdip >= -1e-11) {
        roots.push_back(-ud * ud);  // tangency at the level
        return roots;
    }
    const double uleft = bisect(f, ud, uh, exact);   // more negative e2
    const double uright = bisect(f, ul, ud, exact);  // closer to the e2 = 0 edge
    roots.push_back(-uleft * uleft);
    roots.push_back(-uright * uright);
    return roots;
}

namespace detail {

// One outflow hump at fixed e1 is steered by a dial s >= 0: s <= 3 + e1/2
// selects the real triple (e1, -s), larger s continues smoothly into the
// complex-pair family with c = s - (3 + e1/2).
inline RootTriple outflow_triple(double e1, double s) {
    const double seam = 3.0 + 0.5 * e1;
    if (s <= seam) return make_real_triple(e1, s == 0.0 ? 0.0 : -s);
    return make_complex_pair(e1, s - seam);
}

// Invert the hump's half-angle, strictly decreasing in the dial, at the
// level alpha.  Empty when even the widest hump (s = 0) subtends less than
// alpha; a deficit within 1e-9 is accepted as the edge itself.
inline std::optional<double> solve_outflow_dial(double e1, double alpha) {
    auto f = [&](double s) { return angle_pos(outflow_triple(e1, s)) - alpha; };
    const double edge = f(0.0);
    if (edge < 0.0) {
        if (edge > -1e-9) return 0.0;
        return std::nullopt;
    }
    if (edge == 0.0) return 0.0;
    double lo = 0.0;
    double hi = 3.0 + 0.5 * e1;
    int guard = 0;
    while (f(hi) >= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 200) throw quadrature_error("solve_outflow_dial: bracket did not close");
    }
    // run to bracket exhaustion: near a pinched pair the angle slope in the
    // dial grows like 1/e1, so a fixed parameter tolerance is not enough
    return bisect(f, lo, hi, {0.0, 200});
}

// Flux of the single outflow hump subtending alpha at abscissa e1; callers
// keep e1 at or below e1_star(alpha).
inline double outflow_level_half_flux(double e1, double alpha) {
    const auto s = solve_outflow_dial(e1, alpha);
    if (!s) throw std::domain_error("outflow_level_half_flux: hump cannot subtend the half-angle");
    return flux_pos(outflow_triple(e1, *s));
}

// e1 completing a single inflow arc of half-angle alpha at fixed e2 < 0.
// The arc angle falls strictly in e1, from a divergent wall (e2 <= -3) or
// from the e1 = 0 edge value, so the root is unique when it exists; an edge
// deficit within 1e-9 is accepted as the edge itself.
inline std::optional<double> inflow_e1_of_e2(double e2, double alpha) {
    if (!(e2 < 0.0)) throw std::domain_error("inflow_e1_of_e2: requires e2 < 0");
    const double wall = std::max(0.0, -6.0 - 2.0 * e2);
    auto f = [&](double e1) {
        try {
            return angle_neg(make_real_triple(e1, e2)) - alpha;
        } catch (const divergence_error&) {
            return 1e300;
        }
    };
    double lo = wall;
    if (wall == 0.0) {
        const double edge = f(0.0);
        if (edge < 0.0) {
            if (edge > -1e-9) return 0.0;
            return std::nullopt;
        }
        if (edge == 0.0) return 0.0;
    } else {
        lo = wall + std::max(1e-12, 1e-10 * wall);
    }
    double hi = std::max(1.0, -2.0 * e2);
    int guard = 0;
    while (f(hi) >= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 200) throw quadrature_error("inflow_e1_of_e2: bracket did not close");
    }
    // bracket exhaustion: the angle slope in e1 grows like 1/|e2| when the
    // root pair pinches, so weak arcs need e1 resolved far below 1e-12
    return bisect(f, lo, hi, {0.0, 200});
}

// Flux of the single inflow arc subtending alpha at ordinate e2.
inline double inflow_level_half_flux(double e2, double alpha) {
    const auto e1 = inflow_e1_of_e2(e2, alpha);
    if (!e1) throw std::domain_error("inflow_level_half_flux: arc cannot subtend the half-angle");
    return flux_neg(make_real_triple(*e1, e2));
}

// Periodic-cell roots from (cell angle beta, modulus gamma):
//   e1 = -2 + (2/beta^2)(gamma^2 + 1) K^2
//   e2 = -2 - (2/beta^2)(2 gamma^2 - 1) K^2
//   e3 = -2 + (2/beta^2)(gamma^2 - 2) K^2
// The full-period angle of the result recomputes to beta exactly, and its
// flux follows from the cell energy identity I^2 + I J / 2 = H(gamma).
inline RootTriple periodic_triple(double beta, const Modulus& gamma) {
    const double K = ellip_K(gamma);
    const double g2 = gamma.value() * gamma.value();
    const double scale = 2.0 * K * K / (beta * beta);
    return make_real_triple(-2.0 + scale * (g2 + 1.0), -2.0 - scale * (2.0 * g2 - 1.0));
}

// Solution record with recomputed residuals and, for a real triple with a
// non-degenerate spread, its modulus.
inline Solution make_solution(const RootTriple& rt, const FlowType& t, double alpha, double phi) {
    Solution s{t, rt, coeffs(rt), std::nullopt, 0.0, 0.0};
    if (rt.is_real()) {
        try {
            s.gamma = modulus(rt);
        } catch (const std::domain_error&) {
        }
    }
    s.residual_angle = std::abs(angle_of(rt, t) - alpha);
    s.residual_flux = std::abs(2.0 * half_flux_of(rt, t) - phi);
    return s;
}

// Append a solution only if it validates against the contract tolerances
// and does not duplicate an already-listed root pair (branch enumerations
// meet at segment ends).
inline void push_if_valid(std::vector<Solution>& sols, Solution&& s, double phi) {
    if (s.residual_angle > 1e-9) return;
    if (s.residual_flux > 1e-8 * std::max(1.0, std::abs(phi))) return;
    if (s.roots.is_real()) {
        for (const auto& q : sols) {
            if (!q.roots.is_real()) continue;
            const auto& a = q.roots.real();
            const auto& b = s.roots.real();
            if (std::abs(a.e1 - b.e1) <= 1e-7 * std::max(1.0, std::abs(b.e1)) &&
                std::abs(a.e2 - b.e2) <= 1e-7 * std::max(1.0, std::abs(b.e2)))
                return;
        }
    }
    sols.push_back(std::move(s));
}

// Root of hf == target between a and b, or empty when the values there do
// not straddle the target or the continuation fails inside the bracket.
template <class HF>
std::optional<double> flux_crossing(HF&& hf, double a, double b, double target) {
    try {
        const double fa = hf(a) - target;
        const double fb = hf(b) - target;
        if (fa == 0.0) return a;
        if (fb == 0.0) return b;
        if ((fa > 0.0) == (fb > 0.0)) return std::nullopt;
        return bisect([&](double x) { return hf(x) - target; }, a, b);
    } catch (const divergence_error&) {
        return std::nullopt;
    } catch (const quadrature_error&) {
        return std::nullopt;
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
}

struct LevelSample {
    double e1 = 0.0;
    double e2 = 0.0;
    double half_flux = 0.0;
};

struct CurveScan {
    double start_e1 = 0.0;         // 0 when the curve emanates from the origin corner
    double start_half_flux = 0.0;  // flux limit at the start
    double peak_e1 = 0.0;          // refined interior flux maximum along the curve
    double peak_e2 = 0.0;
    double peak_half_flux = -1e300;
    std::vector<LevelSample> grid;  // geometric sweep along the lower/unique branch
};

// Sweep the flux along a mixed-type level curve on a geometric e1 grid until
// it has fallen by 10 below its running maximum, then refine the interior
// maximum by golden section.  The lower (more negative e2) branch carries
// the maximum for surplus types; alternating types have a single branch.
inline CurveScan scan_level_curve(const FlowType& t, double alpha) {
    CurveScan scan;
    if (alpha / t.m_plus < half_pi) {
        scan.start_e1 = e1_star(alpha / t.m_plus);
        scan.start_half_flux = t.m_plus * flux_pos(make_real_triple(scan.start_e1, 0.0));
    }
    const double origin = scan.start_e1 > 0.0 ? scan.start_e1 * (1.0 + 1e-6) : 1e-6;

    auto sample = [&](double x) -> std::optional<LevelSample> {
        const auto r = solve_e2_on_level(x, alpha, t);
        if (r.empty()) return std::nullopt;
        return LevelSample{x, r.front(), half_flux_of(make_real_triple(x, r.front()), t)};
    };

    int best = -1;
    double best_hf = -1e300;
    int misses = 0;
    double x = origin;
    for (int k = 0; k < 600; ++k, x *= 1.1) {
        const auto s = sample(x);
        if (!s) {
            // the root is pinched inside the e2 ~ 0 sliver next to the curve
            // start; step over it
            ++misses;
            if (scan.grid.empty() ? misses > 220 : misses > 5)
                throw quadrature_error("scan_level_curve: lost the level curve");
            continue;
        }
        misses = 0;
        scan.grid.push_back(*s);
        if (s->half_flux > best_hf) {
            best_hf = s->half_flux;
            best = static_cast<int>(scan.grid.size()) - 1;
        }
        if (s->half_flux <= best_hf - 10.0 && s->half_flux <= scan.start_half_flux - 10.0) break;
    }
    if (scan.grid.empty()) throw quadrature_error("scan_level_curve: no admissible points on the level");

    const double bx = scan.grid[best].e1;
    const double bl = best > 0 ? scan.grid[best - 1].e1
                               : (scan.start_e1 > 0.0 ? scan.start_e1 : 0.5 * origin);
    const double bh = best + 1 < static_cast<int>(scan.grid.size()) ? scan.grid[best + 1].e1 : bx * 1.1;
    const double px = golden_max(
        [&](double y) {
            const auto s = sample(y);
            return s ? s->half_flux : -1e300;
        },
        bl, bh, 1e-10 * std::max(1.0, bx));
    scan.peak_e1 = scan.grid[best].e1;
    scan.peak_e2 = scan.grid[best].e2;
    scan.peak_half_flux = scan.grid[best].half_flux;
    if (const auto s = sample(px); s && s->half_flux >= scan.peak_half_flux) {
        scan.peak_e1 = s->e1;
        scan.peak_e2 = s->e2;
        scan.peak_half_flux = s->half_flux;
    }
    return scan;
}

// Flux supremum from a completed scan.  "Attained" records whether some
// configuration carries the supremum flux: an interior point of the curve
// (argmax has e2 < 0), or the curve-start limit where the inflow arcs have
// pinched off (argmax has e2 = 0, realized by the outflow-only composition).
inline PhiMaxResult assemble_phi_max(const CurveScan& scan) {
    PhiMaxResult out;
    if (scan.peak_half_flux > scan.start_half_flux + 1e-12) {
        out.value = 2.0 * scan.peak_half_flux;
        out.argmax = make_real_triple(scan.peak_e1, scan.peak_e2);
        out.attained = true;
        return out;
    }
    out.value = 2.0 * std::max(scan.start_half_flux, scan.peak_half_flux);
    if (scan.start_e1 > 0.0) {
        out.argmax = make_real_triple(scan.start_e1, 0.0);
        out.attained = true;
    }
    return out;
}

struct Minimax21 {
    double alpha_star = 0.0;
    double e1_at = 0.0;
};

// Largest half-angle for which some abscissa keeps the whole (2,1) angle
// section at or above it: sup over e1 of (inf over e2).  The outer profile
// is swept on a log grid and refined by golden section; computed once.
inline const Minimax21& minimax_21() {
    static const Minimax21 cached = [] {
        const FlowType t{2, 1};
        auto inner = [&](double e1) {
            const double u = dip_u(t, e1);
            return angle_capped(e1, -u * u, t);
        };
        const int n = 56;
        const double a = 0.02;
        const double ratio = std::pow(80.0 / a, 1.0 / (n - 1));
        std::vector<double> xs(n);
        int kb = 0;
        double fb = -1.0;
        double x = a;
        for (int k = 0; k < n; ++k, x *= ratio) {
            xs[k] = x;
            const double v = inner(x);
            if (v > fb) {
                fb = v;
                kb = k;
            }
        }
        if (kb == 0 || kb == n - 1)
            throw std::logic_error("minimax_21: profile maximum escaped the sweep range");
        const double px = golden_max(inner, xs[kb - 1], xs[kb + 1], 1e-7 * xs[kb]);
        return Minimax21{inner(px), px};
    }();
    return cached;
}

// Turning point of a surplus-type level curve: the largest e1 whose whole
// angle section stays at or above alpha.
inline double fold_e1(const FlowType& t, double alpha) {
    auto dips_below = [&](double e1) {
        const double u = dip_u(t, e1);
        return angle_capped(e1, -u * u, t) < alpha;
    };
    double lo;
    if (t.m_minus == 1) {
        const auto& mm = minimax_21();
        if (alpha > mm.alpha_star + 1e-9)
            throw unsupported_region_error("fold_e1: (2,1) beyond the supported half-angle threshold");
        lo = mm.e1_at;
    } else {
        lo = e1_star(alpha / t.m_minus);
    }
    double hi = e1_star(alpha / t.m_plus);
    if (dips_below(lo)) return lo;  // rounding at alpha == alpha_star: the bracket edge is the fold
    while (hi - lo > 1e-10 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        (dips_below(mid) ? hi : lo) = mid;
    }
    return lo;
}

// Maximum flux of the nested type (m, m): m copies of the cell problem at
// half-angle alpha/m.  Below pi/2 the supremum sits on the e2 = 0 edge and
// is carried by the outflow-only limit; at pi/2 only the rest state
// remains; above (m = 1 only) it moves to the e1 = 0 edge.
inline PhiMaxResult phi_max_mm(int m, double alpha) {
    const double beta = alpha / m;
    PhiMaxResult out;
    if (std::abs(beta - half_pi) <= 1e-12) return out;  // only the rest state remains
    if (beta < half_pi) {
        const auto rt = make_real_triple(e1_star(beta), 0.0);
        out.value = 2.0 * m * flux_pos(rt);
        out.argmax = rt;
        out.attained = true;
        return out;
    }
    const auto rt = make_real_triple(0.0, e2_star(beta));
    out.value = 2.0 * m * flux_neg(rt);
    out.argmax = rt;
    out.attained = true;
    return out;
}

}  // namespace detail

// Threshold half-angle up to which the (2,1) fold structure is established;
// cached on first use.
inline double alpha_star_21() { return detail::minimax_21().alpha_star; }

// Supremum of the flux the flow type can carry at half-angle alpha, with
// the configuration realizing (or approaching) it.
inline PhiMaxResult phi_max(const FlowType& t, double alpha) {
    require_valid(t);
    if (!(alpha > 0.0 && alpha < std::numbers::pi))
        throw std::domain_error("phi_max: half-angle must lie in (0, pi)");
    if (t.pure_outflow()) {
        if (alpha >= detail::half_pi)
            throw std::domain_error("phi_max: pure outflow requires alpha < pi/2");
        const auto rt = make_real_triple(e1_star(alpha), 0.0);
        return {2.0 * flux_pos(rt), rt, true};
    }
    if (t.pure_inflow()) {
        if (alpha <= detail::half_pi) return {0.0, std::nullopt, false};
        const auto rt = make_real_triple(0.0, e2_star(alpha));
        return {2.0 * flux_neg(rt), rt, true};
    }
    if (t.m_plus == t.m_minus || t.m_minus == 0) return detail::phi_max_mm(t.m_plus, alpha);
    if (t.m_plus == 2 && t.m_minus == 1 && alpha > alpha_star_21())
        throw unsupported_region_error("phi_max: type (2,1) beyond the supported half-angle threshold");
    return detail::assemble_phi_max(detail::scan_level_curve(t, alpha));
}

// Reconstruct the nested type (m, m) carrying flux phi: reduce to one
// periodic cell of angle alpha/m and flux phi/m, solve the strictly
// decreasing cell energy H(gamma) for the modulus, and rebuild the triple.
inline Solution solve_type_mm(double alpha, double phi, int m) {
    if (m < 1) throw std::invalid_argument("solve_type_mm: requires m >= 1");
    if (!(alpha > 0.0 && alpha < std::numbers::pi))
        throw std::domain_error("solve_type_mm: half-angle must lie in (0, pi)");
    if (!std::isfinite(phi)) throw std::domain_error("solve_type_mm: flux must be finite");
    const auto pm = detail::phi_max_mm(m, alpha);
    if (phi >= pm.value) throw no_solution_error("solve_type_mm: flux at or above the type maximum");
    const double beta = alpha / m;
    const double target = beta * beta + 0.25 * beta * (phi / m);
    const double cap = modulus_degenerate_cutoff - 1e-12;
    if (ellip_H(cap) > target)
        throw divergence_error("solve_type_mm: periodic cell degenerates before reaching the flux");
    const double gbar = bisect([&](double g) { return ellip_H(g) - target; }, 0.0, cap);
    return detail::make_solution(detail::periodic_triple(beta, Modulus(gbar)), FlowType{m, m}, alpha,
                                 phi);
}

// Existence and enumeration of profiles of the requested type carrying the
// prescribed flux.  count_lower_bound equals the number of validated
// solutions returned; boundary_case flags a flux within boundary_flux_tol
// of the type maximum, where the listed solution is the limiting one.
inline Existence classify(const SectorProblem& p) {
    require_valid(p.flow_type);
    if (!(p.alpha > 0.0 && p.alpha < std::numbers::pi))
        throw std::domain_error("classify: half-angle must lie in (0, pi)");
    if (!std::isfinite(p.phi)) throw std::domain_error("classify: flux must be finite");
    const FlowType& t = p.flow_type;
    Existence out;
    const auto done = [](Existence& e) -> Existence& {
        e.count_lower_bound = static_cast<int>(e.solutions.size());
        e.exists = !e.solutions.empty();
        return e;
    };

    if (t.pure_outflow()) {
        if (p.phi <= 0.0 || p.alpha >= detail::half_pi) return done(out);
        const auto pm = phi_max(t, p.alpha);
        if (p.phi > pm.value + boundary_flux_tol) return done(out);
        if (std::abs(p.phi - pm.value) <= boundary_flux_tol) {
            out.boundary_case = true;
            out.solutions.push_back(detail::make_solution(*pm.argmax, t, p.alpha, p.phi));
            return done(out);
        }
        // the flux rises strictly along the level curve up to its end at
        // e1_star, so the abscissa inverts by bisection
        const double estar = pm.argmax->e1();
        double lo = 0.5 * estar;
        int guard = 0;
        while (2.0 * detail::outflow_level_half_flux(lo, p.alpha) >= p.phi) {
            lo *= 0.5;
            if (++guard > 2000) throw quadrature_error("classify: outflow bracket did not close");
        }
        const double e1 = bisect(
            [&](double x) { return 2.0 * detail::outflow_level_half_flux(x, p.alpha) - p.phi; }, lo,
            estar);
        const auto dial = detail::solve_outflow_dial(e1, p.alpha);
        out.solutions.push_back(
            detail::make_solution(detail::outflow_triple(e1, *dial), t, p.alpha, p.phi));
        return done(out);
    }

    if (t.pure_inflow()) {
        const auto pm = phi_max(t, p.alpha);
        if (p.phi > pm.value + boundary_flux_tol) return done(out);
        if (std::abs(p.phi - pm.value) <= boundary_flux_tol) {
            out.boundary_case = true;
            if (pm.attained)
                out.solutions.push_back(detail::make_solution(*pm.argmax, t, p.alpha, p.phi));
            // at or below pi/2 only the rest state carries the boundary flux
            return done(out);
        }
        // the flux rises strictly along e2 on the one-arc family; below pi/2
        // the edge scales with the target so weak inflow still brackets
        const double hi = p.alpha > detail::half_pi
                              ? e2_star(p.alpha) * (1.0 + 1e-9)
                              : -std::min(1e-6, std::abs(p.phi) / 20.0);
        double lo = std::min(4.0 * hi, -1.0);
        int guard = 0;
        while (2.0 * detail::inflow_level_half_flux(lo, p.alpha) >= p.phi) {
            lo *= 2.0;
            if (++guard > 400) throw quadrature_error("classify: inflow bracket did not close");
        }
        const double e2 = bisect(
            [&](double x) { return 2.0 * detail::inflow_level_half_flux(x, p.alpha) - p.phi; }, lo, hi);
        const double e1 = detail::inflow_e1_of_e2(e2, p.alpha).value();
        out.solutions.push_back(detail::make_solution(make_real_triple(e1, e2), t, p.alpha, p.phi));
        return done(out);
    }

    if (t.m_plus == t.m_minus || t.m_minus == 0) {
        const int m = t.m_plus;
        const auto pm = phi_max(t, p.alpha);
        if (std::abs(p.phi - pm.value) <= boundary_flux_tol) {
            out.boundary_case = true;
            if (pm.attained) {
                // limiting composition: the inflow arcs vanish below pi/2,
                // the outflow humps above
                const FlowType lim = t.m_minus == 0
                                         ? t
                                         : (p.alpha / m < detail::half_pi ? FlowType{m, 0}
                                                                          : FlowType{0, 1});
                out.solutions.push_back(detail::make_solution(*pm.argmax, lim, p.alpha, p.phi));
            }
            return done(out);
        }
        if (t.m_minus == 0 || p.phi > pm.value) return done(out);
        out.solutions.push_back(solve_type_mm(p.alpha, p.phi, m));
        return done(out);
    }

    if (t.m_minus == t.m_plus + 1) {
        // alternating family: single-branch level curve from the start edge
        const auto scan = detail::scan_level_curve(t, p.alpha);
        const auto pm = detail::assemble_phi_max(scan);
        if (p.phi > pm.value + boundary_flux_tol) return done(out);
        if (std::abs(p.phi - pm.value) <= boundary_flux_tol) {
            out.boundary_case = true;
            if (pm.argmax) {
                // an interior argmax is a profile of the type itself; the
                // curve-start limit has its inflow arcs pinched off
                const FlowType lim = pm.argmax->real().e2 < 0.0 ? t : FlowType{t.m_plus, 0};
                out.solutions.push_back(detail::make_solution(*pm.argmax, lim, p.alpha, p.phi));
            }
            return done(out);
        }
        const double target = 0.5 * p.phi;
        auto hf = [&](double x) {
            const auto r = solve_e2_on_level(x, p.alpha, t);
            if (r.empty()) return scan.start_half_flux;  // pinched sliver at the curve start
            return half_flux_of(make_real_triple(x, r.front()), t);
        };
        auto push_at = [&](double x) {
            const auto r = solve_e2_on_level(x, p.alpha, t);
            if (r.empty()) return;
            detail::push_if_valid(
                out.solutions,
                detail::make_solution(make_real_triple(x, r.front()), t, p.alpha, p.phi), p.phi);
        };
        // between the curve start and the flux peak; above pi/2 (m == 1)
        // this near branch is not established and is not reported
        if (!(t.m_plus == 1 && p.alpha > detail::half_pi) && scan.peak_e1 > scan.start_e1) {
            const double a = scan.start_e1 > 0.0 ? scan.start_e1 * (1.0 + 1e-12) : 1e-9;
            if (const auto r = detail::flux_crossing(hf, a, scan.peak_e1, target)) push_at(*r);
        }
        // beyond the peak the flux falls without bound
        if (scan.peak_half_flux > target) {
            double hi = std::max(2.0 * scan.peak_e1, scan.peak_e1 + 1.0);
            int guard = 0;
            while (hf(hi) >= target) {
                hi *= 2.0;
                if (++guard > 60) throw quadrature_error("classify: flux did not fall to the target");
            }
            if (const auto r = detail::flux_crossing(hf, scan.peak_e1, hi, target)) push_at(*r);
        }
        return done(out);
    }

    // surplus family (m+1, m): two branches joined at the fold
    if (t.m_plus == 2 && t.m_minus == 1 && p.alpha > alpha_star_21())
        throw unsupported_region_error("classify: type (2,1) beyond the supported half-angle threshold");
    const auto scan = detail::scan_level_curve(t, p.alpha);
    const auto pm = detail::assemble_phi_max(scan);
    if (p.phi > pm.value + boundary_flux_tol) return done(out);
    if (std::abs(p.phi - pm.value) <= boundary_flux_tol) {
        out.boundary_case = true;
        if (pm.argmax) {
            const FlowType lim = pm.argmax->real().e2 < 0.0 ? t : FlowType{t.m_plus, 0};
            out.solutions.push_back(detail::make_solution(*pm.argmax, lim, p.alpha, p.phi));
        }
        return done(out);
    }
    const double target = 0.5 * p.phi;
    const double fold = detail::fold_e1(t, p.alpha);
    auto branch_hf = [&](bool upper) {
        return [&, upper](double x) {
            const auto r = solve_e2_on_level(x, p.alpha, t);
            if (upper) {
                // a collapsed section means the near-edge root has pinched
                // onto e2 = 0: the branch flux tends to the start limit
                if (r.size() < 2) return scan.start_half_flux;
                return half_flux_of(make_real_triple(x, r.back()), t);
            }
            if (r.empty()) throw divergence_error("classify: level lost on the lower branch");
            return half_flux_of(make_real_triple(x, r.front()), t);
        };
    };
    auto push_branch = [&](double x, bool upper) {
        const auto r = solve_e2_on_level(x, p.alpha, t);
        if (r.size() < (upper ? 2u : 1u)) return;
        detail::push_if_valid(
            out.solutions,
            detail::make_solution(make_real_triple(x, upper ? r.back() : r.front()), t, p.alpha,
                                  p.phi),
            p.phi);
    };
    // upper branch: sampled from the fold tangency to the start edge, using
    // the e2 -> 0 flux limit at the edge itself
    {
        auto hf = branch_hf(true);
        const int n = 16;
        std::vector<std::pair<double, double>> ss;
        for (int k = 0; k <= n; ++k) {
            const double x = fold + (scan.start_e1 - fold) * k / n;
            if (k == n) {
                ss.emplace_back(scan.start_e1, scan.start_half_flux);
                break;
            }
            try {
                ss.emplace_back(x, hf(x));
            } catch (const std::exception&) {
            }
        }
        for (std::size_t i = 0; i + 1 < ss.size(); ++i) {
            if ((ss[i].second - target > 0.0) == (ss[i + 1].second - target > 0.0)) continue;
            if (const auto r = detail::flux_crossing(hf, ss[i].first, ss[i + 1].first, target))
                push_branch(*r, true);
        }
    }
    // lower branch: from the fold through the start abscissa, then the
    // geometric sweep, then doubling until the flux falls past the target
    {
        auto hf = branch_hf(false);
        std::vector<std::pair<double, double>> ss;
        const int n = 16;
        for (int k = 0; k <= n; ++k) {
            const double x = fold + (scan.start_e1 - fold) * k / n;
            try {
                ss.emplace_back(x, hf(x));
            } catch (const std::exception&) {
            }
        }
        for (const auto& g : scan.grid) ss.emplace_back(g.e1, g.half_flux);
        if (!ss.empty() && ss.back().second > target) {
            double hi = 2.0 * ss.back().first;
            int guard = 0;
            for (;; hi *= 2.0) {
                const double v = hf(hi);
                ss.emplace_back(hi, v);
                if (v < target) break;
                if (++guard > 60) throw quadrature_error("classify: flux did not fall to the target");
            }
        }
        for (std::size_t i = 0; i + 1 < ss.size(); ++i) {
            if ((ss[i].second - target > 0.0) == (ss[i + 1].second - target > 0.0)) continue;
            if (const auto r = detail::flux_crossing(hf, ss[i].first, ss[i + 1].first, target))
                push_branch(*r, false);
        }
    }
    return done(out);
}

// Trace the surplus-type level curve from its start edge (e1_star(alpha /
// (m+1)), 0) over the fold and back out toward e1_max, with one subdivision
// pass where the flux jumps.
inline std::vector<CurvePoint> trace_level_curve(const FlowType& t, double alpha, double e1_max) {
    require_valid(t);
    if (!(t.m_plus == t.m_minus + 1 && t.m_minus >= 1))
        throw std::invalid_argument("trace_level_curve: type must be (m+1, m)");
    if (!(alpha > 0.0 && alpha < std::numbers::pi))
        throw std::domain_error("trace_level_curve: half-angle must lie in (0, pi)");
    if (t.m_plus == 2 && t.m_minus == 1 && alpha > alpha_star_21())
        throw unsupported_region_error(
            "trace_level_curve: type (2,1) beyond the supported half-angle threshold");
    const double start = e1_star(alpha / t.m_plus);
    if (!(e1_max > start))
        throw std::domain_error("trace_level_curve: e1_max must exceed the curve start");
    const double fold = detail::fold_e1(t, alpha);

    auto at = [&](double x, bool upper) -> std::optional<CurvePoint> {
        const auto r = solve_e2_on_level(x, alpha, t);
        if (r.empty()) return std::nullopt;
        const double e2 = upper ? r.back() : r.front();
        return CurvePoint{x, e2, half_flux_of(make_real_triple(x, e2), t)};
    };
    const auto refine = [&](std::vector<CurvePoint>& v, bool upper) {
        if (v.size() < 2) return;
        double lo = v.front().half_flux, hi = lo;
        for (const auto& c : v) {
            lo = std::min(lo, c.half_flux);
            hi = std::max(hi, c.half_flux);
        }
        const double jump = (hi - lo) / 40.0 + 1e-12;
        std::vector<CurvePoint> r;
        r.reserve(2 * v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            r.push_back(v[i]);
            if (i + 1 == v.size()) break;
            if (std::abs(v[i + 1].half_flux - v[i].half_flux) <= jump) continue;
            if (std::abs(v[i + 1].e1 - v[i].e1) <= 1e-9 * std::max(1.0, std::abs(v[i].e1))) continue;
            if (const auto cp = at(0.5 * (v[i].e1 + v[i + 1].e1), upper)) r.push_back(*cp);
        }
        v = std::move(r);
    };

    std::vector<CurvePoint> up;
    up.push_back({start, 0.0, t.m_plus * flux_pos(make_real_triple(start, 0.0))});
    const int n_up = 40;
    for (int k = 1; k <= n_up; ++k) {
        const double x = start + (fold - start) * k / n_up;
        if (const auto cp = at(x, true)) up.push_back(*cp);
    }
    std::vector<CurvePoint> low;
    const int n_lo = 24;
    for (int k = 1; k <= n_lo; ++k) {
        const double x = fold + (start - fold) * k / n_lo;
        if (const auto cp = at(x, false)) low.push_back(*cp);
    }
    for (double x = start * 1.08; x < e1_max; x *= 1.08)
        if (const auto cp = at(x, false)) low.push_back(*cp);
    if (const auto cp = at(e1_max, false)) low.push_back(*cp);

    refine(up, true);
    refine(low, false);
    up.insert(up.end(), low.begin(), low.end());
    return up;
}

// Leading-order description of half-plane flow driven by flux phi through
// the origin: two quarter-plane far fields at half-angle pi/2, the upstream
// one a single inflow arc carrying -|phi| and the downstream one the small
// alternating profile carrying +|phi|.  Both obey max |f| <= 6 |phi|.
inline HalfPlaneFlow half_plane_leading_order(double phi) {
    if (!(std::isfinite(phi) && phi != 0.0 && std::abs(phi) < 1.0 / 36.0))
        throw std::domain_error("half_plane_leading_order: requires 0 < |phi| < 1/36");
    const double a = std::abs(phi);
    const FlowType inflow{0, 1};
    const FlowType alternating{1, 2};
    const auto ein = classify({detail::half_pi, -a, inflow});
    const auto ealt = classify({detail::half_pi, a, alternating});
    if (!ein.exists || !ealt.exists)
        throw std::runtime_error("half_plane_leading_order: far-field profiles unavailable");
    const Solution* small = &ealt.solutions.front();
    for (const auto& s : ealt.solutions)
        if (s.roots.e1() < small->roots.e1()) small = &s;
    const auto amplitude = [](const Solution& s) {
        const auto& r = s.roots.real();
        return std::max(r.e1, -r.e2);
    };
    if (amplitude(*small) > 6.0 * a * (1.0 + 1e-3) ||
        amplitude(ein.solutions.front()) > 6.0 * a * (1.0 + 1e-3))
        throw std::runtime_error("half_plane_leading_order: amplitude bound violated");
    if (phi > 0.0) return {inflow, alternating, ein.solutions.front(), *small};
    return {alternating, inflow, *small, ein.solutions.front()};
}

}  // namespace sectorflow
