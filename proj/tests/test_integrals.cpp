#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "oracle_constants.hpp"
#include "sectorflow/cubic.hpp"
#include "sectorflow/integrals.hpp"
#include "sectorflow/quadrature.hpp"

using namespace sectorflow;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using std::numbers::pi;

namespace {

// Independent full-period oracle: integrate over f = e2 + (e1 - e2) g
// directly, square-root singular at both ends.  Exercises none of the
// library's closed forms or arc splittings.
double period_angle_by_quadrature(double e1, double e2) {
    const double e3 = -6.0 - e1 - e2;
    const double gap = e2 - e3;
    const double w = e1 - e2;
    return quad_singular(
        [&](double g, double d_lo, double d_hi) {
            (void)g;
            return 1.0 / std::sqrt(2.0 / 3.0 * d_hi * d_lo * (gap + w * d_lo));
        },
        0.0, 1.0, SingularEnds::both);
}

double period_flux_by_quadrature(double e1, double e2) {
    const double e3 = -6.0 - e1 - e2;
    const double gap = e2 - e3;
    const double w = e1 - e2;
    return quad_singular(
        [&](double g, double d_lo, double d_hi) {
            return (e2 + w * g) / std::sqrt(2.0 / 3.0 * d_hi * d_lo * (gap + w * d_lo));
        },
        0.0, 1.0, SingularEnds::both);
}

}  // namespace

TEST_CASE("arc integrals hit frozen reference values") {
    const RootTriple a = make_real_triple(1.0, 0.0);
    CHECK_THAT(angle_pos(a), WithinRel(oracle::I_plus_1_0, 1e-11));
    CHECK_THAT(flux_pos(a), WithinRel(oracle::J_plus_1_0, 1e-11));
    CHECK_THAT(angle_period(a), WithinRel(oracle::I_plus_1_0, 1e-13));  // e2 = 0: same arc

    const RootTriple b = make_real_triple(1.0, -0.5);
    CHECK_THAT(angle_pos(b), WithinRel(oracle::I_plus_1_m05, 1e-11));
    CHECK_THAT(flux_pos(b), WithinRel(oracle::J_plus_1_m05, 1e-11));
    CHECK_THAT(angle_neg(b), WithinRel(oracle::I_minus_1_m05, 1e-11));
    CHECK_THAT(flux_neg(b), WithinRel(oracle::J_minus_1_m05, 1e-11));

    CHECK_THAT(angle_pos(make_real_triple(1.0 / 6.0, 0.0)),
               WithinRel(oracle::I_plus_sixth, 1e-11));
}

TEST_CASE("closed-form period integrals match direct quadrature") {
    const double cases[][2] = {{1.0, -0.5}, {3.0, -1.0}, {0.2, -2.0}, {2.0, -3.9}};
    for (auto [e1, e2] : cases) {
        CAPTURE(e1, e2);
        const RootTriple rt = make_real_triple(e1, e2);
        CHECK_THAT(angle_period(rt),
                   WithinRel(period_angle_by_quadrature(e1, e2), 1e-10));
        const double j = period_flux_by_quadrature(e1, e2);
        CHECK_THAT(flux_period(rt), WithinRel(j, 1e-9) || WithinAbs(j, 1e-11));
    }
}

TEST_CASE("arc additivity: half arcs compose to the full period") {
    const double cases[][2] = {{1.0, -0.5}, {2.0, -1.0}, {0.3, -2.0}, {10.0, -3.0}, {5.0, -0.25}};
    for (auto [e1, e2] : cases) {
        CAPTURE(e1, e2);
        const RootTriple rt = make_real_triple(e1, e2);
        const ArcIntegrals ai = compute_arc_integrals(rt);
        CHECK_THAT(ai.i_plus + ai.i_minus, WithinRel(ai.i_full, 1e-10));
        CHECK_THAT(ai.j_plus + ai.j_minus,
                   WithinRel(ai.j_full, 1e-9) || WithinAbs(ai.j_full, 1e-11));
        CHECK(ai.i_plus > 0.0);
        CHECK(ai.i_minus > 0.0);
        CHECK(ai.j_plus > 0.0);
        CHECK(ai.j_minus < 0.0);
    }
}

TEST_CASE("period angle and flux satisfy the elliptic energy relation") {
    // I^2 + I J / 2 = ((g^2 - 2) K + 3 E) K  at modulus g of the triple
    const double cases[][2] = {{1.0, -0.5}, {2.0, -1.0}, {0.3, -2.0}, {5.0, -3.0}};
    for (auto [e1, e2] : cases) {
        CAPTURE(e1, e2);
        const RootTriple rt = make_real_triple(e1, e2);
        const double I = angle_period(rt);
        const double J = flux_period(rt);
        CHECK_THAT(I * I + 0.5 * I * J, WithinRel(ellip_H(modulus(rt).value()), 1e-9));
    }
}

TEST_CASE("small-top limits: angle approaches pi/2 with slope -pi/16") {
    // I+(e1, 0) = pi/2 - (pi/16) e1 + O(e1^2) and J+(e1, 0) = (pi/4) e1 + O(e1^2)
    for (double e1 : {1e-8, 1e-7}) {
        CAPTURE(e1);
        CHECK_THAT(angle_pos(make_real_triple(e1, 0.0)),
                   WithinAbs(pi / 2.0 - pi / 16.0 * e1, 1e-10));
        CHECK_THAT(flux_pos(make_real_triple(e1, 0.0)) / e1, WithinRel(pi / 4.0, 1e-6));
    }
}

TEST_CASE("outflow angle dominates its algebraic lower bound") {
    for (double e1 : {1.0 / 6.0, 1.0, 5.0, 20.0}) {
        CAPTURE(e1);
        CHECK(angle_pos(make_real_triple(e1, 0.0)) > 3.0 * pi / std::sqrt(36.0 + 12.0 * e1));
    }
}

TEST_CASE("large-top asymptotics of the outflow arc") {
    const double e1 = 1e6;
    const RootTriple rt = make_real_triple(e1, 0.0);
    CHECK_THAT(std::sqrt(e1) * angle_pos(rt), WithinRel(oracle::angle_asymptote, 1e-3));
    CHECK_THAT(flux_pos(rt) / std::sqrt(e1), WithinRel(oracle::flux_asymptote, 1e-3));
    // the two asymptote constants multiply to 3 pi / 2
    CHECK_THAT(2.0 * oracle::angle_asymptote * oracle::flux_asymptote,
               WithinRel(3.0 * pi, 1e-13));
}

TEST_CASE("monotonicity of the arc maps") {
    SECTION("angle decreasing, flux increasing in e1 along e2 = 0") {
        double prev_i = 1e300, prev_j = -1.0;
        for (double e1 : {1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
            const RootTriple rt = make_real_triple(e1, 0.0);
            const double i = angle_pos(rt), j = flux_pos(rt);
            CHECK(i < prev_i);
            CHECK(j > prev_j);
            prev_i = i;
            prev_j = j;
        }
    }
    SECTION("outflow angle increasing in e2 at fixed e1") {
        double prev = -1.0;
        for (double e2 : {-3.4, -2.5, -1.5, -0.7, -0.2, 0.0}) {
            const double i = angle_pos(make_real_triple(1.0, e2));
            CHECK(i > prev);
            prev = i;
        }
    }
    SECTION("outflow angle decreasing in the pair offset c") {
        double prev = 1e300;
        for (double c : {0.05, 0.3, 1.0, 3.0, 10.0}) {
            const double i = angle_pos(make_complex_pair(1.0, c));
            CHECK(i < prev);
            prev = i;
        }
    }
    SECTION("period angle decreasing in e2 at fixed e1") {
        double prev = 1e300;
        for (double e2 : {-3.4, -2.5, -1.5, -0.5, -0.05}) {
            const double i = angle_period(make_real_triple(1.0, e2));
            CHECK(i < prev);
            prev = i;
        }
    }
    SECTION("inflow angle decreasing in e1 at fixed e2") {
        double prev = 1e300;
        for (double e1 : {0.0, 0.5, 1.0, 2.0, 5.0}) {
            const double i = angle_neg(make_real_triple(e1, -1.0));
            CHECK(i < prev);
            prev = i;
        }
    }
}

TEST_CASE("real/complex representations agree across the collapse seam") {
    // c -> 0 pair tends to the double-root triple; range [0, e1] is clear of
    // the collapsing roots, so both angle and flux vary only at O(c^2).
    const RootTriple real_dbl = make_real_triple(1.0, -3.5);
    const RootTriple near = make_complex_pair(1.0, 1e-6);
    CHECK_THAT(angle_pos(near), WithinRel(angle_pos(real_dbl), 1e-12));
    CHECK_THAT(flux_pos(near), WithinRel(flux_pos(real_dbl), 1e-12));
}

TEST_CASE("collapsed root gap makes inflow and period integrals diverge") {
    const RootTriple dbl = make_real_triple(1.0, -3.5);  // e2 == e3 == -3.5
    CHECK_THROWS_AS(angle_neg(dbl), divergence_error);
    CHECK_THROWS_AS(flux_neg(dbl), divergence_error);
    CHECK_THROWS_AS(angle_period(dbl), divergence_error);
    CHECK_THROWS_AS(flux_period(dbl), divergence_error);
    // the outflow arc does not reach the double root and stays finite
    CHECK(angle_pos(dbl) > 0.0);
    CHECK(angle_pos(dbl) < pi / 2.0);
}

TEST_CASE("domain guards of the arc integrals") {
    CHECK_THROWS_AS(angle_pos(make_real_triple(0.0, -1.0)), std::domain_error);
    CHECK_THROWS_AS(flux_pos(make_real_triple(-0.5, -1.0)), std::domain_error);
    CHECK_THROWS_AS(angle_neg(make_real_triple(1.0, 0.0)), std::domain_error);   // no inflow arc
    CHECK_THROWS_AS(angle_neg(make_complex_pair(1.0, 2.0)), std::domain_error);
    CHECK_THROWS_AS(flux_neg(make_complex_pair(1.0, 2.0)), std::domain_error);
    CHECK_THROWS_AS(angle_period(make_complex_pair(1.0, 2.0)), std::domain_error);
    CHECK_THROWS_AS(angle_period(make_real_triple(4.0, 0.5)), std::domain_error);  // e2 > 0
}

TEST_CASE("type dispatch composes the correct arc combinations") {
    const RootTriple rt = make_real_triple(1.0, -0.5);
    const double ip = angle_pos(rt), im = angle_neg(rt), iF = angle_period(rt);
    const double jp = flux_pos(rt), jm = flux_neg(rt), jF = flux_period(rt);

    CHECK(angle_of(rt, {1, 0}) == ip);
    CHECK(angle_of(rt, {0, 1}) == im);
    CHECK(angle_of(rt, {1, 1}) == iF);
    CHECK(angle_of(rt, {3, 3}) == 3.0 * iF);
    CHECK_THAT(angle_of(rt, {1, 2}), WithinRel(ip + 2.0 * im, 1e-10));
    CHECK_THAT(angle_of(rt, {2, 1}), WithinRel(2.0 * ip + im, 1e-10));
    CHECK_THAT(angle_of(rt, {2, 3}), WithinRel(2.0 * ip + 3.0 * im, 1e-10));
    CHECK_THAT(angle_of(rt, {3, 2}), WithinRel(3.0 * ip + 2.0 * im, 1e-10));

    CHECK(half_flux_of(rt, {1, 0}) == jp);
    CHECK(half_flux_of(rt, {0, 1}) == jm);
    CHECK(half_flux_of(rt, {2, 2}) == 2.0 * jF);
    CHECK_THAT(half_flux_of(rt, {1, 2}), WithinRel(jp + 2.0 * jm, 1e-9));
    CHECK_THAT(half_flux_of(rt, {2, 1}), WithinRel(2.0 * jp + jm, 1e-9));

    // (m, m+1) composition stays evaluable when the inflow arcs pinch off
    const RootTriple pinch = make_real_triple(1.0, 0.0);
    CHECK_THAT(angle_of(pinch, {1, 2}), WithinRel(oracle::I_plus_1_0, 1e-11));
    CHECK_THAT(angle_of(pinch, {2, 3}), WithinRel(2.0 * oracle::I_plus_1_0, 1e-11));

    // limiting family needs e2 == 0 exactly
    CHECK_THAT(angle_of(pinch, {2, 0}), WithinRel(2.0 * angle_pos(pinch), 1e-14));
    CHECK_THAT(half_flux_of(pinch, {3, 0}), WithinRel(3.0 * flux_pos(pinch), 1e-14));
    CHECK_THROWS_AS(angle_of(rt, {2, 0}), std::domain_error);

    // admissibility is enforced before integrating
    const RootTriple cp = make_complex_pair(1.0, 2.0);
    CHECK(angle_of(cp, {1, 0}) > 0.0);
    CHECK_THROWS_AS(angle_of(cp, {1, 1}), std::domain_error);
    CHECK_THROWS_AS(angle_of(make_real_triple(0.0, -1.0), {1, 0}), std::domain_error);
    CHECK_THROWS_AS(angle_of(rt, {0, 2}), std::invalid_argument);
}

TEST_CASE("first-order behavior at the reference triple (1, 0, -7)") {
    const auto Ip = [](double e1, double e2) { return angle_pos(make_real_triple(e1, e2)); };
    const auto Jp = [](double e1, double e2) { return flux_pos(make_real_triple(e1, e2)); };
    const auto If = [](double e1, double e2) { return angle_period(make_real_triple(e1, e2)); };

    SECTION("d/de1 of angle and flux along e2 = 0, central differences") {
        const double h = 1e-5;
        CHECK_THAT((Ip(1.0 + h, 0.0) - Ip(1.0 - h, 0.0)) / (2.0 * h),
                   WithinRel(oracle::C2_dIplus_de1, 1e-5));
        CHECK_THAT((Jp(1.0 + h, 0.0) - Jp(1.0 - h, 0.0)) / (2.0 * h),
                   WithinRel(oracle::C5_dJplus_de1, 1e-5));
    }
    SECTION("d/de2 of the period angle, one-sided with Richardson step halving") {
        const double h = 1e-5;
        const double s1 = (If(1.0, -h) - If(1.0, 0.0)) / (-h);
        const double s2 = (If(1.0, -h / 2.0) - If(1.0, 0.0)) / (-h / 2.0);
        CHECK_THAT(2.0 * s2 - s1, WithinRel(oracle::C1_dIfull_de2, 1e-6));
    }
    SECTION("d/de2 of the outflow flux, Richardson in sqrt(h)") {
        // J+(1, -h) = J+(1, 0) - C4 h + D h^{3/2} + ...; step ratio 4 halves
        // the sqrt term after the divided difference, so 2 s(h/4) - s(h)
        // cancels it.
        const double h = 1e-6;
        const double s1 = (Jp(1.0, -h) - Jp(1.0, 0.0)) / (-h);
        const double s4 = (Jp(1.0, -h / 4.0) - Jp(1.0, 0.0)) / (-h / 4.0);
        CHECK_THAT(2.0 * s4 - s1, WithinRel(oracle::C4_dJplus_de2, 1e-4));
    }
    SECTION("square-root cusp of the outflow angle in e2") {
        const double h = 1e-8;
        CHECK_THAT((Ip(1.0, -h) - Ip(1.0, 0.0)) / std::sqrt(h),
                   WithinRel(-oracle::C3_cusp, 5e-5));
    }
    SECTION("frozen cusp ratio is consistent") {
        CHECK_THAT(-oracle::C2_dIplus_de1 / oracle::C3_cusp,
                   WithinRel(oracle::C0_cusp_ratio, 1e-14));
    }
}

TEST_CASE("mixed-type total angle is unimodal in e2 at fixed e1") {
    // At fixed e1 the (2,1) angle blows up as e2 falls to the double-root
    // edge and rises again as the inflow arc pinches off at e2 -> 0: a
    // single interior minimum (the basis for the two-branch solve).
    const double e1 = 4.0;
    const std::vector<double> grid = {-4.95, -4.5, -4.0, -3.5, -3.0, -2.5, -2.0,
                                      -1.5,  -1.0, -0.6, -0.3, -0.1, -0.03, -0.01};
    std::vector<double> vals;
    for (double e2 : grid)
        vals.push_back(angle_of(make_real_triple(e1, e2), {2, 1}));
    const auto min_it = std::min_element(vals.begin(), vals.end());
    const auto k = static_cast<std::size_t>(min_it - vals.begin());
    REQUIRE(k > 0);
    REQUIRE(k + 1 < vals.size());
    for (std::size_t i = 0; i < k; ++i) CHECK(vals[i] > vals[i + 1]);
    for (std::size_t i = k; i + 1 < vals.size(); ++i) CHECK(vals[i] < vals[i + 1]);

    // positive curvature at an interior point
    const double h = 1e-3, mid = -1.5;
    const auto T = [e1](double e2) { return angle_of(make_real_triple(e1, e2), {2, 1}); };
    CHECK((T(mid + h) - 2.0 * T(mid) + T(mid - h)) / (h * h) > 0.0);
}
