#pragma once

// Reference values frozen from an independent high-precision computation
// (mpmath, 50 significant digits; generator script kept with the build
// notes).  Everything here was produced without touching the C++ code under
// test: elliptic values via mpmath's ellipk/ellipe (parameter convention
// m = gamma^2 converted to the modulus convention used by the library),
// arc integrals via adaptive quadrature of the defining integrals, root
// solves via mpmath findroot.  Tests compare library output against these.

namespace oracle {

// --- complete elliptic integrals, modulus convention -----------------------
inline constexpr double K_sqrt_eighth = 1.6236666926210273235;  // K(sqrt(1/8))
inline constexpr double K_half = 1.6857503548125960429;
inline constexpr double E_half = 1.4674622093394271555;
inline constexpr double K_09 = 2.2805491384227702046;
inline constexpr double E_09 = 1.1716970527816141412;

// --- gamma function values and the asymptotic-slope constants --------------
inline constexpr double gamma_3_4 = 1.2254167024651776451;
inline constexpr double gamma_5_4 = 0.90640247705547707798;
inline constexpr double gamma_7_4 = 0.91906252684888323385;
// lim sqrt(e1) * I+(e1, 0) = sqrt(6 pi) G(5/4) / G(3/4)
inline constexpr double angle_asymptote = 3.2113515421128467980;
// lim J+(e1, 0) / sqrt(e1) = sqrt(2 pi / 3) G(7/4) / G(5/4)
inline constexpr double flux_asymptote = 1.4674161077003311924;

// --- arc integrals at reference root triples -------------------------------
// I+ = int_0^{e1} df / sqrt(Q),  J+ = int_0^{e1} f df / sqrt(Q),
// I- = int_{e2}^0 df / sqrt(Q),  J- = int_{e2}^0 f df / sqrt(Q),
// with Q(f) = -(2/3)(f - e1)(f - e2)(f - e3), e3 = -6 - e1 - e2.
inline constexpr double I_plus_1_0 = 1.4061366030884692172;    // roots (1, 0, -7)
inline constexpr double J_plus_1_0 = 0.69133581389584163290;
inline constexpr double I_plus_1_m05 = 0.87760832401633091009;  // roots (1,-0.5,-6.5)
inline constexpr double J_plus_1_m05 = 0.53806139546211395183;
inline constexpr double I_minus_1_m05 = 0.60680414940605554282;
inline constexpr double J_minus_1_m05 = -0.19799164035959876076;

// --- pure-outflow critical root and maximum flux ----------------------------
// e1*(a) solves I+(e1, 0) = a;  max flux = 2 J+(e1*, 0).
inline constexpr double e1_star_alpha_1 = 6.0220164844873711736;
inline constexpr double phi_max_outflow_alpha_1 = 5.7169964338712183255;
inline constexpr double e1_star_alpha_05 = 36.900570442112151009;
inline constexpr double phi_max_outflow_alpha_05 = 17.026004166346882981;

// --- periodic-family boundary at alpha = 2 (> pi/2) ------------------------
// gamma* solves (g^2 + 1) K(g)^2 = alpha^2;
// e2* = -2 - (2/alpha^2)(2 g*^2 - 1) K(g*)^2;
// max flux = 2 * (full-period flux integral) at roots (0, e2*, -6 - e2*).
inline constexpr double gamma_star_alpha_2 = 0.57607298231963957105;
inline constexpr double e2_star_alpha_2 = -1.4950222731494954132;
inline constexpr double phi_max_period_alpha_2 = -3.1404463087697261198;

// --- first-order behavior of the angle/flux maps at roots (1, 0, -7) -------
// Chart is (e1, e2) with e3 = -6 - e1 - e2 dependent.  Along e2 = 0 the maps
// are smooth in e1; in e2 the angle map has a square-root cusp at e2 = 0
// while the flux map stays differentiable:
//   I+(1, e2) = I+(1, 0) - C3 sqrt(-e2) + O(e2),          C3 = sqrt(6/7)
//   J+(1, e2) = J+(1, 0) + C4 e2 + O(|e2|^{3/2})
//   d/de1 I+(e1, 0)|_1 = C2,   d/de1 J+(e1, 0)|_1 = C5,
//   d/de2 I (1, e2)|_0 = C1    (full-period angle; one-sided, e2 <= 0).
// C0 = -C2/C3: along the level curve I+ = const through (1, 0) the root e2
// drops quadratically, sqrt(-e2) ~ C0 (e1* - e1).
inline constexpr double C1_dIfull_de2 = -0.14343730845251660015;
inline constexpr double C2_dIplus_de1 = -0.13873122821306713611;
inline constexpr double C3_cusp = 0.92582009977255146157;
inline constexpr double C4_dJplus_de2 = 0.65839325221969538460;
inline constexpr double C5_dJplus_de1 = 0.61371820289515616057;
inline constexpr double C0_cusp_ratio = 0.14984685280342215919;

// --- misc pins --------------------------------------------------------------
inline constexpr double I_plus_sixth = 1.5391111031757468628;  // I+(1/6, 0)

// narrow-sector scale of the critical outflow abscissa:
// e1*(a) ~ c^2 / a^2 with c = int_0^1 dg / sqrt((2/3) g (1 - g^2)).
inline constexpr double e1_star_narrow_scale = 10.312778727030559052;

}  // namespace oracle
