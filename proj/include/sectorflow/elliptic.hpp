#pragma once

// Complete elliptic integrals in the modulus convention
//
//   K(g) = int_0^1 dt / sqrt((1 - t^2)(1 - g^2 t^2)),
//   E(g) = int_0^1 sqrt(1 - g^2 t^2) / sqrt(1 - t^2) dt,      0 <= g < 1,
//
// evaluated together by the arithmetic-geometric mean; the number of correct
// digits doubles on each iteration.  Also provided:
//
//   dK/dg = E / (g (1 - g^2)) - K / g            (series branch near g = 0)
//   H(g)  = ((g^2 - 2) K(g) + 3 E(g)) K(g)
//
// H is strictly decreasing on [0,1) from pi^2/4 to -infinity and is the
// scalar map the periodic-flow solver inverts: a period with angle b and
// flux phi satisfies b^2 + b phi / 4 = H(modulus of its root triple).

#include <cmath>
#include <limits>
#include <stdexcept>

#include "errors.hpp"

namespace sectorflow {

// Moduli this close to 1 correspond to a root collision (e2 -> e3): the
// period integrals blow up logarithmically, so the strong type refuses them.
inline constexpr double modulus_degenerate_cutoff = 1.0 - 1e-10;

// Elliptic modulus restricted to [0, 1 - 1e-10).  Constructing one is the
// domain check; everything downstream can assume validity.
class Modulus {
public:
    explicit Modulus(double gamma) : value_(gamma) {
        if (!(gamma >= 0.0 && gamma < modulus_degenerate_cutoff))
            throw std::domain_error("Modulus: gamma must lie in [0, 1 - 1e-10)");
    }
    double value() const noexcept { return value_; }

private:
    double value_;
};

namespace detail {

struct KEPair {
    double K;
    double E;
};

// AGM with the classical c_n bookkeeping: a_0 = 1, b_0 = sqrt(1 - g^2),
// c_0 = g; K = pi / (2 a_N) and E = K (1 - sum 2^{n-1} c_n^2).
inline KEPair agm_ke(double gamma) {
    constexpr double pi = 3.141592653589793238462643383279502884;
    double a = 1.0;
    double b = std::sqrt((1.0 - gamma) * (1.0 + gamma));
    double c = gamma;
    double sum = 0.5 * c * c;
    double pow2 = 0.5;  // 2^{n-1}
    for (int n = 0; n < 60 && std::abs(a - b) > std::numeric_limits<double>::epsilon() * a;
         ++n) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        c = 0.5 * (a - b);
        a = an;
        b = bn;
        pow2 *= 2.0;
        sum += pow2 * c * c;
    }
    const double k = pi / (2.0 * a);
    return {k, k * (1.0 - sum)};
}

}  // namespace detail

inline double ellip_K(const Modulus& m) { return detail::agm_ke(m.value()).K; }

inline double ellip_K(double gamma) { return ellip_K(Modulus(gamma)); }

// E extends continuously to the circular limit: E(1) = 1.  K does not, so
// only E accepts the closed interval through this raw-double overload.
inline double ellip_E(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::domain_error("ellip_E: gamma must lie in [0, 1]");
    if (gamma == 1.0) return 1.0;
    return detail::agm_ke(gamma).E;
}

inline double ellip_E(const Modulus& m) { return detail::agm_ke(m.value()).E; }

// dK/dgamma.  The closed form has a removable 0/0 at gamma = 0; below 1e-8
// the quadratic series K ~ (pi/2)(1 + g^2/4) takes over, giving (pi/4) g -> 0.
inline double dK_dgamma(double gamma) {
    constexpr double pi = 3.141592653589793238462643383279502884;
    if (!(gamma >= 0.0 && gamma < modulus_degenerate_cutoff))
        throw std::domain_error("dK_dgamma: gamma must lie in [0, 1 - 1e-10)");
    if (gamma <= 1e-8) return 0.25 * pi * gamma;
    const auto ke = detail::agm_ke(gamma);
    const double one_minus_g2 = (1.0 - gamma) * (1.0 + gamma);
    return ke.E / (gamma * one_minus_g2) - ke.K / gamma;
}

// H(g) = ((g^2 - 2) K + 3 E) K: strictly decreasing from H(0) = pi^2/4,
// unbounded below as g -> 1.
inline double ellip_H(double gamma) {
    const Modulus m(gamma);  // domain check
    const auto ke = detail::agm_ke(m.value());
    return ((gamma * gamma - 2.0) * ke.K + 3.0 * ke.E) * ke.K;
}

inline double ellip_H(const Modulus& m) { return ellip_H(m.value()); }

}  // namespace sectorflow
