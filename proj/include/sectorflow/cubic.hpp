#pragma once

// Root triples of the first-integral cubic.
//
// A radial self-similar profile f satisfies (f')^2 = Q(f) with
//
//   Q(f) = -(2/3) (f - e1)(f - e2)(f - e3),      e1 + e2 + e3 = -6,
//
// so a solution is described by the cubic's root configuration.  Either all
// three roots are real (ordered e3 <= e2 <= e1 here) or one real root e1 is
// accompanied by the conjugate pair -3 - e1/2 +- i c.  The trace constraint
// makes two numbers a full description; e3 is always derived, never stored
// independently, so the constraint can never drift.
//
// Expanded, Q(f) = -(2/3) f^3 - 4 f^2 + 2 b f + 2 E0 with
//   b  = -(e1 e2 + e2 e3 + e3 e1) / 3,       E0 = e1 e2 e3 / 3;
// b is the constant in the profile ODE f'' = -f^2 - 4 f + b and enters the
// pressure field, E0 is the first-integral constant.

#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>

#include "elliptic.hpp"
#include "errors.hpp"

namespace sectorflow {

// Flow type (m_plus, m_minus): the number of outflow / inflow arcs of the
// profile.  Valid types have |m_plus - m_minus| <= 1, plus the limiting
// family (m, 0) with m >= 2 whose humps touch zero between arcs.
struct FlowType {
    int m_plus = 0;
    int m_minus = 0;

    bool valid() const noexcept {
        if (m_plus < 0 || m_minus < 0) return false;
        if (m_plus == 0 && m_minus == 0) return false;
        if (m_plus - m_minus <= 1 && m_minus - m_plus <= 1) return true;
        return m_minus == 0 && m_plus >= 2;
    }
    bool pure_outflow() const noexcept { return m_minus == 0 && m_plus == 1; }
    bool pure_inflow() const noexcept { return m_plus == 0 && m_minus == 1; }
    int arcs() const noexcept { return m_plus + m_minus; }
    friend bool operator==(const FlowType&, const FlowType&) = default;
};

inline void require_valid(const FlowType& t) {
    if (!t.valid())
        throw std::invalid_argument("flow type (" + std::to_string(t.m_plus) + "," +
                                    std::to_string(t.m_minus) + ") is not realizable");
}

struct RealRoots {
    double e1, e2, e3;  // e3 == -6 - e1 - e2 by construction
};

struct ComplexPairRoots {
    double e1, c;  // remaining roots -3 - e1/2 +- i c, c > 0
};

class RootTriple {
public:
    bool is_real() const noexcept { return std::holds_alternative<RealRoots>(rep_); }

    const RealRoots& real() const {
        if (!is_real())
            throw std::domain_error("RootTriple: real roots requested from a complex pair");
        return std::get<RealRoots>(rep_);
    }
    const ComplexPairRoots& pair() const {
        if (is_real())
            throw std::domain_error("RootTriple: complex pair requested from real roots");
        return std::get<ComplexPairRoots>(rep_);
    }

    double e1() const noexcept {
        return is_real() ? std::get<RealRoots>(rep_).e1 : std::get<ComplexPairRoots>(rep_).e1;
    }

    friend RootTriple make_real_triple(double e1, double e2);
    friend RootTriple make_complex_pair(double e1, double c);

private:
    explicit RootTriple(RealRoots r) : rep_(r) {}
    explicit RootTriple(ComplexPairRoots r) : rep_(r) {}
    std::variant<RealRoots, ComplexPairRoots> rep_;
};

// Real triple from (e1, e2); e3 = -6 - e1 - e2 must preserve the ordering
// e3 <= e2 <= e1.
inline RootTriple make_real_triple(double e1, double e2) {
    if (!std::isfinite(e1) || !std::isfinite(e2))
        throw std::domain_error("make_real_triple: roots must be finite");
    const double e3 = -6.0 - e1 - e2;
    if (!(e2 <= e1) || !(e3 <= e2))
        throw std::domain_error("make_real_triple: ordering e3 <= e2 <= e1 violated");
    return RootTriple(RealRoots{e1, e2, e3});
}

// Complex-pair triple from (e1, c).  A collapsed pair (c below 1e-12) is
// the same cubic as the real triple with a double root; normalize so that
// downstream code sees exactly one representation of that configuration.
inline RootTriple make_complex_pair(double e1, double c) {
    if (!std::isfinite(e1) || !std::isfinite(c) || c < 0.0)
        throw std::domain_error("make_complex_pair: requires finite e1 and c >= 0");
    if (c < 1e-12) return make_real_triple(e1, -3.0 - 0.5 * e1);
    return RootTriple(ComplexPairRoots{e1, c});
}

struct CubicCoeffs {
    double b;   // ODE constant: f'' = -f^2 - 4 f + b
    double E0;  // first-integral constant
};

inline CubicCoeffs coeffs(const RootTriple& rt) {
    if (rt.is_real()) {
        const auto& r = rt.real();
        return {-(r.e1 * r.e2 + r.e2 * r.e3 + r.e3 * r.e1) / 3.0,
                r.e1 * r.e2 * r.e3 / 3.0};
    }
    const auto& p = rt.pair();
    const double re = -3.0 - 0.5 * p.e1;        // real part of the pair
    const double prod = re * re + p.c * p.c;    // product of the pair
    return {-(p.e1 * (2.0 * re) + prod) / 3.0, p.e1 * prod / 3.0};
}

// Q evaluated in factored form: no cancellation against the expanded
// coefficients, exact zeros at the roots.
inline double eval_Q(const RootTriple& rt, double f) {
    constexpr double c23 = 2.0 / 3.0;
    if (rt.is_real()) {
        const auto& r = rt.real();
        return -c23 * (f - r.e1) * (f - r.e2) * (f - r.e3);
    }
    const auto& p = rt.pair();
    const double s = f + 3.0 + 0.5 * p.e1;
    return -c23 * (f - p.e1) * (s * s + p.c * p.c);
}

// Elliptic modulus of a real triple: gamma = sqrt((e1 - e2)/(e1 - e3)).
// Collapsing gaps (e2 -> e3) push gamma into the degenerate band, which the
// Modulus constructor rejects.
inline Modulus modulus(const RootTriple& rt) {
    const auto& r = rt.real();  // throws for complex pairs
    const double span = r.e1 - r.e3;
    if (!(span > 0.0)) throw std::domain_error("modulus: triple has no spread");
    return Modulus(std::sqrt((r.e1 - r.e2) / span));
}

// Root-configuration admissibility for a flow type.  Pure outflow may use a
// complex pair (the orbit never needs a second turning point); every type
// with an inflow arc or several outflow arcs needs the full real ordering
// with a strict gap e3 < e2.
inline bool admissible(const RootTriple& rt, const FlowType& t) {
    require_valid(t);
    if (t.pure_outflow()) {
        if (!rt.is_real()) return rt.pair().e1 > 0.0;
        const auto& r = rt.real();
        return r.e1 > 0.0 && r.e2 <= 0.0 && r.e3 < 0.0;
    }
    if (!rt.is_real()) return false;
    const auto& r = rt.real();
    return r.e1 >= 0.0 && r.e2 <= 0.0 && r.e3 < r.e2;
}

}  // namespace sectorflow
