#pragma once

#include <stdexcept>
#include <string>

namespace sectorflow {

// Tanh-sinh refinement exhausted its levels without the successive sums
// agreeing, or the transformed integrand has not decayed at the truncation
// boundary.  Both indicate the integral is divergent or outside the class
// the rule handles.
class quadrature_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An arc or period integral diverges for the supplied roots: the orbit runs
// into a double root of the cubic (e2 == e3 reachable from the integration
// range), so the angle integral is logarithmically infinite.
class divergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The query is well-formed but lies in a parameter region the solver does
// not support (e.g. the (2,1) family above the fold-existence threshold
// angle).  CLI maps this to its own exit code, distinct from domain errors.
class unsupported_region_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A prescribed flux lies at or beyond the maximum its flow type can carry,
// so the requested reconstruction has no root triple to return.
class no_solution_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Profile arc assembly produced a cumulative opening angle that disagrees
// with the angle the root triple subtends: the per-increment quadratures and
// the closed-form arc integrals have drifted apart, so the sampled profile
// would not satisfy the boundary conditions it claims.
class arc_assembly_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sectorflow
