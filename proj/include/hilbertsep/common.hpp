#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace hilbertsep {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double euclid_dist(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline bool all_finite(const Vec& a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

// Central tolerances. These are part of the library contract and are not
// meant to be tuned per call site.
namespace tol {
inline constexpr double interior = 1e-12;        // strict interior membership
inline constexpr double feas = 1e-9;             // constraint-system membership band
inline constexpr double equiv = 1e-9;            // chord vs ratio formulation agreement
inline constexpr double coincide = 1e-12;        // coincident-point threshold
inline constexpr double lp = 1e-9;               // LP feasibility/optimality
inline constexpr double lp_pivot = 1e-10;        // simplex pivot threshold
inline constexpr double chord_parallel = 1e-14;  // ray-parallel facet cutoff
inline constexpr double boundary_sign = 1e-12;   // classifier on-plane band
inline constexpr double nn_infinite = 1e-10;     // ratio below which beta is reported infinite
}  // namespace tol

// Error taxonomy. Messages begin with the error name so the CLI can surface
// them verbatim.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedHyperplane : Error {
    using Error::Error;
};
struct Unbounded : Error {
    using Error::Error;
};
struct EmptyInterior : Error {
    using Error::Error;
};
struct NotInterior : Error {
    int facet;
    NotInterior(int facet_idx, double clearance)
        : Error("NotInterior: facet " + std::to_string(facet_idx) +
                " has clearance " + std::to_string(clearance)),
          facet(facet_idx) {}
};
struct CoincidentPoints : Error {
    CoincidentPoints() : Error("CoincidentPoints: points coincide") {}
};
struct NegativeRadius : Error {
    using Error::Error;
};
struct SingularMap : Error {
    using Error::Error;
};
struct ImageUnbounded : Error {
    using Error::Error;
};
struct IterationLimit : Error {
    using Error::Error;
};
struct EmptyClass : Error {
    using Error::Error;
};
struct NotSeparable : Error {
    using Error::Error;
};
struct HyperplaneMissesDomain : Error {
    using Error::Error;
};
struct PointOnHyperplane : Error {
    using Error::Error;
};
struct DimensionNot2 : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};

}  // namespace hilbertsep
