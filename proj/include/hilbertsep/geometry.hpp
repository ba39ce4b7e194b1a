#pragma once

#include <utility>
#include <vector>

#include "hilbertsep/common.hpp"

namespace hilbertsep {

/// Affine functional f(x) = w'x + c; the halfspace it bounds is f(x) >= 0.
struct Hyperplane {
    Vec w;
    double c = 0.0;

    double eval(const Vec& x) const { return dot(w, x) + c; }
};

/// Bounded convex polytope with nonempty interior, stored as the ordered
/// intersection of positive halfspaces. Construct via validate_domain, which
/// also certifies a bounding box and a deepest interior point.
struct Domain {
    std::vector<Hyperplane> hyperplanes;
    int dimension = 0;
    Vec bbox_lo, bbox_hi;   // per-axis extremes certified by LPs
    Vec interior_seed;      // maximizer of the minimum clearance
    double max_slack = 0.0; // that minimum clearance (Chebyshev-style depth)

    int num_facets() const { return static_cast<int>(hyperplanes.size()); }
};

/// Checks well-formedness, boundedness (2d coordinate LPs), and nonempty
/// interior (one slack-maximization LP).
Domain validate_domain(const std::vector<Hyperplane>& hyperplanes);

/// Strictly interior point bundled with its per-facet clearances f_i(x).
struct InteriorPoint {
    Vec coords;
    Vec clearances;
};

/// Evaluates all facet clearances at x; rejects boundary and exterior points.
InteriorPoint clearance_vector(const Domain& dom, const Vec& x);

/// True when every facet clearance is >= -tol (closed membership test).
bool domain_contains(const Domain& dom, const Vec& x, double tol = tol::feas);

/// Endpoints of the domain chord through p and q: backward lies behind p,
/// forward beyond q, with the attaining facet index for each.
struct ChordEndpoints {
    Vec backward, forward;
    int backward_facet = -1;
    int forward_facet = -1;
    double t_backward = 0.0; // parameters along x(t) = p + t (q - p)
    double t_forward = 0.0;
};

ChordEndpoints chord_endpoints(const Domain& dom, const Vec& p, const Vec& q);

enum class MetricKind { Funk, Hilbert };
enum class DistanceMethod { Chord, Birkhoff };

/// Asymmetric distance measuring how far q sits from p relative to the
/// boundary beyond q: either the chord log-ratio or the maximum clearance
/// log-ratio; the two agree to tight tolerance.
double funk_distance(const Domain& dom, const Vec& p, const Vec& q,
                     DistanceMethod method = DistanceMethod::Birkhoff);

/// funk_distance with the roles of p and q swapped (identical float path).
double reverse_funk_distance(const Domain& dom, const Vec& p, const Vec& q,
                             DistanceMethod method = DistanceMethod::Birkhoff);

/// Symmetric mean (funk + reverse_funk)/2; the Birkhoff form evaluates
/// (max_i delta_i - min_i delta_i)/2 over delta_i = ln f_i(p) - ln f_i(q),
/// which is bit-identical to averaging the two Funk values.
double hilbert_distance(const Domain& dom, const Vec& p, const Vec& q,
                        DistanceMethod method = DistanceMethod::Birkhoff);

/// Polytopal metric ball: membership is row.eval(x) >= 0 for every row.
/// Funk balls carry one row per domain facet (same normals); Hilbert balls
/// carry one row per ordered facet pair (j, k), j != k.
struct Ball {
    MetricKind kind = MetricKind::Funk;
    InteriorPoint center;
    double radius = 0.0;
    std::vector<Hyperplane> rows;
    // Originating facets per row: Funk rows record {i, -1}, Hilbert rows the
    // ordered pair {j, k} whose boundary intersection the row passes through.
    std::vector<std::pair<int, int>> facet_pairs;
};

Ball funk_ball(const Domain& dom, const Vec& p, double r);
Ball hilbert_ball(const Domain& dom, const Vec& p, double r);

/// Closed membership test with feasibility tolerance on every row.
bool ball_contains(const Ball& ball, const Vec& x);

/// Rescales each row to unit max-abs coefficient. The positive per-row
/// scaling leaves every halfspace unchanged but keeps LP tableaus built from
/// ball rows well conditioned: raw Hilbert-ball coefficients grow like
/// e^{2r} with the radius.
void rescale_rows(std::vector<Hyperplane>& rows);

/// Applies an invertible (d+1)x(d+1) homogeneous map to the domain and a set
/// of interior points: points map projectively, hyperplane coefficient
/// vectors by the inverse transpose, with signs fixed so the mapped interior
/// stays positive. The image domain is re-validated from scratch.
std::pair<Domain, std::vector<Vec>> apply_projective_map(const Domain& dom,
                                                         const std::vector<Vec>& points,
                                                         const std::vector<Vec>& map);

}  // namespace hilbertsep
