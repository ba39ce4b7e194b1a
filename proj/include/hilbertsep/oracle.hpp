#pragma once

#include <vector>

#include "hilbertsep/common.hpp"
#include "hilbertsep/geometry.hpp"
#include "hilbertsep/svm.hpp"

namespace hilbertsep::oracle {

/// Metric distance from an interior point to a hyperplane section K within
/// the domain, certified by bisection on ball-reach feasibility: radius r is
/// "reaching" when {x : x in ball(p, r), x in domain, K(x) = 0} is LP
/// feasible. Returns the lower bisection endpoint, a radius whose ball
/// provably misses K, within `tolerance` of the true distance (from below).
/// Funk mode measures the directed distance from p toward K.
double point_hyperplane_distance(const Domain& dom, const Hyperplane& k, const Vec& p,
                                 double tolerance, MetricKind kind = MetricKind::Hilbert);

/// Best separator found by a dense 2-D scan over line angles and offsets.
struct MarginScan {
    Vec w;
    double c = 0.0;
    double margin = 0.0;
    double resolution_estimate = 0.0;  // heuristic gap to the true optimum
    long lines_checked = 0;            // separating candidates examined
};

/// Exhaustive reference optimizer for d = 2: tries angle_steps line
/// directions times offset_steps positions, keeps separating lines only, and
/// maximizes the minimum point-to-line distance (each evaluated by certified
/// bisection, pruned through cheap sampled upper bounds). The resolution
/// estimate combines the grid spacing with the local metric distortion along
/// the winning line, plus the bisection tolerance.
MarginScan brute_force_margin_2d(const Domain& dom, const LabeledDataset& ds, int angle_steps,
                                 int offset_steps, MetricKind kind = MetricKind::Hilbert,
                                 double bisect_tol = 1e-6);

struct MembershipReport {
    int samples = 0;
    int violations = 0;
    double worst_gap = 0.0;  // largest |distance - r| among violations
};

/// Cross-checks the polytope ball against the distance function on random
/// interior samples: a point strictly inside radius r (beyond tolerance)
/// must satisfy every ball row, and a point strictly outside must violate
/// one. Distances within 1e-9 of r are not counted either way.
MembershipReport ball_membership_oracle(const Domain& dom, const Vec& p, double r, int samples,
                                        MetricKind kind, unsigned seed);

}  // namespace hilbertsep::oracle
