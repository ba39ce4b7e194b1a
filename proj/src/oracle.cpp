#include "hilbertsep/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include "hilbertsep/lp.hpp"

namespace hilbertsep::oracle {

namespace {

constexpr int kSegmentSamples = 33;

// Deepest point of the section K within the domain: maximize t subject to
// f_i(x) >= t for every facet and K(x) = 0. Always solvable (the facets
// positively span, so the min-clearance goes to -inf along K), with t* > 0
// exactly when K crosses the interior.
std::pair<Vec, double> deepest_on_hyperplane(const Domain& dom, const Hyperplane& k) {
    const int d = dom.dimension;
    LinearProgram lp(d + 1);
    lp.set_sense(Sense::Maximize);
    for (int j = 0; j <= d; ++j) lp.set_free(j);
    Vec obj(d + 1, 0.0);
    obj[d] = 1.0;
    lp.set_objective(obj);
    for (const Hyperplane& h : dom.hyperplanes) {
        Vec row(d + 1, 0.0);
        for (int j = 0; j < d; ++j) row[j] = h.w[j];
        row[d] = -1.0;
        lp.add_row(std::move(row), Relation::GreaterEq, -h.c);
    }
    Vec krow(d + 1, 0.0);
    for (int j = 0; j < d; ++j) krow[j] = k.w[j];
    lp.add_row(std::move(krow), Relation::Equal, -k.c);
    const LpSolution sol = solve(lp);
    if (sol.status != LpStatus::Optimal)
        throw Error("Error: hyperplane-depth program did not reach an optimum");
    return {Vec(sol.x.begin(), sol.x.begin() + d), sol.x[d]};
}

// Strictly interior samples of the segment K within a 2-D domain, walking
// from a known crossing point along the line direction to the clipped
// parameter range. Samples whose clearance degenerates are dropped.
std::vector<Vec> segment_samples(const Domain& dom, const Hyperplane& k, const Vec& x0) {
    const Vec dir = {-k.w[1], k.w[0]};
    double s_lo = -std::numeric_limits<double>::infinity();
    double s_hi = std::numeric_limits<double>::infinity();
    for (const Hyperplane& h : dom.hyperplanes) {
        const double gain = dot(h.w, dir);
        const double base = h.eval(x0);
        if (std::abs(gain) <= tol::chord_parallel) continue;
        const double bound = -base / gain;
        if (gain > 0.0)
            s_lo = std::max(s_lo, bound);
        else
            s_hi = std::min(s_hi, bound);
    }
    std::vector<Vec> out;
    if (!(s_hi > s_lo)) return out;
    for (int i = 0; i < kSegmentSamples; ++i) {
        const double frac = 0.01 + 0.98 * static_cast<double>(i) / (kSegmentSamples - 1);
        const Vec x = {x0[0] + (s_lo + frac * (s_hi - s_lo)) * dir[0],
                       x0[1] + (s_lo + frac * (s_hi - s_lo)) * dir[1]};
        bool deep = true;
        for (const Hyperplane& h : dom.hyperplanes)
            if (h.eval(x) <= tol::interior) {
                deep = false;
                break;
            }
        if (deep) out.push_back(x);
    }
    return out;
}

bool ball_reaches(const Domain& dom, const Vec& p, double r, MetricKind kind,
                  const Hyperplane& k) {
    Ball ball = kind == MetricKind::Hilbert ? hilbert_ball(dom, p, r) : funk_ball(dom, p, r);
    rescale_rows(ball.rows);
    LinearProgram lp(dom.dimension);
    for (int j = 0; j < dom.dimension; ++j) lp.set_free(j);
    for (const Hyperplane& row : ball.rows) lp.add_row(row.w, Relation::GreaterEq, -row.c);
    for (const Hyperplane& h : dom.hyperplanes) lp.add_row(h.w, Relation::GreaterEq, -h.c);
    lp.add_row(k.w, Relation::Equal, -k.c);
    return check_feasible(lp);
}

double metric_distance(const Domain& dom, const Vec& p, const Vec& x, MetricKind kind) {
    return kind == MetricKind::Hilbert ? hilbert_distance(dom, p, x) : funk_distance(dom, p, x);
}

}  // namespace

double point_hyperplane_distance(const Domain& dom, const Hyperplane& k, const Vec& p,
                                 double tolerance, MetricKind kind) {
    if (static_cast<int>(k.w.size()) != dom.dimension)
        throw DimensionMismatch("DimensionMismatch: hyperplane has " +
                                std::to_string(k.w.size()) + " coordinates, domain " +
                                std::to_string(dom.dimension));
    if (!all_finite(k.w) || !std::isfinite(k.c) || norm(k.w) <= 0.0)
        throw MalformedHyperplane("MalformedHyperplane: degenerate separator row");
    if (!(tolerance > 0.0)) throw Error("Error: distance tolerance must be positive");

    const auto [x0, depth] = deepest_on_hyperplane(dom, k);
    if (depth <= tol::interior)
        throw HyperplaneMissesDomain(
            "HyperplaneMissesDomain: the hyperplane does not cross the interior");
    clearance_vector(dom, p);
    if (std::abs(k.eval(p)) / norm(k.w) <= tol::boundary_sign)
        throw PointOnHyperplane("PointOnHyperplane: the point lies on the hyperplane");

    // Any point of K inside the domain gives a reachable upper radius; in
    // 2-D a sampled sweep of the segment tightens it before bisecting.
    double hi = metric_distance(dom, p, x0, kind);
    if (dom.dimension == 2)
        for (const Vec& x : segment_samples(dom, k, x0))
            hi = std::min(hi, metric_distance(dom, p, x, kind));
    hi += std::max(10.0 * tolerance, 1e-6);
    double lo = 0.0;
    while (hi - lo > tolerance) {
        const double mid = lo + (hi - lo) / 2.0;
        if (ball_reaches(dom, p, mid, kind, k))
            hi = mid;
        else
            lo = mid;
    }
    return lo;
}

MarginScan brute_force_margin_2d(const Domain& dom, const LabeledDataset& ds, int angle_steps,
                                 int offset_steps, MetricKind kind, double bisect_tol) {
    if (dom.dimension != 2)
        throw DimensionNot2("DimensionNot2: the margin scan works on planar domains only");
    if (angle_steps < 1 || offset_steps < 1)
        throw Error("Error: scan needs at least one angle and one offset step");
    const int n = ds.size();
    const double pi = std::acos(-1.0);

    const Vec corners[4] = {{dom.bbox_lo[0], dom.bbox_lo[1]},
                            {dom.bbox_lo[0], dom.bbox_hi[1]},
                            {dom.bbox_hi[0], dom.bbox_lo[1]},
                            {dom.bbox_hi[0], dom.bbox_hi[1]}};
    const Vec center = {(dom.bbox_lo[0] + dom.bbox_hi[0]) / 2.0,
                        (dom.bbox_lo[1] + dom.bbox_hi[1]) / 2.0};
    double circumradius = 0.0;
    for (const Vec& corner : corners)
        circumradius = std::max(circumradius, euclid_dist(corner, center));

    MarginScan best;
    best.margin = -std::numeric_limits<double>::infinity();
    double best_extent = 0.0;

    for (int t = 0; t < angle_steps; ++t) {
        const double theta = pi * t / angle_steps;
        const Vec u = {std::cos(theta), std::sin(theta)};
        double o_min = std::numeric_limits<double>::infinity();
        double o_max = -o_min;
        for (const Vec& corner : corners) {
            o_min = std::min(o_min, dot(u, corner));
            o_max = std::max(o_max, dot(u, corner));
        }
        const double extent = o_max - o_min;
        for (int s = 0; s < offset_steps; ++s) {
            const double o = o_min + (s + 0.5) * extent / offset_steps;
            const Hyperplane line{u, -o};

            // Keep lines that strictly separate the labels (either side).
            int lead = 0;
            bool skip = false;
            for (int i = 0; i < n && !skip; ++i) {
                const double v = line.eval(ds.points[i].coords);
                if (std::abs(v) <= tol::boundary_sign) skip = true;
                const int side = ds.labels[i] * (v > 0.0 ? 1 : -1);
                if (i == 0)
                    lead = side;
                else if (side != lead)
                    skip = true;
            }
            if (skip) continue;
            ++best.lines_checked;

            // A crossing point of the line inside the domain: interpolate
            // between any two points on opposite sides (both interior, so
            // the convex segment stays interior).
            int i_above = -1, i_below = -1;
            for (int i = 0; i < n; ++i)
                (line.eval(ds.points[i].coords) > 0.0 ? i_above : i_below) = i;
            const Vec& pa = ds.points[i_above].coords;
            const Vec& pb = ds.points[i_below].coords;
            const double va = line.eval(pa), vb = line.eval(pb);
            const double lam = va / (va - vb);
            const Vec x0 = {pa[0] + lam * (pb[0] - pa[0]), pa[1] + lam * (pb[1] - pa[1])};

            // Sampled upper bound on this line's margin: if even the bound
            // cannot beat the incumbent, skip the certified bisections.
            const std::vector<Vec> samples = segment_samples(dom, line, x0);
            double upper = std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i)
                for (const Vec& x : samples)
                    upper = std::min(upper, metric_distance(dom, ds.points[i].coords, x, kind));
            if (upper <= best.margin) continue;

            double margin_line = std::numeric_limits<double>::infinity();
            for (int i = 0; i < n && margin_line > best.margin; ++i)
                margin_line = std::min(margin_line, point_hyperplane_distance(
                                                        dom, line, ds.points[i].coords,
                                                        bisect_tol, kind));
            if (margin_line > best.margin) {
                best.margin = margin_line;
                best.w = u;
                best.c = -o;
                best_extent = extent;
            }
        }
    }
    if (!std::isfinite(best.margin))
        throw NotSeparable("NotSeparable: no scanned line separates the classes");

    // Local metric distortion along the winning line caps how fast the
    // margin can change under one grid step of line motion; pad by half the
    // offset spacing plus the arc swept by half an angle step.
    const auto [x0, depth] = deepest_on_hyperplane(dom, {best.w, best.c});
    (void)depth;
    double distortion = 0.0;
    for (const Vec& x : segment_samples(dom, {best.w, best.c}, x0))
        for (const Hyperplane& h : dom.hyperplanes)
            distortion = std::max(distortion, norm(h.w) / h.eval(x));
    const double shift = best_extent / (2.0 * offset_steps) +
                         circumradius * pi / (2.0 * angle_steps);
    best.resolution_estimate = 1.5 * distortion * shift + 2.0 * bisect_tol;
    return best;
}

MembershipReport ball_membership_oracle(const Domain& dom, const Vec& p, double r, int samples,
                                        MetricKind kind, unsigned seed) {
    if (r < 0.0) throw NegativeRadius("NegativeRadius: ball radius " + std::to_string(r));
    clearance_vector(dom, p);
    const Ball ball = kind == MetricKind::Hilbert ? hilbert_ball(dom, p, r)
                                                  : funk_ball(dom, p, r);
    std::mt19937_64 rng(seed);
    std::vector<std::uniform_real_distribution<double>> axis;
    axis.reserve(dom.dimension);
    for (int j = 0; j < dom.dimension; ++j)
        axis.emplace_back(dom.bbox_lo[j], dom.bbox_hi[j]);

    auto draw_interior = [&]() {
        Vec x(dom.dimension);
        for (int attempt = 0; attempt < 64; ++attempt) {
            for (int j = 0; j < dom.dimension; ++j) x[j] = axis[j](rng);
            if (domain_contains(dom, x, -1e-9)) return x;
        }
        // Thin domains reject too often; pull the last draw toward the
        // certified deep point until it lands inside.
        for (int shrink = 0; shrink < 60; ++shrink) {
            for (int j = 0; j < dom.dimension; ++j)
                x[j] = dom.interior_seed[j] + (x[j] - dom.interior_seed[j]) / 2.0;
            if (domain_contains(dom, x, -1e-9)) return x;
        }
        return dom.interior_seed;
    };

    MembershipReport report;
    report.samples = samples;
    for (int i = 0; i < samples; ++i) {
        const Vec x = draw_interior();
        const double dist = metric_distance(dom, p, x, kind);
        const bool contained = ball_contains(ball, x);
        const bool should_contain = dist < r - 1e-9;
        const bool should_exclude = dist > r + 1e-9;
        if ((should_contain && !contained) || (should_exclude && contained)) {
            ++report.violations;
            report.worst_gap = std::max(report.worst_gap, std::abs(dist - r));
        }
    }
    return report;
}

}  // namespace hilbertsep::oracle
