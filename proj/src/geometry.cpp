#include "hilbertsep/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hilbertsep/lp.hpp"

namespace hilbertsep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Feasibility rows f_i(x) >= 0 over free coordinate variables.
LinearProgram domain_lp(const std::vector<Hyperplane>& hyperplanes, int d) {
    LinearProgram lp(d);
    for (int j = 0; j < d; ++j) lp.set_free(j);
    for (const Hyperplane& h : hyperplanes) {
        Vec row = h.w;
        lp.add_row(std::move(row), Relation::GreaterEq, -h.c);
    }
    return lp;
}

}  // namespace

Domain validate_domain(const std::vector<Hyperplane>& hyperplanes) {
    if (hyperplanes.empty())
        throw MalformedHyperplane("MalformedHyperplane: empty hyperplane sequence");
    const int d = static_cast<int>(hyperplanes[0].w.size());
    if (d == 0) throw MalformedHyperplane("MalformedHyperplane: hyperplane 0 has an empty normal");
    for (std::size_t i = 0; i < hyperplanes.size(); ++i) {
        const Hyperplane& h = hyperplanes[i];
        if (static_cast<int>(h.w.size()) != d)
            throw MalformedHyperplane("MalformedHyperplane: hyperplane " + std::to_string(i) +
                                      " has " + std::to_string(h.w.size()) +
                                      " coefficients, expected " + std::to_string(d));
        if (!all_finite(h.w) || !std::isfinite(h.c))
            throw MalformedHyperplane("MalformedHyperplane: hyperplane " + std::to_string(i) +
                                      " has non-finite entries");
        if (std::all_of(h.w.begin(), h.w.end(), [](double v) { return v == 0.0; }))
            throw MalformedHyperplane("MalformedHyperplane: hyperplane " + std::to_string(i) +
                                      " has a zero normal");
    }
    const int m = static_cast<int>(hyperplanes.size());
    if (m < d + 1)
        throw Unbounded("Unbounded: " + std::to_string(m) + " halfspaces cannot bound a polytope in dimension " +
                        std::to_string(d));

    Domain dom;
    dom.hyperplanes = hyperplanes;
    dom.dimension = d;
    dom.bbox_lo.assign(d, 0.0);
    dom.bbox_hi.assign(d, 0.0);

    for (int axis = 0; axis < d; ++axis) {
        for (const int sign : {+1, -1}) {
            LinearProgram lp = domain_lp(hyperplanes, d);
            Vec obj(d, 0.0);
            obj[axis] = 1.0;
            lp.set_objective(std::move(obj));
            lp.set_sense(sign > 0 ? Sense::Maximize : Sense::Minimize);
            const LpSolution sol = solve(lp);
            if (sol.status == LpStatus::Unbounded)
                throw Unbounded("Unbounded: coordinate " + std::to_string(axis) +
                                " is unbounded " + (sign > 0 ? "above" : "below"));
            if (sol.status == LpStatus::Infeasible)
                throw EmptyInterior("EmptyInterior: constraint system is infeasible");
            (sign > 0 ? dom.bbox_hi[axis] : dom.bbox_lo[axis]) = sol.x[axis];
        }
    }

    // Deepest interior point: maximize t subject to f_i(x) - t >= 0.
    LinearProgram deep(d + 1);
    for (int j = 0; j <= d; ++j) deep.set_free(j);
    for (const Hyperplane& h : hyperplanes) {
        Vec row(d + 1, 0.0);
        std::copy(h.w.begin(), h.w.end(), row.begin());
        row[d] = -1.0;
        deep.add_row(std::move(row), Relation::GreaterEq, -h.c);
    }
    Vec obj(d + 1, 0.0);
    obj[d] = 1.0;
    deep.set_objective(std::move(obj));
    deep.set_sense(Sense::Maximize);
    const LpSolution sol = solve(deep);
    if (sol.status != LpStatus::Optimal)
        throw Error("Error: interior-slack program did not reach an optimum");
    dom.max_slack = sol.objective_value;
    if (dom.max_slack <= tol::interior)
        throw EmptyInterior("EmptyInterior: maximum interior slack is " +
                            std::to_string(dom.max_slack));
    dom.interior_seed.assign(sol.x.begin(), sol.x.begin() + d);
    return dom;
}

InteriorPoint clearance_vector(const Domain& dom, const Vec& x) {
    if (static_cast<int>(x.size()) != dom.dimension)
        throw DimensionMismatch("DimensionMismatch: point has " + std::to_string(x.size()) +
                                " coordinates for dimension " + std::to_string(dom.dimension));
    InteriorPoint pt{x, Vec(dom.num_facets(), 0.0)};
    for (int i = 0; i < dom.num_facets(); ++i) {
        pt.clearances[i] = dom.hyperplanes[i].eval(x);
        if (!(pt.clearances[i] > tol::interior)) throw NotInterior(i, pt.clearances[i]);
    }
    return pt;
}

bool domain_contains(const Domain& dom, const Vec& x, double tol) {
    for (const Hyperplane& h : dom.hyperplanes)
        if (h.eval(x) < -tol) return false;
    return true;
}

ChordEndpoints chord_endpoints(const Domain& dom, const Vec& p, const Vec& q) {
    const InteriorPoint cp = clearance_vector(dom, p);
    clearance_vector(dom, q);
    if (euclid_dist(p, q) <= tol::coincide) throw CoincidentPoints();

    const int d = dom.dimension;
    Vec dir(d);
    for (int k = 0; k < d; ++k) dir[k] = q[k] - p[k];

    ChordEndpoints ce;
    double t_fwd = kInf, t_bwd = -kInf;
    for (int i = 0; i < dom.num_facets(); ++i) {
        const double s = dot(dom.hyperplanes[i].w, dir);
        if (std::abs(s) <= tol::chord_parallel) continue;  // ray parallel to this facet
        const double t = -cp.clearances[i] / s;
        if (s < 0.0) {
            if (t < t_fwd) {
                t_fwd = t;
                ce.forward_facet = i;
            }
        } else if (t > t_bwd) {
            t_bwd = t;
            ce.backward_facet = i;
        }
    }
    if (ce.forward_facet < 0 || ce.backward_facet < 0)
        throw Unbounded("Unbounded: chord through the domain has no exit facet");
    ce.t_forward = t_fwd;
    ce.t_backward = t_bwd;
    ce.forward.resize(d);
    ce.backward.resize(d);
    for (int k = 0; k < d; ++k) {
        ce.forward[k] = p[k] + t_fwd * dir[k];
        ce.backward[k] = p[k] + t_bwd * dir[k];
    }
    return ce;
}

double funk_distance(const Domain& dom, const Vec& p, const Vec& q, DistanceMethod method) {
    const InteriorPoint cp = clearance_vector(dom, p);
    const InteriorPoint cq = clearance_vector(dom, q);
    if (euclid_dist(p, q) <= tol::coincide) return 0.0;

    if (method == DistanceMethod::Birkhoff) {
        double best = -kInf;
        for (int i = 0; i < dom.num_facets(); ++i)
            best = std::max(best, std::log(cp.clearances[i]) - std::log(cq.clearances[i]));
        return std::max(best, 0.0);
    }
    const ChordEndpoints ce = chord_endpoints(dom, p, q);
    return std::max(std::log(euclid_dist(p, ce.forward) / euclid_dist(q, ce.forward)), 0.0);
}

double reverse_funk_distance(const Domain& dom, const Vec& p, const Vec& q, DistanceMethod method) {
    return funk_distance(dom, q, p, method);
}

double hilbert_distance(const Domain& dom, const Vec& p, const Vec& q, DistanceMethod method) {
    if (method == DistanceMethod::Chord)
        return (funk_distance(dom, p, q, method) + funk_distance(dom, q, p, method)) / 2.0;

    const InteriorPoint cp = clearance_vector(dom, p);
    const InteriorPoint cq = clearance_vector(dom, q);
    if (euclid_dist(p, q) <= tol::coincide) return 0.0;

    double hi = -kInf, lo = kInf;
    for (int i = 0; i < dom.num_facets(); ++i) {
        const double delta = std::log(cp.clearances[i]) - std::log(cq.clearances[i]);
        hi = std::max(hi, delta);
        lo = std::min(lo, delta);
    }
    return std::max((hi - lo) / 2.0, 0.0);
}

Ball funk_ball(const Domain& dom, const Vec& p, double r) {
    if (r < 0.0) throw NegativeRadius("NegativeRadius: radius " + std::to_string(r));
    Ball ball;
    ball.kind = MetricKind::Funk;
    ball.center = clearance_vector(dom, p);
    ball.radius = r;
    const double shrink = std::exp(-r);
    ball.rows.reserve(dom.num_facets());
    ball.facet_pairs.reserve(dom.num_facets());
    for (int i = 0; i < dom.num_facets(); ++i) {
        const Hyperplane& h = dom.hyperplanes[i];
        ball.rows.push_back(Hyperplane{h.w, h.c - shrink * ball.center.clearances[i]});
        ball.facet_pairs.emplace_back(i, -1);
    }
    return ball;
}

Ball hilbert_ball(const Domain& dom, const Vec& p, double r) {
    if (r < 0.0) throw NegativeRadius("NegativeRadius: radius " + std::to_string(r));
    Ball ball;
    ball.kind = MetricKind::Hilbert;
    ball.center = clearance_vector(dom, p);
    ball.radius = r;
    const int d = dom.dimension, m = dom.num_facets();
    const double grow = std::exp(2.0 * r);
    ball.rows.reserve(m * (m - 1));
    ball.facet_pairs.reserve(m * (m - 1));
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
            if (k == j) continue;
            const double alpha = grow * ball.center.clearances[k];
            const double alpha_p = ball.center.clearances[j];
            const Hyperplane& hj = dom.hyperplanes[j];
            const Hyperplane& hk = dom.hyperplanes[k];
            Vec w(d);
            for (int t = 0; t < d; ++t) w[t] = alpha * hj.w[t] - alpha_p * hk.w[t];
            ball.rows.push_back(Hyperplane{std::move(w), alpha * hj.c - alpha_p * hk.c});
            ball.facet_pairs.emplace_back(j, k);
        }
    }
    return ball;
}

bool ball_contains(const Ball& ball, const Vec& x) {
    for (const Hyperplane& row : ball.rows)
        if (row.eval(x) < -tol::feas) return false;
    return true;
}

void rescale_rows(std::vector<Hyperplane>& rows) {
    for (Hyperplane& row : rows) {
        double scale = std::abs(row.c);
        for (double v : row.w) scale = std::max(scale, std::abs(v));
        if (scale <= 0.0) continue;
        for (double& v : row.w) v /= scale;
        row.c /= scale;
    }
}

std::pair<Domain, std::vector<Vec>> apply_projective_map(const Domain& dom,
                                                         const std::vector<Vec>& points,
                                                         const std::vector<Vec>& map) {
    const int h = dom.dimension + 1;
    if (static_cast<int>(map.size()) != h)
        throw DimensionMismatch("DimensionMismatch: map must have " + std::to_string(h) + " rows");
    double scale = 0.0;
    for (const Vec& row : map) {
        if (static_cast<int>(row.size()) != h)
            throw DimensionMismatch("DimensionMismatch: map rows must have " + std::to_string(h) +
                                    " columns");
        for (double v : row) scale = std::max(scale, std::abs(v));
    }

    // Gauss-Jordan inversion with partial pivoting.
    std::vector<Vec> aug(h, Vec(2 * h, 0.0));
    for (int i = 0; i < h; ++i) {
        std::copy(map[i].begin(), map[i].end(), aug[i].begin());
        aug[i][h + i] = 1.0;
    }
    for (int col = 0; col < h; ++col) {
        int piv = col;
        for (int i = col + 1; i < h; ++i)
            if (std::abs(aug[i][col]) > std::abs(aug[piv][col])) piv = i;
        if (std::abs(aug[piv][col]) <= 1e-12 * std::max(1.0, scale))
            throw SingularMap("SingularMap: pivot " + std::to_string(col) + " vanishes");
        std::swap(aug[piv], aug[col]);
        const double pv = aug[col][col];
        for (double& v : aug[col]) v /= pv;
        for (int i = 0; i < h; ++i) {
            if (i == col) continue;
            const double f = aug[i][col];
            if (f == 0.0) continue;
            for (int j = 0; j < 2 * h; ++j) aug[i][j] -= f * aug[col][j];
        }
    }

    auto hom_apply = [&](const Vec& x) {
        Vec hx(h, 1.0);
        std::copy(x.begin(), x.end(), hx.begin());
        Vec out(h, 0.0);
        for (int i = 0; i < h; ++i) out[i] = dot(map[i], hx);
        return out;
    };

    const Vec seed_h = hom_apply(dom.interior_seed);
    const double t_seed = seed_h[h - 1];
    if (std::abs(t_seed) <= tol::interior)
        throw ImageUnbounded("ImageUnbounded: an interior point maps to infinity");
    // sign(f(x)) = sign(t) * sign(mapped f(y)), so one global flip suffices.
    const double orient = t_seed > 0.0 ? 1.0 : -1.0;

    std::vector<Hyperplane> mapped;
    mapped.reserve(dom.hyperplanes.size());
    for (const Hyperplane& hp : dom.hyperplanes) {
        Vec rho(h);
        std::copy(hp.w.begin(), hp.w.end(), rho.begin());
        rho[h - 1] = hp.c;
        Vec out(h, 0.0);
        for (int col = 0; col < h; ++col) {
            double s = 0.0;
            for (int l = 0; l < h; ++l) s += aug[l][h + col] * rho[l];
            out[col] = orient * s;
        }
        mapped.push_back(Hyperplane{Vec(out.begin(), out.end() - 1), out[h - 1]});
    }

    std::vector<Vec> mapped_points;
    mapped_points.reserve(points.size());
    for (const Vec& x : points) {
        const Vec hx = hom_apply(x);
        const double t = hx[h - 1];
        if (std::abs(t) <= tol::interior || (t > 0.0) != (t_seed > 0.0))
            throw ImageUnbounded("ImageUnbounded: a point maps across the plane at infinity");
        Vec y(h - 1);
        for (int k = 0; k < h - 1; ++k) y[k] = hx[k] / t;
        mapped_points.push_back(std::move(y));
    }

    try {
        Domain out_dom = validate_domain(mapped);
        return {std::move(out_dom), std::move(mapped_points)};
    } catch (const Unbounded&) {
        throw ImageUnbounded("ImageUnbounded: mapped domain is unbounded");
    } catch (const EmptyInterior&) {
        throw ImageUnbounded("ImageUnbounded: mapped domain has empty interior");
    }
}

}  // namespace hilbertsep
