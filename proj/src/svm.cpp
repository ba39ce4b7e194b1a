#include "hilbertsep/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace hilbertsep {

namespace {

struct Normalization {
    Vec coeffs;
    double rhs = 1.0;
};

std::vector<Normalization> normalization_list(int d, NormalizationMode mode) {
    std::vector<Normalization> out;
    out.push_back({Vec(d, 1.0), 1.0});
    out.push_back({Vec(d, 1.0), -1.0});
    if (mode == NormalizationMode::Exhaustive) {
        // Any nonzero w has a nonzero coordinate, so pinning w_j = +-1 for
        // every j covers separators the all-ones row misses (1'w = 0).
        for (int j = 0; j < d; ++j) {
            Vec ej(d, 0.0);
            ej[j] = 1.0;
            out.push_back({ej, 1.0});
            ej[j] = -1.0;
            out.push_back({ej, -1.0});
        }
    }
    return out;
}

SeparabilityLp assemble(const Domain& dom, const LabeledDataset& ds, double r, MetricKind metric,
                        const Normalization& norm, bool soft, const Vec* omega) {
    const int d = dom.dimension;
    const int m = dom.num_facets();
    const int n = ds.size();
    const int k = metric == MetricKind::Hilbert ? m * (m - 1) : m;

    const int w_off = 0;
    const int c_off = d;
    const int xi_off = soft ? d + 1 : -1;
    const int y_off = soft ? d + 1 + n : d + 1;

    SeparabilityLp out{LinearProgram(y_off + n * k), d, n, k, w_off, c_off, xi_off, y_off,
                       {},          norm.coeffs,     norm.rhs};
    LinearProgram& lp = out.lp;
    lp.set_sense(soft ? Sense::Minimize : Sense::FeasibilityOnly);

    for (int j = 0; j < d; ++j) {
        lp.set_free(w_off + j);
        lp.set_name(w_off + j, "w" + std::to_string(j));
    }
    lp.set_free(c_off);
    lp.set_name(c_off, "c");
    for (int i = 0; i < n && soft; ++i) lp.set_name(xi_off + i, "xi" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int kk = 0; kk < k; ++kk)
            lp.set_name(y_off + i * k + kk,
                        "y" + std::to_string(i) + "_" + std::to_string(kk));

    out.ball_rows.resize(n);
    for (int i = 0; i < n; ++i) {
        const Vec& p = ds.points[i].coords;
        Ball ball = metric == MetricKind::Hilbert ? hilbert_ball(dom, p, r) : funk_ball(dom, p, r);
        rescale_rows(ball.rows);
        const double ell = ds.labels[i];

        // rows(i)' y(i) = label_i * w, one equality per coordinate.
        for (int t = 0; t < d; ++t) {
            Vec row(lp.num_vars(), 0.0);
            row[w_off + t] = -ell;
            for (int kk = 0; kk < k; ++kk) row[y_off + i * k + kk] = ball.rows[kk].w[t];
            lp.add_row(std::move(row), Relation::Equal, 0.0);
        }
        // offs(i)' y(i) <= label_i * c (+ xi_i in soft mode).
        Vec row(lp.num_vars(), 0.0);
        row[c_off] = -ell;
        if (soft) row[xi_off + i] = -1.0;
        for (int kk = 0; kk < k; ++kk) row[y_off + i * k + kk] = ball.rows[kk].c;
        lp.add_row(std::move(row), Relation::LessEq, 0.0);

        out.ball_rows[i] = std::move(ball.rows);
    }

    Vec nrow(lp.num_vars(), 0.0);
    for (int j = 0; j < d; ++j) nrow[w_off + j] = norm.coeffs[j];
    lp.add_row(std::move(nrow), Relation::Equal, norm.rhs);

    if (soft) {
        Vec obj(lp.num_vars(), 0.0);
        for (int i = 0; i < n; ++i) obj[xi_off + i] = (*omega)[i];
        lp.set_objective(std::move(obj));
    }
    return out;
}

SeparationWitness extract_witness(const SeparabilityLp& built, const LpSolution& sol) {
    SeparationWitness w;
    w.w.assign(sol.x.begin() + built.w_offset, sol.x.begin() + built.w_offset + built.dim);
    w.c = sol.x[built.c_offset];
    w.y.resize(built.n);
    for (int i = 0; i < built.n; ++i) {
        const int base = built.y_offset + i * built.rows_per_ball;
        w.y[i].assign(sol.x.begin() + base, sol.x.begin() + base + built.rows_per_ball);
    }
    w.norm_coeffs = built.norm_coeffs;
    w.norm_rhs = built.norm_rhs;
    return w;
}

// Minimum signed Euclidean-scaled clearance of the raw points from the
// separator; used only to compare polish candidates.
double witness_clearance(const LabeledDataset& ds, const Vec& w, double c) {
    const double wn = norm(w);
    if (wn <= 0.0) return -std::numeric_limits<double>::infinity();
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < ds.size(); ++i)
        worst = std::min(worst, ds.labels[i] * (dot(w, ds.points[i].coords) + c) / wn);
    return worst;
}

}  // namespace

LabeledDataset make_dataset(const Domain& dom, const std::vector<Vec>& points,
                            const std::vector<int>& labels) {
    if (points.size() != labels.size())
        throw DimensionMismatch("DimensionMismatch: " + std::to_string(points.size()) +
                                " points but " + std::to_string(labels.size()) + " labels");
    LabeledDataset ds;
    ds.points.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (labels[i] != 1 && labels[i] != -1)
            throw Error("Error: label of point " + std::to_string(i) + " must be +1 or -1");
        ds.points.push_back(clearance_vector(dom, points[i]));
        ds.labels.push_back(labels[i]);
        (labels[i] == 1 ? ds.pos_idx : ds.neg_idx).push_back(static_cast<int>(i));
    }
    if (ds.pos_idx.empty()) throw EmptyClass("EmptyClass: no points labeled +1");
    if (ds.neg_idx.empty()) throw EmptyClass("EmptyClass: no points labeled -1");
    return ds;
}

double margin_upper_bound(const Domain& dom, const LabeledDataset& ds, BoundMode mode, int bits) {
    if (mode == BoundMode::BitComplexity) {
        if (bits <= 0) throw Error("Error: bit budget must be positive");
        return (8.0 * bits + 4.0 * std::log2(static_cast<double>(dom.dimension))) * std::log(2.0);
    }
    if (ds.pos_idx.empty() || ds.neg_idx.empty())
        throw EmptyClass("EmptyClass: margin bound needs both classes");
    double closest = std::numeric_limits<double>::infinity();
    for (int i : ds.pos_idx)
        for (int j : ds.neg_idx) {
            const Vec& p = ds.points[i].coords;
            const Vec& q = ds.points[j].coords;
            const double dist = p == q ? 0.0 : hilbert_distance(dom, p, q);
            closest = std::min(closest, dist);
        }
    return closest / 2.0;
}

SearchGrid make_search_grid(double upper_bound, double epsilon) {
    if (!(epsilon > 0.0)) throw Error("Error: grid step must be positive");
    SearchGrid grid;
    grid.epsilon = epsilon;
    grid.upper_bound = upper_bound;
    const double steps = upper_bound > 0.0 ? std::ceil(upper_bound / epsilon - tol::feas) : 0.0;
    if (steps > 1e8)
        throw Error("Error: search grid would need " + std::to_string(steps) +
                    " radii; increase epsilon");
    grid.count = std::max(0, static_cast<int>(steps));
    return grid;
}

Vec point_weights(const Domain& dom, const LabeledDataset& ds) {
    Vec facet_norm(dom.num_facets());
    for (int j = 0; j < dom.num_facets(); ++j) facet_norm[j] = norm(dom.hyperplanes[j].w);
    Vec omega(ds.size());
    for (int i = 0; i < ds.size(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (int j = 0; j < dom.num_facets(); ++j)
            nearest = std::min(nearest, ds.points[i].clearances[j] / facet_norm[j]);
        omega[i] = 1.0 / nearest;
    }
    return omega;
}

SeparabilityLp build_separability_lp(const Domain& dom, const LabeledDataset& ds, double r,
                                     MetricKind metric, double normalization) {
    if (normalization != 1.0 && normalization != -1.0)
        throw Error("Error: normalization right-hand side must be +1 or -1");
    return assemble(dom, ds, r, metric, {Vec(dom.dimension, 1.0), normalization}, false, nullptr);
}

SeparabilityResult separable_at(const Domain& dom, const LabeledDataset& ds, double r,
                                MetricKind metric, NormalizationMode mode) {
    if (r < 0.0) throw NegativeRadius("NegativeRadius: separability radius " + std::to_string(r));
    SeparabilityResult result;
    for (const Normalization& norm_spec : normalization_list(dom.dimension, mode)) {
        SeparabilityLp built = assemble(dom, ds, r, metric, norm_spec, false, nullptr);
        LpSolution sol = solve(built.lp);
        if (sol.status == LpStatus::Optimal) {
            result.separable = true;
            result.witness = extract_witness(built, sol);
            result.ball_rows = std::move(built.ball_rows);
            return result;
        }
        if (result.ball_rows.empty()) result.ball_rows = std::move(built.ball_rows);
    }
    return result;
}

SeparatorModel train_hard(const Domain& dom, const LabeledDataset& ds, double epsilon,
                          MetricKind metric, const TrainOptions& opts, HardTrainStats* stats) {
    SeparabilityResult best = separable_at(dom, ds, 0.0, metric, opts.normalization);
    if (!best.separable)
        throw NotSeparable("NotSeparable: no separator exists even at radius 0");

    const double upper = margin_upper_bound(dom, ds, BoundMode::Data);
    const SearchGrid grid = make_search_grid(upper, epsilon);

    // Ball nesting makes grid feasibility monotone, so bisect the step index.
    // lo is always feasible (r = 0 was just verified) and hi = count + 1 is
    // infeasible without solving: its radius exceeds the upper bound.
    int lo = 0, hi = grid.count + 1;
    int probes = 0;
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        SeparabilityResult probe = separable_at(dom, ds, grid.radius(mid), metric,
                                                opts.normalization);
        ++probes;
        if (probe.separable) {
            lo = mid;
            best = std::move(probe);
        } else {
            hi = mid;
        }
    }
    double margin = grid.radius(lo);

    if (opts.polish) {
        double best_clear = witness_clearance(ds, best.witness.w, best.witness.c);
        for (const Normalization& norm_spec :
             normalization_list(dom.dimension, opts.normalization)) {
            SeparabilityLp built = assemble(dom, ds, margin, metric, norm_spec, false, nullptr);
            LpSolution sol = solve(built.lp);
            if (sol.status != LpStatus::Optimal) continue;
            SeparationWitness cand = extract_witness(built, sol);
            const double clear = witness_clearance(ds, cand.w, cand.c);
            if (clear > best_clear) {
                best_clear = clear;
                best.witness = std::move(cand);
                best.ball_rows = std::move(built.ball_rows);
            }
        }
    }

    if (stats) {
        stats->feasibility_tests = probes;
        stats->upper_bound = upper;
        stats->grid_count = grid.count;
    }
    SeparatorModel model;
    model.w = best.witness.w;
    model.c = best.witness.c;
    model.metric = metric;
    model.kind = SeparatorKind::Hard;
    model.margin = margin;
    return model;
}

SeparatorModel train_soft(const Domain& dom, const LabeledDataset& ds, double epsilon, double C,
                          MetricKind metric, const TrainOptions& opts, SoftTrainStats* stats) {
    if (C < 0.0) throw Error("Error: penalty constant C must be nonnegative");
    const Vec omega = point_weights(dom, ds);
    const double upper = margin_upper_bound(dom, ds, BoundMode::Data);
    const SearchGrid grid = make_search_grid(upper, epsilon);
    // Even a degenerate bound (coincident cross-class points) gets one radius
    // so that a model always comes back.
    const int count = std::max(1, grid.count);

    SeparatorModel model;
    model.metric = metric;
    model.kind = SeparatorKind::Soft;
    model.C = C;
    double best_score = -std::numeric_limits<double>::infinity();
    if (stats) {
        stats->table.clear();
        stats->selected = -1;
    }

    for (int t = 1; t <= count; ++t) {
        const double r = grid.radius(t);
        bool have = false;
        double penalty = 0.0, norm_rhs = 0.0;
        Vec w, xi;
        double c = 0.0;
        for (const Normalization& norm_spec :
             normalization_list(dom.dimension, opts.normalization)) {
            SeparabilityLp built = assemble(dom, ds, r, metric, norm_spec, true, &omega);
            LpSolution sol = solve(built.lp);
            if (sol.status != LpStatus::Optimal) continue;  // cannot happen geometrically
            if (!have || sol.objective_value < penalty) {
                have = true;
                penalty = sol.objective_value;
                norm_rhs = norm_spec.rhs;
                w.assign(sol.x.begin(), sol.x.begin() + dom.dimension);
                c = sol.x[built.c_offset];
                xi.assign(sol.x.begin() + built.xi_offset,
                          sol.x.begin() + built.xi_offset + ds.size());
            }
        }
        if (!have)
            throw Error("Error: soft separability program failed at radius " + std::to_string(r));
        const double score = r - C * penalty / ds.size();
        if (stats) stats->table.push_back({r, penalty, score, norm_rhs});
        if (score >= best_score) {  // ties go to the larger radius
            best_score = score;
            model.w = std::move(w);
            model.c = c;
            model.margin = r;
            model.xi = std::move(xi);
            model.total_penalty = penalty;
            if (stats) stats->selected = t - 1;
        }
    }
    return model;
}

Prediction classify(const SeparatorModel& model, const Vec& x) {
    if (static_cast<int>(x.size()) != static_cast<int>(model.w.size()))
        throw DimensionMismatch("DimensionMismatch: point has " + std::to_string(x.size()) +
                                " coordinates, separator expects " +
                                std::to_string(model.w.size()));
    const double value = dot(model.w, x) + model.c;
    if (std::abs(value) <= tol::boundary_sign) return {1, true};
    return {value > 0.0 ? 1 : -1, false};
}

}  // namespace hilbertsep
