#include "hilbertsep/embed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hilbertsep/lp.hpp"

namespace hilbertsep {

namespace {

// Padded canonical coordinate: index m-1 is the subtracted slot, literal 0.
double padded(const Vec& canonical, int a) {
    return a < static_cast<int>(canonical.size()) ? canonical[a] : 0.0;
}

Vec class_mean(const std::vector<Vec>& embedded, const std::vector<int>& idx, int dim) {
    Vec mean(dim, 0.0);
    for (int i : idx)
        for (int a = 0; a < dim; ++a) mean[a] += embedded[i][a];
    for (double& v : mean) v /= static_cast<double>(idx.size());
    return mean;
}

Vec diff(const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

}  // namespace

EmbeddedPoint embed_point(const Domain& dom, const Vec& p) {
    const InteriorPoint ip = clearance_vector(dom, p);
    const int m = dom.num_facets();
    EmbeddedPoint out;
    out.phi.resize(m);
    for (int i = 0; i < m; ++i) out.phi[i] = std::log(ip.clearances[i]);
    out.canonical.resize(m - 1);
    for (int i = 0; i + 1 < m; ++i) out.canonical[i] = out.phi[i] - out.phi[m - 1];
    return out;
}

double norm_sigma(const Vec& x) {
    double mx = 0.0, mn = 0.0;  // the padded zero participates from the start
    for (double v : x) {
        mx = std::max(mx, v);
        mn = std::min(mn, v);
    }
    return (mx - mn) / 2.0;
}

double embedded_distance(const Domain& dom, const Vec& p, const Vec& q) {
    return norm_sigma(diff(embed_point(dom, p).canonical, embed_point(dom, q).canonical));
}

NnModel train_nn(const Domain& dom, const LabeledDataset& ds) {
    if (ds.pos_idx.empty()) throw EmptyClass("EmptyClass: no points labeled +1");
    if (ds.neg_idx.empty()) throw EmptyClass("EmptyClass: no points labeled -1");
    const int m = dom.num_facets();
    const int dim = m - 1;
    const int n = ds.size();

    std::vector<Vec> embedded(n);
    for (int i = 0; i < n; ++i) embedded[i] = embed_point(dom, ds.points[i].coords).canonical;

    // Per-point distance to the nearest opposite-class point; the center must
    // sit within t * nearest[i] of point i, so minimizing t maximizes the
    // worst-case contraction beta = 1 / t.
    Vec nearest(n, std::numeric_limits<double>::infinity());
    for (int i = 0; i < n; ++i) {
        const std::vector<int>& other = ds.labels[i] == 1 ? ds.neg_idx : ds.pos_idx;
        for (int j : other)
            nearest[i] = std::min(nearest[i], norm_sigma(diff(embedded[i], embedded[j])));
    }

    // Variables: c_plus (dim, free), c_minus (dim, free), t >= 0. The
    // variation bound norm_sigma(q_i - c) <= t * nearest[i] unrolls into one
    // row per ordered pair of padded indices:
    //   (q_a - c_a) - (q_b - c_b) <= 2 t nearest[i]
    const int t_var = 2 * dim;
    LinearProgram lp(2 * dim + 1);
    lp.set_sense(Sense::Minimize);
    for (int a = 0; a < dim; ++a) {
        lp.set_free(a);
        lp.set_free(dim + a);
        lp.set_name(a, "cp" + std::to_string(a));
        lp.set_name(dim + a, "cm" + std::to_string(a));
    }
    lp.set_name(t_var, "t");
    Vec obj(lp.num_vars(), 0.0);
    obj[t_var] = 1.0;
    lp.set_objective(obj);

    for (int i = 0; i < n; ++i) {
        const int center_off = ds.labels[i] == 1 ? 0 : dim;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                if (a == b) continue;
                Vec row(lp.num_vars(), 0.0);
                if (a < dim) row[center_off + a] -= 1.0;
                if (b < dim) row[center_off + b] += 1.0;
                row[t_var] = -2.0 * nearest[i];
                lp.add_row(std::move(row), Relation::LessEq,
                           padded(embedded[i], b) - padded(embedded[i], a));
            }
    }

    NnModel model;
    const LpSolution sol = solve(lp);
    if (sol.status == LpStatus::Optimal) {
        model.c_plus.assign(sol.x.begin(), sol.x.begin() + dim);
        model.c_minus.assign(sol.x.begin() + dim, sol.x.begin() + 2 * dim);
        model.t_value = sol.x[t_var];
        if (model.t_value <= tol::nn_infinite) {
            model.beta_infinite = true;
            model.beta = std::numeric_limits<double>::infinity();
        } else {
            model.beta = 1.0 / model.t_value;
            model.degenerate = model.beta < 1.0 + tol::feas;
        }
        return model;
    }

    // Coincident cross-class points can pin both centers to contradictory
    // positions; fall back to class means and report the achieved ratio.
    model.degenerate = true;
    model.c_plus = class_mean(embedded, ds.pos_idx, dim);
    model.c_minus = class_mean(embedded, ds.neg_idx, dim);
    double worst_t = 0.0;
    for (int i = 0; i < n; ++i) {
        const Vec& center = ds.labels[i] == 1 ? model.c_plus : model.c_minus;
        const double dist = norm_sigma(diff(embedded[i], center));
        if (nearest[i] > 0.0)
            worst_t = std::max(worst_t, dist / nearest[i]);
        else if (dist > 0.0)
            worst_t = std::numeric_limits<double>::infinity();
    }
    model.t_value = worst_t;
    model.beta = worst_t > 0.0 ? 1.0 / worst_t : std::numeric_limits<double>::infinity();
    model.beta_infinite = std::isinf(model.beta);
    return model;
}

NnPrediction classify_nn(const NnModel& model, const Domain& dom, const Vec& x) {
    if (static_cast<int>(model.c_plus.size()) != dom.num_facets() - 1)
        throw DimensionMismatch("DimensionMismatch: classifier has " +
                                std::to_string(model.c_plus.size() + 1) +
                                " embedded coordinates, domain has " +
                                std::to_string(dom.num_facets()) + " facets");
    const Vec v = embed_point(dom, x).canonical;
    const double d_plus = norm_sigma(diff(v, model.c_plus));
    const double d_minus = norm_sigma(diff(v, model.c_minus));
    if (std::abs(d_plus - d_minus) <= tol::boundary_sign) return {1, true};
    return {d_plus < d_minus ? 1 : -1, false};
}

}  // namespace hilbertsep
