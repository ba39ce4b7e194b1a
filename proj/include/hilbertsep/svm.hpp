#pragma once

#include <vector>

#include "hilbertsep/common.hpp"
#include "hilbertsep/geometry.hpp"
#include "hilbertsep/lp.hpp"

namespace hilbertsep {

/// Binary-labeled training set of strictly interior points.
struct LabeledDataset {
    std::vector<InteriorPoint> points;
    std::vector<int> labels;  // +1 or -1 per point
    std::vector<int> pos_idx, neg_idx;

    int size() const { return static_cast<int>(points.size()); }
};

/// Validates interiority of every point and nonemptiness of both classes.
/// Labels must be +1 or -1 (file loaders map their own conventions first).
LabeledDataset make_dataset(const Domain& dom, const std::vector<Vec>& points,
                            const std::vector<int>& labels);

enum class BoundMode { Data, BitComplexity };

/// Upper bound on the achievable margin. Data mode: half the smallest
/// cross-class pairwise distance (a separator splits every such pair, and
/// each side costs at least the margin). BitComplexity mode: the coarse
/// input-encoding bound (8B + 4 log2 d) ln 2 for B-bit rational inputs.
double margin_upper_bound(const Domain& dom, const LabeledDataset& ds, BoundMode mode,
                          int bits = 64);

/// Radii r_t = t * epsilon for t = 1..count, covering (0, upper_bound].
struct SearchGrid {
    double epsilon = 0.0;
    double upper_bound = 0.0;
    int count = 0;

    double radius(int t) const { return t * epsilon; }
};

SearchGrid make_search_grid(double upper_bound, double epsilon);

/// Per-point Euclidean boundary-proximity weights: omega_i is the inverse of
/// the smallest Euclidean distance from p_i to any facet of the domain.
Vec point_weights(const Domain& dom, const LabeledDataset& ds);

/// Assembled separability test for one normalization: variables are the
/// separator (w, c), one nonnegative multiplier block y(i) per point (and,
/// in soft mode, one slack xi_i per point). The constraints state that each
/// point's metric ball lies on its label's side of the separator, written as
/// a conical combination of the ball's bounding rows:
///   rows(i)' y(i) = label_i * w   and   offs(i)' y(i) <= label_i * c [+ xi_i]
/// plus the anti-trivial normalization row over w. Ball rows are rescaled to
/// unit max-abs coefficient (a positive per-row scaling, absorbed by y) to
/// keep the tableau well conditioned at large radii.
struct SeparabilityLp {
    LinearProgram lp;
    int dim = 0;
    int n = 0;
    int rows_per_ball = 0;
    int w_offset = 0, c_offset = 0, xi_offset = -1, y_offset = 0;
    std::vector<std::vector<Hyperplane>> ball_rows;  // the rescaled systems
    Vec norm_coeffs;
    double norm_rhs = 1.0;
};

SeparabilityLp build_separability_lp(const Domain& dom, const LabeledDataset& ds, double r,
                                     MetricKind metric, double normalization);

/// Feasible-solution certificate: the separator plus the per-point conical
/// multipliers, against the ball rows stored in SeparabilityResult.
struct SeparationWitness {
    Vec w;
    double c = 0.0;
    std::vector<Vec> y;
    Vec norm_coeffs;
    double norm_rhs = 0.0;
};

struct SeparabilityResult {
    bool separable = false;
    SeparationWitness witness;  // populated only when separable
    std::vector<std::vector<Hyperplane>> ball_rows;
};

/// The two-sided default tries 1'w = +1 then -1; exhaustive additionally
/// tries w_j = +1 and w_j = -1 for every coordinate, covering separators
/// with 1'w = 0.
enum class NormalizationMode { TwoSided, Exhaustive };

SeparabilityResult separable_at(const Domain& dom, const LabeledDataset& ds, double r,
                                MetricKind metric,
                                NormalizationMode mode = NormalizationMode::TwoSided);

enum class SeparatorKind { Hard, Soft };

struct SeparatorModel {
    Vec w;
    double c = 0.0;
    MetricKind metric = MetricKind::Hilbert;
    SeparatorKind kind = SeparatorKind::Hard;
    double margin = 0.0;       // hard: certified radius; soft: selected radius
    Vec xi;                    // soft only: per-point slacks
    double total_penalty = 0.0;  // soft only: weighted slack sum
    double C = 0.0;            // soft only: tradeoff constant
};

struct TrainOptions {
    NormalizationMode normalization = NormalizationMode::TwoSided;
    // Re-solve at the final radius with both normalizations and keep the
    // witness with the larger minimum point clearance (off by default; the
    // plain driver returns the last feasible probe's witness).
    bool polish = false;
};

struct HardTrainStats {
    int feasibility_tests = 0;  // bisection probes, excluding the r=0 precheck
    double upper_bound = 0.0;
    int grid_count = 0;
};

/// Maximum-margin training: verifies separability at r = 0, then integer
/// bisection over the search grid (ball nesting makes feasibility monotone),
/// returning the largest feasible grid radius and its witness. The result is
/// within epsilon of the optimal margin.
SeparatorModel train_hard(const Domain& dom, const LabeledDataset& ds, double epsilon,
                          MetricKind metric, const TrainOptions& opts = {},
                          HardTrainStats* stats = nullptr);

struct SoftGridEntry {
    double r = 0.0;
    double penalty = 0.0;  // optimal weighted slack sum at this radius
    double score = 0.0;    // r - C * penalty / n
    double norm_rhs = 0.0;
};

struct SoftTrainStats {
    std::vector<SoftGridEntry> table;
    int selected = -1;
};

/// Soft-margin training: full scan over the grid (no bisection; the score is
/// not monotone), minimizing the weighted slack sum at each radius under
/// both normalizations, then argmax of r - C * penalty / n with ties going
/// to the larger radius.
SeparatorModel train_soft(const Domain& dom, const LabeledDataset& ds, double epsilon, double C,
                          MetricKind metric, const TrainOptions& opts = {},
                          SoftTrainStats* stats = nullptr);

struct Prediction {
    int label = 0;
    bool boundary = false;  // |w'x + c| below the sign tolerance (reported +1)
};

Prediction classify(const SeparatorModel& model, const Vec& x);

}  // namespace hilbertsep
