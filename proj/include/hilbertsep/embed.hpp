#pragma once

#include <vector>

#include "hilbertsep/common.hpp"
#include "hilbertsep/geometry.hpp"
#include "hilbertsep/svm.hpp"

namespace hilbertsep {

/// Log-clearance image of an interior point: phi[i] = ln f_i(p) over the m
/// facets, and the canonical representative with the last coordinate
/// subtracted out (length m - 1). Subtracting any fixed coordinate picks one
/// member of the additive-constant equivalence class; the variation seminorm
/// below does not depend on the choice.
struct EmbeddedPoint {
    Vec phi;
    Vec canonical;
};

EmbeddedPoint embed_point(const Domain& dom, const Vec& p);

/// Variation seminorm of the zero-padded vector: append a literal 0, then
/// (max - min) / 2. On canonical embeddings the padded slot stands for the
/// subtracted last coordinate, and the distance between two embedded points
/// under this seminorm equals their metric distance in the domain.
double norm_sigma(const Vec& x);

double embedded_distance(const Domain& dom, const Vec& p, const Vec& q);

/// Nearest-neighbor classifier in the embedded space: one center per class,
/// chosen so that every training point is closer to its own center than to
/// any opposite-class point by the contraction factor beta (larger is
/// better). beta <= 1 means the centers fail to dominate and the classifier
/// carries a degenerate warning.
struct NnModel {
    Vec c_plus, c_minus;  // canonical coordinates, length m - 1
    double beta = 0.0;
    bool beta_infinite = false;
    bool degenerate = false;
    double t_value = 0.0;  // optimal contraction variable (beta = 1 / t)
};

NnModel train_nn(const Domain& dom, const LabeledDataset& ds);

struct NnPrediction {
    int label = 0;
    bool tie = false;  // equidistant centers (reported +1)
};

NnPrediction classify_nn(const NnModel& model, const Domain& dom, const Vec& x);

}  // namespace hilbertsep
