#pragma once

#include <string>
#include <vector>

#include "hilbertsep/common.hpp"
#include "hilbertsep/geometry.hpp"
#include "hilbertsep/svm.hpp"

namespace hilbertsep {

/// Optional layers drawn on top of the domain polygon. Pointers refer to
/// caller-owned data and may be null; labels, when given, must parallel the
/// points.
struct RenderOptions {
    const std::vector<Vec>* points = nullptr;
    const std::vector<int>* labels = nullptr;
    const SeparatorModel* separator = nullptr;
    const Ball* ball = nullptr;
    int width = 640;
    int height = 640;
};

/// Deterministic SVG scene of a planar domain: the polygon outline, an
/// optional metric ball (clipped to the domain), an optional separator
/// chord, and the points colored by label. Throws DimensionNot2 for other
/// dimensions.
std::string render_svg(const Domain& dom, const RenderOptions& opts = {});

}  // namespace hilbertsep
