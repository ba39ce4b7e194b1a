#include "hilbertsep/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <utility>

namespace hilbertsep {

namespace {

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// Vertex enumeration of a 2-D halfspace intersection: every pairwise line
// crossing that satisfies all rows, deduplicated and sorted by angle around
// the centroid. Rows arrive rescaled so the tolerances are scale-free.
std::vector<Vec> polygon_vertices(std::vector<Hyperplane> rows) {
    rescale_rows(rows);
    std::vector<Vec> verts;
    const int m = static_cast<int>(rows.size());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double det = rows[i].w[0] * rows[j].w[1] - rows[i].w[1] * rows[j].w[0];
            if (std::abs(det) <= 1e-12) continue;
            const Vec x = {(-rows[i].c * rows[j].w[1] + rows[j].c * rows[i].w[1]) / det,
                           (-rows[j].c * rows[i].w[0] + rows[i].c * rows[j].w[0]) / det};
            bool inside = true;
            for (const Hyperplane& h : rows)
                if (h.eval(x) < -1e-9) {
                    inside = false;
                    break;
                }
            if (!inside) continue;
            bool dup = false;
            for (const Vec& v : verts)
                if (euclid_dist(v, x) <= 1e-9) {
                    dup = true;
                    break;
                }
            if (!dup) verts.push_back(x);
        }
    if (verts.size() < 3) return verts;
    Vec centroid = {0.0, 0.0};
    for (const Vec& v : verts) {
        centroid[0] += v[0];
        centroid[1] += v[1];
    }
    centroid[0] /= verts.size();
    centroid[1] /= verts.size();
    std::sort(verts.begin(), verts.end(), [&](const Vec& a, const Vec& b) {
        return std::atan2(a[1] - centroid[1], a[0] - centroid[0]) <
               std::atan2(b[1] - centroid[1], b[0] - centroid[0]);
    });
    return verts;
}

struct Viewport {
    double scale = 1.0, x0 = 0.0, y0 = 0.0;
    double height = 0.0;

    // World to pixel, with the y axis flipped for SVG.
    std::pair<double, double> map(const Vec& p) const {
        return {(p[0] - x0) * scale, height - (p[1] - y0) * scale};
    }
};

std::string polygon_path(const std::vector<Vec>& verts, const Viewport& vp) {
    std::ostringstream path;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const auto [x, y] = vp.map(verts[i]);
        path << (i == 0 ? "M" : " L") << px(x) << "," << px(y);
    }
    path << " Z";
    return path.str();
}

}  // namespace

std::string render_svg(const Domain& dom, const RenderOptions& opts) {
    if (dom.dimension != 2)
        throw DimensionNot2("DimensionNot2: rendering works on planar domains only");

    const double margin_frac = 0.05;
    const double span_x = dom.bbox_hi[0] - dom.bbox_lo[0];
    const double span_y = dom.bbox_hi[1] - dom.bbox_lo[1];
    Viewport vp;
    vp.x0 = dom.bbox_lo[0] - margin_frac * span_x;
    vp.y0 = dom.bbox_lo[1] - margin_frac * span_y;
    const double world_w = span_x * (1.0 + 2.0 * margin_frac);
    const double world_h = span_y * (1.0 + 2.0 * margin_frac);
    vp.scale = std::min(opts.width / world_w, opts.height / world_h);
    vp.height = world_h * vp.scale;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(world_w * vp.scale)
        << "\" height=\"" << px(vp.height) << "\" viewBox=\"0 0 " << px(world_w * vp.scale)
        << " " << px(vp.height) << "\">\n";

    svg << "  <path d=\"" << polygon_path(polygon_vertices(dom.hyperplanes), vp)
        << "\" fill=\"#f5f5f0\" stroke=\"#444444\" stroke-width=\"1.5\"/>\n";

    if (opts.ball) {
        std::vector<Hyperplane> rows = opts.ball->rows;
        rows.insert(rows.end(), dom.hyperplanes.begin(), dom.hyperplanes.end());
        const std::vector<Vec> verts = polygon_vertices(std::move(rows));
        if (verts.size() >= 3)
            svg << "  <path d=\"" << polygon_path(verts, vp)
                << "\" fill=\"#a6cee3\" fill-opacity=\"0.55\" stroke=\"#1f78b4\" "
                   "stroke-width=\"1\"/>\n";
        const auto [cx, cy] = vp.map(opts.ball->center.coords);
        svg << "  <circle cx=\"" << px(cx) << "\" cy=\"" << px(cy)
            << "\" r=\"3\" fill=\"#1f78b4\"/>\n";
    }

    if (opts.separator) {
        const Vec& w = opts.separator->w;
        const double c = opts.separator->c;
        const double wn2 = dot(w, w);
        if (wn2 > 0.0) {
            // Clip the line {w'x + c = 0} to the domain: start from the
            // closest point to the origin and walk both ways.
            const Vec base = {-c * w[0] / wn2, -c * w[1] / wn2};
            const Vec dir = {-w[1], w[0]};
            double s_lo = -std::numeric_limits<double>::infinity();
            double s_hi = std::numeric_limits<double>::infinity();
            for (const Hyperplane& h : dom.hyperplanes) {
                const double gain = dot(h.w, dir);
                const double value = h.eval(base);
                if (std::abs(gain) <= tol::chord_parallel) {
                    if (value < 0.0) s_lo = s_hi = 0.0;  // line misses the domain
                    continue;
                }
                if (gain > 0.0)
                    s_lo = std::max(s_lo, -value / gain);
                else
                    s_hi = std::min(s_hi, -value / gain);
            }
            if (s_hi > s_lo) {
                const auto [x1, y1] = vp.map({base[0] + s_lo * dir[0], base[1] + s_lo * dir[1]});
                const auto [x2, y2] = vp.map({base[0] + s_hi * dir[0], base[1] + s_hi * dir[1]});
                svg << "  <line x1=\"" << px(x1) << "\" y1=\"" << px(y1) << "\" x2=\"" << px(x2)
                    << "\" y2=\"" << px(y2)
                    << "\" stroke=\"#33a02c\" stroke-width=\"2\"/>\n";
            }
        }
    }

    if (opts.points) {
        for (std::size_t i = 0; i < opts.points->size(); ++i) {
            const auto [x, y] = vp.map((*opts.points)[i]);
            const char* color = "#777777";
            if (opts.labels && i < opts.labels->size())
                color = (*opts.labels)[i] == 1 ? "#1f78b4" : "#e31a1c";
            svg << "  <circle cx=\"" << px(x) << "\" cy=\"" << px(y) << "\" r=\"4\" fill=\""
                << color << "\" stroke=\"#222222\" stroke-width=\"0.8\"/>\n";
        }
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace hilbertsep
