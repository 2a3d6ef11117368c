#pragma once

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "confmap/tracer.hpp"

namespace confmap {

// Contour export, one row per traced point: level,x,y. Rows are grouped by
// polyline in trace order; %.17g keeps doubles round-trippable so reruns can
// be compared byte for byte.
inline void write_contour_csv(const std::string& path,
                              const std::vector<ContourPolyline>& contours,
                              Potential which) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw Error("cannot open for writing: " + path);
    char line[128];
    for (const auto& c : contours) {
        if (c.which != which) continue;
        for (const Vec2& p : c.pts) {
            int n = std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", c.level, p.x, p.y);
            std::fwrite(line, 1, (size_t)n, f);
        }
    }
    if (std::fclose(f) != 0) throw Error("write failed: " + path);
}

namespace detail {

inline void svg_polyline(std::string& out, const std::vector<Vec2>& pts) {
    char buf[64];
    out += "<polyline points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.10g,%.10g", i ? " " : "", pts[i].x, pts[i].y);
        out += buf;
    }
    out += "\"/>\n";
}

} // namespace detail

// Domain boundary plus the traced level curves of both potentials as a
// standalone SVG. Geometry is emitted in problem coordinates inside a
// scale(1,-1) group so the y axis points up.
inline void write_grid_svg(const std::string& path, const Domain& dom,
                           const std::vector<ContourPolyline>& contours) {
    BBox bb;
    for (const Vec2& v : dom.vertices) bb.absorb(v);
    for (size_t e = 0; e < dom.edges.size(); ++e)
        for (int i = 0; i <= 16; ++i) bb.absorb(dom.edge_point((int)e, i / 16.0));
    double diag = bb.diag();
    bb.pad(0.05 * diag);

    char buf[256];
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.10g %.10g %.10g %.10g\">\n",
                  bb.xmin, -bb.ymax, bb.xmax - bb.xmin, bb.ymax - bb.ymin);
    out += buf;
    out += "<g transform=\"scale(1,-1)\">\n";

    std::snprintf(buf, sizeof buf,
                  "<g id=\"boundary\" fill=\"none\" stroke=\"#000000\" stroke-width=\"%.10g\">\n",
                  0.004 * diag);
    out += buf;
    std::vector<Vec2> pts(65);
    for (size_t e = 0; e < dom.edges.size(); ++e) {
        if (dom.edges[e].tag == ArcTag::interior) continue;
        for (int i = 0; i <= 64; ++i) pts[i] = dom.edge_point((int)e, i / 64.0);
        detail::svg_polyline(out, pts);
    }
    out += "</g>\n";

    const char* color[2] = {"#c02020", "#2040c0"};
    for (int w = 0; w < 2; ++w) {
        std::snprintf(buf, sizeof buf,
                      "<g id=\"u%d\" fill=\"none\" stroke=\"%s\" stroke-width=\"%.10g\">\n", w + 1,
                      color[w], 0.002 * diag);
        out += buf;
        for (const auto& c : contours) {
            if ((int)c.which != w + 1 || c.pts.size() < 2) continue;
            detail::svg_polyline(out, c.pts);
        }
        out += "</g>\n";
    }
    out += "</g>\n</svg>\n";

    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw Error("cannot open for writing: " + path);
    std::fwrite(out.data(), 1, out.size(), f);
    if (std::fclose(f) != 0) throw Error("write failed: " + path);
}

} // namespace confmap
