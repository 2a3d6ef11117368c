#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "confmap/gallery.hpp"

namespace confmap {

// A problem as given: a quadrilateral domain, or an uncut ring together with
// the vertex chain (inner loop to outer loop) along which it is to be cut.
struct ProblemDef {
    std::string id;
    Domain domain;
    std::vector<int> cut;

    bool is_ring() const { return domain.kind == DomainKind::ring; }
};

// The built-in problems, keyed by CLI name. `r` is the inner radius for
// disk-in-pentagon, `h` the aspect ratio for rectangle; both are ignored
// elsewhere.
inline ProblemDef gallery_problem(const std::string& name, std::optional<double> r = {},
                                  std::optional<double> h = {}) {
    ProblemDef p;
    p.id = name;
    auto quad = [&](Domain d) { p.domain = std::move(d); };
    auto ring = [&](gallery::RingDomain rd) {
        p.domain = std::move(rd.ring);
        p.cut = std::move(rd.cut);
    };
    if (name == "unit-disk") quad(gallery::disk_quad());
    else if (name == "flower") quad(gallery::flower_quad());
    else if (name == "circular-quadrilateral") quad(gallery::circular_quad());
    else if (name == "asteroid-cusp") quad(gallery::asteroid_quad());
    else if (name == "rectangle") quad(gallery::rectangle(h.value_or(1.0)));
    else if (name == "disk-in-pentagon") ring(gallery::disk_in_pentagon(r.value_or(0.5)));
    else if (name == "cross-in-square") ring(gallery::cross_in_square());
    else if (name == "circle-in-square") ring(gallery::circle_in_square());
    else if (name == "flower-in-square") ring(gallery::flower_in_square());
    else if (name == "circle-in-L") ring(gallery::circle_in_L());
    else if (name == "droplet-in-square") ring(gallery::droplet_in_square());
    else throw GeometryError("unknown gallery problem: " + name);
    return p;
}

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson json_vec2(const Vec2& v) { return ojson::array({v.x, v.y}); }

inline Vec2 vec2_from_json(const ojson& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

inline ojson json_curve(const Curve& c) {
    ojson j;
    if (auto* s = c.as_segment()) {
        j["type"] = "segment";
        j["a"] = json_vec2(s->a);
        j["b"] = json_vec2(s->b);
    } else if (auto* a = c.as_arc()) {
        j["type"] = "arc";
        j["center"] = json_vec2(a->center);
        j["radius"] = a->radius;
        j["a0"] = a->a0;
        j["a1"] = a->a1;
    } else if (auto* p = c.as_polynomial()) {
        j["type"] = "poly";
        j["re"] = p->re;
        j["im"] = p->im;
    } else {
        j["type"] = "polyline";
        ojson pts = ojson::array();
        for (const Vec2& q : c.as_polyline()->pts) pts.push_back(json_vec2(q));
        j["pts"] = std::move(pts);
    }
    return j;
}

inline Curve curve_from_json(const ojson& j) {
    const std::string t = j.at("type").get<std::string>();
    if (t == "segment") return Curve::segment(vec2_from_json(j.at("a")), vec2_from_json(j.at("b")));
    if (t == "arc")
        return Curve::circular_arc(vec2_from_json(j.at("center")), j.at("radius").get<double>(),
                                   j.at("a0").get<double>(), j.at("a1").get<double>());
    if (t == "poly")
        return Curve::polynomial(j.at("re").get<std::vector<double>>(),
                                 j.at("im").get<std::vector<double>>());
    if (t == "polyline") {
        std::vector<Vec2> pts;
        for (const auto& q : j.at("pts")) pts.push_back(vec2_from_json(q));
        return Curve::polyline(std::move(pts));
    }
    throw GeometryError("unknown curve type: " + t);
}

inline ojson json_domain(const Domain& d) {
    ojson j;
    j["kind"] = d.kind == DomainKind::ring ? "ring" : "quadrilateral";
    ojson verts = ojson::array();
    for (const Vec2& v : d.vertices) verts.push_back(json_vec2(v));
    j["vertices"] = std::move(verts);
    ojson curves = ojson::array();
    for (const Curve& c : d.curves) curves.push_back(json_curve(c));
    j["curves"] = std::move(curves);
    ojson edges = ojson::array();
    for (const DomainEdge& e : d.edges) {
        ojson je;
        je["v0"] = e.v0;
        je["v1"] = e.v1;
        je["curve"] = e.curve;
        je["t0"] = e.t0;
        je["t1"] = e.t1;
        je["tag"] = arc_tag_name(e.tag);
        je["order0"] = e.order0;
        je["order1"] = e.order1;
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    ojson blocks = ojson::array();
    for (const DomainBlock& b : d.blocks)
        blocks.push_back(ojson::array({b.v[0], b.v[1], b.v[2], b.v[3]}));
    j["blocks"] = std::move(blocks);
    j["corners"] = ojson::array({d.corners[0], d.corners[1], d.corners[2], d.corners[3]});
    ojson marked = ojson::array();
    for (const MarkedVertex& m : d.marked) {
        ojson jm;
        jm["vertex"] = m.vertex;
        jm["max_levels"] = m.max_levels;
        marked.push_back(std::move(jm));
    }
    j["marked"] = std::move(marked);
    return j;
}

// Block side edges and orientations are derived from the corner ids, so only
// the raw description travels; validate() re-checks everything on load.
inline Domain domain_from_json(const ojson& j) {
    Domain d;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ring") d.kind = DomainKind::ring;
    else if (kind == "quadrilateral") d.kind = DomainKind::quadrilateral;
    else throw GeometryError("unknown domain kind: " + kind);
    for (const auto& v : j.at("vertices")) d.vertices.push_back(vec2_from_json(v));
    for (const auto& c : j.at("curves")) d.curves.push_back(curve_from_json(c));
    for (const auto& je : j.at("edges")) {
        DomainEdge e;
        e.v0 = je.at("v0").get<int>();
        e.v1 = je.at("v1").get<int>();
        e.curve = je.at("curve").get<int>();
        e.t0 = je.at("t0").get<double>();
        e.t1 = je.at("t1").get<double>();
        e.tag = arc_tag_from(je.at("tag").get<std::string>());
        e.order0 = je.at("order0").get<double>();
        e.order1 = je.at("order1").get<double>();
        d.edges.push_back(e);
    }
    for (const auto& jb : j.at("blocks")) {
        DomainBlock b;
        for (int i = 0; i < 4; ++i) b.v[i] = jb.at(i).get<int>();
        d.blocks.push_back(b);
    }
    for (int i = 0; i < 4; ++i) d.corners[i] = j.at("corners").at(i).get<int>();
    for (const auto& jm : j.at("marked"))
        d.marked.push_back({jm.at("vertex").get<int>(), jm.at("max_levels").get<int>()});
    d.link_blocks();
    d.validate();
    return d;
}

} // namespace detail

inline std::string problem_to_json(const ProblemDef& p) {
    detail::ojson j;
    j["format"] = "confmap-problem/1";
    j["id"] = p.id;
    j["domain"] = detail::json_domain(p.domain);
    j["cut"] = p.cut;
    return j.dump(2) + "\n";
}

inline ProblemDef problem_from_json(const std::string& text) {
    detail::ojson j = detail::ojson::parse(text);
    if (j.at("format").get<std::string>() != "confmap-problem/1")
        throw GeometryError("not a confmap-problem/1 document");
    ProblemDef p;
    p.id = j.at("id").get<std::string>();
    p.domain = detail::domain_from_json(j.at("domain"));
    p.cut = j.at("cut").get<std::vector<int>>();
    if (p.is_ring() != !p.cut.empty())
        throw GeometryError("cut chain must be present exactly for ring problems");
    return p;
}

inline void save_problem(const std::string& path, const ProblemDef& p) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for writing: " + path);
    f << problem_to_json(p);
    if (!f) throw Error("write failed: " + path);
}

inline ProblemDef load_problem(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open: " + path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return problem_from_json(text);
}

} // namespace confmap
