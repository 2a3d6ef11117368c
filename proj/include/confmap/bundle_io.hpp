#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "confmap/conjugate.hpp"
#include "confmap/problem_io.hpp"

namespace confmap {

// A solved map on disk: the discretization (for rings, of the cut ring) plus
// both coefficient vectors and the derived constants. Enough to re-evaluate
// f or w anywhere without re-solving.
struct MapBundle {
    std::string id;
    bool ring = false;
    QuadMap quad;
    double cap = 0, modulus = 0, rho = 0; // ring only
    std::vector<Vec2> cut_pts;            // ring only: traced cut polyline

    RingMap as_ring() const {
        if (!ring) throw GeometryError("bundle does not hold a ring map");
        RingMap rm;
        rm.quad = quad;
        rm.cap = cap;
        rm.modulus = modulus;
        rm.rho = rho;
        return rm;
    }
};

namespace detail {

inline ojson json_mesh(const Mesh& m) {
    ojson j;
    ojson xy = ojson::array();
    for (const Vec2& v : m.xy) xy.push_back(json_vec2(v));
    j["xy"] = std::move(xy);
    ojson edges = ojson::array();
    for (const MeshEdge& e : m.edges) {
        ojson je;
        je["v0"] = e.v0;
        je["v1"] = e.v1;
        je["curve"] = e.curve;
        je["t0"] = e.t0;
        je["t1"] = e.t1;
        je["tag"] = arc_tag_name(e.tag);
        je["domain_edge"] = e.domain_edge;
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    ojson elems = ojson::array();
    for (const MeshElement& el : m.elems) {
        ojson je;
        je["v"] = ojson::array({el.v[0], el.v[1], el.v[2], el.v[3]});
        je["edge"] = ojson::array({el.edge[0], el.edge[1], el.edge[2], el.edge[3]});
        je["block"] = el.block;
        elems.push_back(std::move(je));
    }
    j["elems"] = std::move(elems);
    return j;
}

inline Mesh mesh_from_json(const ojson& j, Domain domain) {
    Mesh m;
    m.domain = std::move(domain);
    for (const auto& v : j.at("xy")) m.xy.push_back(vec2_from_json(v));
    for (const auto& je : j.at("edges")) {
        MeshEdge e;
        e.v0 = je.at("v0").get<int>();
        e.v1 = je.at("v1").get<int>();
        e.curve = je.at("curve").get<int>();
        e.t0 = je.at("t0").get<double>();
        e.t1 = je.at("t1").get<double>();
        e.tag = arc_tag_from(je.at("tag").get<std::string>());
        e.domain_edge = je.at("domain_edge").get<int>();
        m.edges.push_back(e);
    }
    for (const auto& je : j.at("elems")) {
        MeshElement el;
        for (int i = 0; i < 4; ++i) el.v[i] = je.at("v").at(i).get<int>();
        for (int i = 0; i < 4; ++i) el.edge[i] = je.at("edge").at(i).get<int>();
        el.block = je.at("block").get<int>();
        m.elems.push_back(el);
    }
    return m;
}

inline std::vector<double> eigen_to_std(const Eigen::VectorXd& x) {
    return {x.data(), x.data() + x.size()};
}

} // namespace detail

inline std::string map_to_json(const MapBundle& b) {
    detail::ojson j;
    j["format"] = "confmap-map/1";
    j["id"] = b.id;
    j["kind"] = b.ring ? "annulus" : "rectangle";
    j["p"] = b.quad.dofs.p;
    j["domain"] = detail::json_domain(b.quad.mesh->domain);
    j["mesh"] = detail::json_mesh(*b.quad.mesh);
    j["u1"] = detail::eigen_to_std(b.quad.u1);
    j["u2"] = detail::eigen_to_std(b.quad.u2);
    j["m1"] = b.quad.m1;
    j["m2"] = b.quad.m2;
    j["h"] = b.quad.h;
    j["rec"] = b.quad.rec;
    if (b.ring) {
        j["cap"] = b.cap;
        j["modulus"] = b.modulus;
        j["rho"] = b.rho;
        detail::ojson cut = detail::ojson::array();
        for (const Vec2& p : b.cut_pts) cut.push_back(detail::json_vec2(p));
        j["cut"] = std::move(cut);
    }
    return j.dump(2) + "\n";
}

inline MapBundle map_from_json(const std::string& text) {
    detail::ojson j = detail::ojson::parse(text);
    if (j.at("format").get<std::string>() != "confmap-map/1")
        throw GeometryError("not a confmap-map/1 document");
    MapBundle b;
    b.id = j.at("id").get<std::string>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "annulus") b.ring = true;
    else if (kind != "rectangle") throw GeometryError("unknown map kind: " + kind);

    int p = j.at("p").get<int>();
    Domain dom = detail::domain_from_json(j.at("domain"));
    auto mesh = std::make_shared<Mesh>(detail::mesh_from_json(j.at("mesh"), std::move(dom)));

    QuadMap& q = b.quad;
    q.mesh = mesh;
    q.dofs = DofTable::build(*mesh, p);
    auto u1 = j.at("u1").get<std::vector<double>>();
    auto u2 = j.at("u2").get<std::vector<double>>();
    if ((int)u1.size() != q.dofs.n || (int)u2.size() != q.dofs.n)
        throw GeometryError("coefficient count does not match discretization");
    q.u1 = Eigen::Map<const Eigen::VectorXd>(u1.data(), (long)u1.size());
    q.u2 = Eigen::Map<const Eigen::VectorXd>(u2.data(), (long)u2.size());
    q.m1 = j.at("m1").get<double>();
    q.m2 = j.at("m2").get<double>();
    q.h = j.at("h").get<double>();
    q.rec = j.at("rec").get<double>();
    q.ev1 = std::make_shared<FieldEval>(*mesh, q.dofs, q.u1);
    q.ev2 = std::make_shared<FieldEval>(*mesh, q.dofs, q.u2);

    if (b.ring) {
        b.cap = j.at("cap").get<double>();
        b.modulus = j.at("modulus").get<double>();
        b.rho = j.at("rho").get<double>();
        for (const auto& v : j.at("cut")) b.cut_pts.push_back(detail::vec2_from_json(v));
    }
    return b;
}

inline void save_map(const std::string& path, const MapBundle& b) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for writing: " + path);
    f << map_to_json(b);
    if (!f) throw Error("write failed: " + path);
}

inline MapBundle load_map(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open: " + path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return map_from_json(text);
}

} // namespace confmap
