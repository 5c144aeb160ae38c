#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "json.hpp"
#include "mesh.hpp"

namespace plateau {

/// Sidecar file that carries torus data next to an OBJ file.
inline std::filesystem::path sidecar_path(const std::filesystem::path& obj) {
    auto p = obj;
    p.replace_extension(".shifts.json");
    return p;
}

inline nlohmann::json ambient_to_json(const Ambient& a) {
    nlohmann::json j;
    j["kind"] = a.is_torus() ? "FlatTorus3" : "Euclidean3";
    if (a.is_torus()) {
        j["periods"] = {a.periods.x, a.periods.y, a.periods.z};
        if (a.excluded) {
            nlohmann::json base = nlohmann::json::array(), top = nlohmann::json::array();
            for (const auto& p : a.excluded->base) base.push_back({p.x, p.y, p.z});
            for (const auto& p : a.excluded->top) top.push_back({p.x, p.y, p.z});
            j["excluded"] = {{"base", base}, {"top", top}};
        }
    }
    return j;
}

inline Ambient ambient_from_json(const nlohmann::json& j) {
    if (j.at("kind").get<std::string>() == "Euclidean3") return Ambient::euclidean();
    const auto& per = j.at("periods");
    std::optional<Parallelepiped> ex;
    if (j.contains("excluded")) {
        Parallelepiped box;
        for (std::size_t i = 0; i < 4; ++i) {
            const auto& b = j["excluded"]["base"][i];
            const auto& t = j["excluded"]["top"][i];
            box.base[i] = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>()};
            box.top[i] = {t[0].get<double>(), t[1].get<double>(), t[2].get<double>()};
        }
        ex = box;
    }
    return Ambient::flat_torus({per[0].get<double>(), per[1].get<double>(), per[2].get<double>()}, ex);
}

inline void write_obj(const TriSurfaceMesh& m, std::ostream& os) {
    os << std::setprecision(17);
    for (const auto& p : m.vertices) os << "v " << p.x << ' ' << p.y << ' ' << p.z << '\n';
    for (const auto& t : m.triangles) os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

/// Writes an OBJ file; torus meshes also get a sidecar with ambient, lifts and pins.
inline void write_obj(const TriSurfaceMesh& m, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    write_obj(m, os);
    if (m.ambient.is_torus()) {
        nlohmann::json j;
        j["ambient"] = ambient_to_json(m.ambient);
        nlohmann::json lifts = nlohmann::json::array();
        for (const auto& tl : m.tri_lifts) {
            nlohmann::json t = nlohmann::json::array();
            for (const auto& s : tl) t.push_back({s[0], s[1], s[2]});
            lifts.push_back(t);
        }
        j["tri_lifts"] = lifts;
        std::vector<int> pins(m.boundary_fixed.begin(), m.boundary_fixed.end());
        j["boundary_fixed"] = pins;
        std::ofstream side(sidecar_path(path), std::ios::binary);
        side << j.dump(1) << '\n';
    }
}

inline void write_polyline_obj(const ClosedPolyline& c, std::ostream& os) {
    os << std::setprecision(17);
    for (const auto& p : c.vertices) os << "v " << p.x << ' ' << p.y << ' ' << p.z << '\n';
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) os << "l " << i + 1 << ' ' << (i + 1) % n + 1 << '\n';
}

/// Reads "v" and "f" records (polygon faces are fanned). Boundary vertices are
/// pinned unless the sidecar says otherwise.
inline TriSurfaceMesh read_obj(std::istream& is) {
    TriSurfaceMesh m;
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            Point3 p;
            ls >> p.x >> p.y >> p.z;
            if (!ls) throw Error("malformed vertex line: " + line);
            m.vertices.push_back(p);
        } else if (tag == "f") {
            std::vector<int> idx;
            std::string tok;
            while (ls >> tok) {
                const int v = std::stoi(tok.substr(0, tok.find('/')));
                idx.push_back(v > 0 ? v - 1 : static_cast<int>(m.vertices.size()) + v);
            }
            if (idx.size() < 3) throw Error("face with fewer than 3 vertices");
            for (std::size_t k = 1; k + 1 < idx.size(); ++k) m.triangles.push_back({idx[0], idx[k], idx[k + 1]});
        }
    }
    pin_boundary(m);
    return m;
}

inline TriSurfaceMesh read_obj(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path.string());
    TriSurfaceMesh m = read_obj(is);
    const auto side = sidecar_path(path);
    if (std::filesystem::exists(side)) {
        std::ifstream js(side);
        const auto j = nlohmann::json::parse(js);
        m.ambient = ambient_from_json(j.at("ambient"));
        m.tri_lifts.clear();
        for (const auto& t : j.at("tri_lifts")) {
            TriLift tl;
            for (std::size_t c = 0; c < 3; ++c) tl[c] = {t[c][0].get<int>(), t[c][1].get<int>(), t[c][2].get<int>()};
            m.tri_lifts.push_back(tl);
        }
        if (m.tri_lifts.size() != m.triangles.size()) throw Error("sidecar lift count does not match faces");
        const auto pins = j.at("boundary_fixed").get<std::vector<int>>();
        if (pins.size() != m.vertices.size()) throw Error("sidecar pin count does not match vertices");
        m.boundary_fixed.assign(pins.begin(), pins.end());
    }
    validate_mesh(m);
    return m;
}

}  // namespace plateau
