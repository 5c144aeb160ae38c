#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <map>
#include <numeric>
#include <vector>

#include "polyline.hpp"

namespace plateau {

using Tri = std::array<int, 3>;
using TriLift = std::array<ShiftVec, 3>;

/// Oriented triangle mesh. In a flat torus every triangle corner carries a
/// lattice lift; the lifted corner is vertices[v] + lift*periods, so the shift
/// of a directed edge v->w inside a triangle is lift(w) - lift(v).
struct TriSurfaceMesh {
    Ambient ambient;
    std::vector<Point3> vertices;
    std::vector<Tri> triangles;
    std::vector<char> boundary_fixed;
    std::vector<TriLift> tri_lifts;  // empty in a euclidean ambient

    std::size_t num_vertices() const { return vertices.size(); }
    std::size_t num_triangles() const { return triangles.size(); }
    bool has_lifts() const { return !tri_lifts.empty(); }

    ShiftVec lift(std::size_t t, int corner) const {
        return has_lifts() ? tri_lifts[t][static_cast<std::size_t>(corner)] : ShiftVec{};
    }

    Point3 corner(std::size_t t, int c) const {
        const int v = triangles[t][static_cast<std::size_t>(c)];
        return vertices[static_cast<std::size_t>(v)] + ambient.lattice(lift(t, c));
    }

    std::array<Point3, 3> corners(std::size_t t) const { return {corner(t, 0), corner(t, 1), corner(t, 2)}; }
};

/// Directed edge key: (from, to, shift) where shift maps `to` into the frame of `from`.
using EdgeKey = std::array<int, 5>;

inline EdgeKey make_edge_key(int v, int w, const ShiftVec& s) { return {v, w, s[0], s[1], s[2]}; }
inline EdgeKey reverse_key(const EdgeKey& k) { return {k[1], k[0], -k[2], -k[3], -k[4]}; }
inline EdgeKey undirected_key(const EdgeKey& k) { return k[0] < k[1] ? k : reverse_key(k); }

inline EdgeKey tri_edge_key(const TriSurfaceMesh& m, std::size_t t, int c) {
    const int c2 = (c + 1) % 3;
    return make_edge_key(m.triangles[t][static_cast<std::size_t>(c)], m.triangles[t][static_cast<std::size_t>(c2)],
                         m.lift(t, c2) - m.lift(t, c));
}

struct EdgeUse {
    std::size_t tri;
    int corner;  // edge runs from this corner to the next
};

/// Undirected edge -> the triangle corners using it.
inline std::map<EdgeKey, std::vector<EdgeUse>> edge_map(const TriSurfaceMesh& m) {
    std::map<EdgeKey, std::vector<EdgeUse>> out;
    for (std::size_t t = 0; t < m.triangles.size(); ++t)
        for (int c = 0; c < 3; ++c) out[undirected_key(tri_edge_key(m, t, c))].push_back({t, c});
    return out;
}

inline ShiftVec edge_shift(const TriSurfaceMesh& m, int v, int w) {
    for (std::size_t t = 0; t < m.triangles.size(); ++t)
        for (int c = 0; c < 3; ++c) {
            const EdgeKey k = tri_edge_key(m, t, c);
            if (k[0] == v && k[1] == w) return {k[2], k[3], k[4]};
            if (k[0] == w && k[1] == v) return {-k[2], -k[3], -k[4]};
        }
    throw Error("vertex pair is not a mesh edge");
}

inline Vec3 edge_vector(const TriSurfaceMesh& m, int v, int w) {
    const ShiftVec s = edge_shift(m, v, w);
    return m.vertices[static_cast<std::size_t>(w)] + m.ambient.lattice(s) - m.vertices[static_cast<std::size_t>(v)];
}

inline Vec3 triangle_normal(const std::array<Point3, 3>& p) { return cross(p[1] - p[0], p[2] - p[0]); }
inline double triangle_area(const std::array<Point3, 3>& p) { return 0.5 * norm(triangle_normal(p)); }

/// Neumaier-compensated sum over triangle areas.
inline double mesh_area(const TriSurfaceMesh& m) {
    double sum = 0.0, comp = 0.0;
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        const double a = triangle_area(m.corners(t));
        const double s = sum + a;
        comp += std::abs(sum) >= std::abs(a) ? (sum - s) + a : (a - s) + sum;
        sum = s;
    }
    return sum + comp;
}

inline int euler_characteristic(const TriSurfaceMesh& m) {
    std::vector<char> used(m.vertices.size(), 0);
    for (const auto& t : m.triangles)
        for (int v : t) used[static_cast<std::size_t>(v)] = 1;
    const auto nv = std::count(used.begin(), used.end(), 1);
    const auto ne = edge_map(m).size();
    return static_cast<int>(nv) - static_cast<int>(ne) + static_cast<int>(m.triangles.size());
}

/// Directed boundary edges, in triangle order.
inline std::vector<EdgeKey> boundary_edges(const TriSurfaceMesh& m) {
    const auto em = edge_map(m);
    std::vector<EdgeKey> out;
    for (std::size_t t = 0; t < m.triangles.size(); ++t)
        for (int c = 0; c < 3; ++c) {
            const EdgeKey k = tri_edge_key(m, t, c);
            if (em.at(undirected_key(k)).size() == 1) out.push_back(k);
        }
    return out;
}

inline std::vector<char> boundary_vertex_mask(const TriSurfaceMesh& m) {
    std::vector<char> mask(m.vertices.size(), 0);
    for (const auto& k : boundary_edges(m)) {
        mask[static_cast<std::size_t>(k[0])] = 1;
        mask[static_cast<std::size_t>(k[1])] = 1;
    }
    return mask;
}

/// Boundary edges chained into loops, oriented as induced by the triangles.
inline std::vector<ClosedPolyline> boundary_loops(const TriSurfaceMesh& m) {
    const auto edges = boundary_edges(m);
    std::multimap<int, std::size_t> outgoing;
    for (std::size_t i = 0; i < edges.size(); ++i) outgoing.emplace(edges[i][0], i);
    std::vector<char> used(edges.size(), 0);
    std::vector<ClosedPolyline> loops;
    for (std::size_t start = 0; start < edges.size(); ++start) {
        if (used[start]) continue;
        std::vector<Point3> verts;
        std::vector<ShiftVec> shifts;
        std::size_t e = start;
        while (true) {
            used[e] = 1;
            verts.push_back(m.vertices[static_cast<std::size_t>(edges[e][0])]);
            shifts.push_back({edges[e][2], edges[e][3], edges[e][4]});
            const int next_v = edges[e][1];
            if (next_v == edges[start][0]) break;
            std::size_t next = edges.size();
            auto [lo, hi] = outgoing.equal_range(next_v);
            for (auto it = lo; it != hi; ++it)
                if (!used[it->second]) { next = it->second; break; }
            if (next == edges.size()) throw Error("boundary edges do not close into a loop");
            e = next;
        }
        loops.emplace_back(std::move(verts), m.ambient, std::move(shifts));
    }
    return loops;
}

/// Signed number of times the boundary covers the target curve.
inline int boundary_multiplicity(const TriSurfaceMesh& m, const ClosedPolyline& target, double tol) {
    const auto s = arc_lengths(target);
    const double total = s.back();
    int sum = 0;
    const auto loops = boundary_loops(m);
    for (std::size_t li = 0; li < loops.size(); ++li) {
        const auto& loop = loops[li];
        std::vector<double> param(loop.size());
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const auto [d, t] = project_to_curve(target, loop.vertices[i], s);
            if (d > tol)
                throw Error("boundary loop " + std::to_string(li) + " lies farther than tolerance from the target curve");
            param[i] = t;
        }
        double wind = 0.0;
        for (std::size_t i = 0; i < loop.size(); ++i) {
            double dt = param[(i + 1) % loop.size()] - param[i];
            dt -= total * std::round(dt / total);
            wind += dt;
        }
        sum += static_cast<int>(std::lround(wind / total));
    }
    return sum;
}

inline bool is_coherently_oriented(const TriSurfaceMesh& m) {
    std::map<EdgeKey, int> directed;
    for (std::size_t t = 0; t < m.triangles.size(); ++t)
        for (int c = 0; c < 3; ++c)
            if (++directed[tri_edge_key(m, t, c)] > 1) return false;
    for (const auto& [key, uses] : edge_map(m))
        if (uses.size() > 2) return false;
    return true;
}

inline void flip_triangle(TriSurfaceMesh& m, std::size_t t) {
    std::swap(m.triangles[t][1], m.triangles[t][2]);
    if (m.has_lifts()) std::swap(m.tri_lifts[t][1], m.tri_lifts[t][2]);
}

inline void flip_orientation(TriSurfaceMesh& m) {
    for (std::size_t t = 0; t < m.triangles.size(); ++t) flip_triangle(m, t);
}

/// Triangle adjacency across manifold edges.
inline std::vector<std::vector<std::size_t>> triangle_neighbors(const TriSurfaceMesh& m) {
    std::vector<std::vector<std::size_t>> nb(m.triangles.size());
    for (const auto& [key, uses] : edge_map(m)) {
        if (uses.size() != 2) continue;
        nb[uses[0].tri].push_back(uses[1].tri);
        nb[uses[1].tri].push_back(uses[0].tri);
    }
    return nb;
}

/// Flips triangles so each connected component is coherently oriented; the
/// lowest-index triangle of each component keeps its orientation. Returns the
/// per-triangle flip flags. Throws if a component is non-orientable.
inline std::vector<char> orient_coherently(TriSurfaceMesh& m) {
    const auto em = edge_map(m);
    std::vector<std::vector<std::pair<std::size_t, EdgeKey>>> nb(m.triangles.size());
    for (const auto& [key, uses] : em) {
        if (uses.size() > 2) throw Error("non-manifold edge");
        if (uses.size() != 2) continue;
        nb[uses[0].tri].push_back({uses[1].tri, key});
        nb[uses[1].tri].push_back({uses[0].tri, key});
    }
    std::vector<int> state(m.triangles.size(), -1);  // -1 unvisited, 0 kept, 1 flipped
    const auto directed_along = [&](std::size_t t, const EdgeKey& und) {
        for (int c = 0; c < 3; ++c) {
            const EdgeKey k = tri_edge_key(m, t, c);
            if (k == und) return true;
            if (reverse_key(k) == und) return false;
        }
        throw Error("edge not in triangle");
    };
    for (std::size_t seed = 0; seed < m.triangles.size(); ++seed) {
        if (state[seed] != -1) continue;
        state[seed] = 0;
        std::deque<std::size_t> queue{seed};
        while (!queue.empty()) {
            const std::size_t t = queue.front();
            queue.pop_front();
            for (const auto& [u, key] : nb[t]) {
                // orientation of t along the edge after its own flip state
                const bool t_along = directed_along(t, key) != (state[t] == 1);
                const bool u_along = directed_along(u, key);
                const int want = (t_along == u_along) ? 1 : 0;
                if (state[u] == -1) {
                    state[u] = want;
                    queue.push_back(u);
                } else if (state[u] != want) {
                    throw Error("mesh is not orientable");
                }
            }
        }
    }
    std::vector<char> flipped(m.triangles.size(), 0);
    for (std::size_t t = 0; t < m.triangles.size(); ++t)
        if (state[t] == 1) {
            flip_triangle(m, t);
            flipped[t] = 1;
        }
    return flipped;
}

inline int connected_components(const TriSurfaceMesh& m) {
    std::vector<int> parent(m.vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto& t : m.triangles)
        for (int c = 1; c < 3; ++c) parent[static_cast<std::size_t>(find(t[0]))] = find(t[static_cast<std::size_t>(c)]);
    std::vector<char> root(m.vertices.size(), 0), used(m.vertices.size(), 0);
    for (const auto& t : m.triangles)
        for (int v : t) used[static_cast<std::size_t>(v)] = 1;
    int n = 0;
    for (std::size_t v = 0; v < m.vertices.size(); ++v)
        if (used[v] && find(static_cast<int>(v)) == static_cast<int>(v)) ++n;
    return n;
}

/// Checks the structural invariants; throws Error describing the first violation.
inline void validate_mesh(const TriSurfaceMesh& m) {
    const auto n = static_cast<int>(m.vertices.size());
    if (m.boundary_fixed.size() != m.vertices.size()) throw Error("boundary_fixed size mismatch");
    if (m.ambient.is_torus()) {
        if (m.tri_lifts.size() != m.triangles.size()) throw Error("torus mesh needs per-triangle lifts");
    } else if (m.has_lifts()) {
        throw Error("euclidean mesh cannot carry lifts");
    }
    for (const auto& p : m.vertices)
        if (!is_finite(p)) throw Error("mesh vertex is not finite");
    for (const auto& t : m.triangles) {
        for (int v : t)
            if (v < 0 || v >= n) throw Error("triangle index out of range");
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) throw Error("triangle with repeated vertex");
    }
    if (!is_coherently_oriented(m)) throw Error("mesh is not coherently oriented");
}

/// Drops vertices no triangle references.
inline void compact_vertices(TriSurfaceMesh& m) {
    std::vector<int> remap(m.vertices.size(), -1);
    std::vector<Point3> verts;
    std::vector<char> fixed;
    for (auto& t : m.triangles)
        for (int& v : t) {
            auto& r = remap[static_cast<std::size_t>(v)];
            if (r < 0) {
                r = static_cast<int>(verts.size());
                verts.push_back(m.vertices[static_cast<std::size_t>(v)]);
                fixed.push_back(m.boundary_fixed.empty() ? 0 : m.boundary_fixed[static_cast<std::size_t>(v)]);
            }
            v = r;
        }
    m.vertices = std::move(verts);
    m.boundary_fixed = std::move(fixed);
}

/// Marks exactly the boundary vertices as fixed.
inline void pin_boundary(TriSurfaceMesh& m) { m.boundary_fixed = boundary_vertex_mask(m); }

/// Orients the mesh so its boundary covers the target positively; throws if it
/// covers it with zero net multiplicity.
inline void orient_to_boundary(TriSurfaceMesh& m, const ClosedPolyline& target, double tol) {
    const int k = boundary_multiplicity(m, target, tol);
    if (k == 0) throw Error("boundary does not cover the target curve");
    if (k < 0) flip_orientation(m);
}

/// Disjoint union; both meshes must live in the same ambient.
inline TriSurfaceMesh merge_meshes(const TriSurfaceMesh& a, const TriSurfaceMesh& b) {
    if (a.ambient.kind != b.ambient.kind) throw Error("cannot merge meshes from different ambients");
    TriSurfaceMesh out = a;
    const int off = static_cast<int>(a.vertices.size());
    out.vertices.insert(out.vertices.end(), b.vertices.begin(), b.vertices.end());
    out.boundary_fixed.insert(out.boundary_fixed.end(), b.boundary_fixed.begin(), b.boundary_fixed.end());
    for (auto t : b.triangles) {
        for (int& v : t) v += off;
        out.triangles.push_back(t);
    }
    if (out.ambient.is_torus()) out.tri_lifts.insert(out.tri_lifts.end(), b.tri_lifts.begin(), b.tri_lifts.end());
    return out;
}

}  // namespace plateau
