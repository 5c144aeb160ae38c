#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <vector>

#include "../geom/distance.hpp"
#include "../geom/intersect.hpp"
#include "../geom/mesh.hpp"
#include "../solver/triangulate.hpp"

namespace plateau {

/// Which way the handle meets the two sheets. Correct keeps both orientations
/// (boundaries add); Opposite forces one sheet to reverse (boundaries cancel).
enum class HandleSide { Correct, Opposite };

inline const char* to_string(HandleSide s) { return s == HandleSide::Correct ? "Correct" : "Opposite"; }

struct SurgeryOptions {
    int rim_segments = 128;
    double pad_growth = 1.15;  // pad radius multiplier per retry, starting at r*growth
    int max_pad_tries = 12;
};

struct SurgeryResult {
    TriSurfaceMesh mesh;
    ShiftVec lift;           // lattice shift applied to centerB
    Vec3 axis;               // centerB + lift - centerA
    double pad_radius_a = 0.0;
    double pad_radius_b = 0.0;
    int candidates_rejected = 0;
};

namespace detail {

struct SheetPoint {
    std::size_t tri = 0;
    Vec3 normal;
};

/// Nearest image of a vertex around c.
inline Point3 local_position(const TriSurfaceMesh& m, int v, const Point3& c) {
    return c + m.ambient.minimal_image(m.vertices[static_cast<std::size_t>(v)] - c);
}

inline SheetPoint locate_on_sheet(const TriSurfaceMesh& m, const Point3& c) {
    double best = 1e300;
    SheetPoint sp;
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        auto p = m.corners(t);
        const Vec3 off = m.ambient.minimal_image(p[0] - c) - (p[0] - c);
        for (auto& q : p) q += off;
        const double d = point_triangle_distance(c, p);
        if (d < best) {
            best = d;
            sp.tri = t;
            sp.normal = normalized(triangle_normal(p));
        }
    }
    if (best > 1e-7) throw Error("surgery center does not lie on the mesh");
    return sp;
}

struct Pad {
    std::vector<char> removed;
    std::vector<int> loop;            // hole boundary, counterclockwise about the axis
    std::vector<Point3> loop_local;   // positions in the center's frame
    std::vector<double> loop_param;   // angle / 2pi, increasing from the smallest
    double radius = 0.0;
};

inline double angle_in(const Vec3& q, const Vec3& e1, const Vec3& e2) {
    double a = std::atan2(dot(q, e2), dot(q, e1));
    if (a < 0) a += 2 * kPi;
    return a;
}

/// Removes a disk-like patch of triangles around c whose projection along the
/// axis covers the radius-r disk; grows the patch until its hole loop is
/// simple, star-shaped about the axis and clear of the rim.
inline Pad cut_pad(const TriSurfaceMesh& m, const SheetPoint& sp, const Point3& c, const Vec3& axis, const Vec3& e1,
                   const Vec3& e2, double r, const SurgeryOptions& o) {
    const auto nb = triangle_neighbors(m);
    const auto em = edge_map(m);
    const auto on_boundary = boundary_vertex_mask(m);
    const auto proj_dist = [&](const Point3& p) {
        const Vec3 q = p - c;
        return norm(q - axis * dot(q, axis));
    };
    const double plane_tol = 1e-9 * (1 + r);
    double rp = r;
    for (int attempt = 0; attempt < o.max_pad_tries; ++attempt) {
        rp *= o.pad_growth;
        Pad pad;
        pad.radius = rp;
        pad.removed.assign(m.triangles.size(), 0);
        std::deque<std::size_t> queue{sp.tri};
        pad.removed[sp.tri] = 1;
        while (!queue.empty()) {
            const std::size_t t = queue.front();
            queue.pop_front();
            for (std::size_t u : nb[t]) {
                if (pad.removed[u]) continue;
                bool near = false;
                for (int v : m.triangles[u]) near = near || proj_dist(local_position(m, v, c)) < rp;
                if (!near) continue;
                pad.removed[u] = 1;
                queue.push_back(u);
            }
        }
        // hole edges, directed as in the removed triangles
        std::map<int, int> next;
        bool bad = false;
        for (std::size_t t = 0; t < m.triangles.size() && !bad; ++t) {
            if (!pad.removed[t]) continue;
            for (int v : m.triangles[t])
                if (std::abs(dot(local_position(m, v, c) - c, sp.normal)) > plane_tol)
                    throw Error("surgery pad is not planar; use a smaller radius");
            for (int k = 0; k < 3; ++k) {
                const auto key = tri_edge_key(m, t, k);
                const auto& uses = em.at(undirected_key(key));
                if (uses.size() < 2) throw Error("surgery pad reaches the mesh boundary");
                const std::size_t other = uses[0].tri == t ? uses[1].tri : uses[0].tri;
                if (pad.removed[other]) continue;
                if (!next.emplace(key[0], key[1]).second) bad = true;
            }
        }
        if (bad || next.empty()) continue;
        std::vector<int> loop{next.begin()->first};
        while (true) {
            const int w = next.at(loop.back());
            if (w == loop.front()) break;
            loop.push_back(w);
            if (loop.size() > next.size()) break;
        }
        if (loop.size() != next.size()) continue;
        for (int v : loop)
            if (on_boundary[static_cast<std::size_t>(v)]) throw Error("surgery pad reaches the mesh boundary");
        std::vector<Point3> local;
        for (int v : loop) local.push_back(local_position(m, v, c));
        // star-shaped about the axis, winding once
        double turn = 0.0;
        bool mono = true;
        int sign = 0;
        for (std::size_t i = 0; i < local.size(); ++i) {
            const Vec3 a = local[i] - c, b = local[(i + 1) % local.size()] - c;
            double da = std::atan2(dot(b, e2), dot(b, e1)) - std::atan2(dot(a, e2), dot(a, e1));
            if (da > kPi) da -= 2 * kPi;
            if (da < -kPi) da += 2 * kPi;
            const int sg = da > 0 ? 1 : (da < 0 ? -1 : 0);
            if (sg == 0 || (sign != 0 && sg != sign)) mono = false;
            sign = sg;
            turn += da;
        }
        if (!mono || std::abs(std::abs(turn) - 2 * kPi) > 1e-6) continue;
        double clearance = 1e300;
        for (std::size_t i = 0; i < local.size(); ++i) {
            const Point3 a = local[i], b = local[(i + 1) % local.size()];
            const Vec3 pa = (a - c) - axis * dot(a - c, axis), pb = (b - c) - axis * dot(b - c, axis);
            clearance = std::min(clearance, point_segment_closest(Point3{}, pa, pb).distance);
        }
        if (clearance < 1.02 * r) continue;
        if (turn < 0) {
            std::reverse(loop.begin(), loop.end());
            std::reverse(local.begin(), local.end());
        }
        std::vector<double> ang;
        for (const auto& p : local) ang.push_back(angle_in(p - c, e1, e2) / (2 * kPi));
        const auto start = static_cast<std::size_t>(std::min_element(ang.begin(), ang.end()) - ang.begin());
        std::rotate(loop.begin(), loop.begin() + static_cast<std::ptrdiff_t>(start), loop.end());
        std::rotate(local.begin(), local.begin() + static_cast<std::ptrdiff_t>(start), local.end());
        std::rotate(ang.begin(), ang.begin() + static_cast<std::ptrdiff_t>(start), ang.end());
        pad.loop = std::move(loop);
        pad.loop_local = std::move(local);
        pad.loop_param = std::move(ang);
        return pad;
    }
    throw Error("rim-matching failure: no pad radius gives a simple star-shaped hole");
}

/// Rim points: circle of radius r about the axis through c, pushed along the
/// axis onto the sheet plane.
inline std::vector<Point3> rim_points(const Point3& c, const Vec3& axis, const Vec3& n, const Vec3& e1, const Vec3& e2,
                                      double r, int segments) {
    const double an = dot(axis, n);
    if (std::abs(an) < 0.2) throw Error("tube meets the sheet too obliquely");
    std::vector<Point3> out;
    for (int j = 0; j < segments; ++j) {
        const double phi = 2 * kPi * j / segments;
        const Vec3 u = e1 * std::cos(phi) + e2 * std::sin(phi);
        out.push_back(c + u * r - axis * (r * dot(u, n) / an));
    }
    return out;
}

inline bool tube_is_clear(const std::vector<Point3>& ra, const std::vector<Point3>& rb, const TriSurfaceMesh& A,
                          const TriSurfaceMesh& B, const Ambient& amb) {
    const std::size_t n = ra.size();
    const int stride = std::max<int>(1, static_cast<int>(n / 32));
    for (std::size_t j = 0; j < n; j += static_cast<std::size_t>(stride))
        for (int i = 1; i < 50; ++i) {
            const double t = i / 50.0;
            if (amb.in_excluded(ra[j] * (1 - t) + rb[j] * t)) return false;
        }
    std::vector<Triangle3> tube;
    const int rows = 8;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = (j + 1) % n;
        for (int i = 0; i < rows; ++i) {
            const double t0 = 0.05 + 0.9 * i / rows, t1 = 0.05 + 0.9 * (i + 1) / rows;
            const Point3 a0 = ra[j] * (1 - t0) + rb[j] * t0, a1 = ra[k] * (1 - t0) + rb[k] * t0;
            const Point3 b0 = ra[j] * (1 - t1) + rb[j] * t1, b1 = ra[k] * (1 - t1) + rb[k] * t1;
            tube.push_back({a0, a1, b1});
            tube.push_back({a0, b1, b0});
        }
    }
    return lifted_triangle_hits(tube, lifted_triangles(A), amb).empty() &&
           lifted_triangle_hits(tube, lifted_triangles(B), amb).empty();
}

inline ShiftVec lift_towards(const Ambient& amb, const Point3& stored, const Point3& target) {
    ShiftVec s;
    if (!amb.is_torus()) return s;
    const Vec3 d = target - stored;
    for (int a = 0; a < 3; ++a) s[a] = static_cast<int>(std::lround(d[a] / amb.periods[a]));
    return s;
}

}  // namespace detail

/// Removes a disk of radius r around centerA from mA and around centerB from mB
/// and joins the rims by a straight tube. The lattice lift of the tube is the
/// shortest one meeting the sheets on the requested side that avoids both
/// meshes and the excluded region.
inline SurgeryResult mesh_surgery_detailed(const TriSurfaceMesh& mA, const TriSurfaceMesh& mB, const Point3& centerA,
                                           const Point3& centerB, double r, HandleSide side,
                                           const SurgeryOptions& o = {}) {
    if (!(r > 0)) throw Error("tube radius must be positive");
    if (o.rim_segments < 8) throw Error("rim needs at least 8 segments");
    if (mA.ambient.kind != mB.ambient.kind || mA.ambient.periods != mB.ambient.periods)
        throw Error("surgery meshes live in different ambients");
    const Ambient& amb = mA.ambient;
    const auto sa = detail::locate_on_sheet(mA, centerA);
    const auto sb = detail::locate_on_sheet(mB, centerB);

    struct Candidate {
        ShiftVec k;
        Vec3 d;
    };
    std::vector<Candidate> cands;
    for (const auto& k : neighbor_shifts(amb)) {
        const Vec3 d = centerB + amb.lattice(k) - centerA;
        if (norm(d) < 1e-12) continue;
        const double prod = dot(d, sa.normal) * dot(d, sb.normal);
        if ((side == HandleSide::Correct && prod < 0) || (side == HandleSide::Opposite && prod > 0))
            cands.push_back({k, d});
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return norm(a.d) < norm(b.d); });

    SurgeryResult res;
    for (const auto& cand : cands) {
        const Vec3 axis = normalized(cand.d);
        const Vec3 helper = std::abs(axis.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        const Vec3 e1 = normalized(cross(helper, axis)), e2 = cross(axis, e1);
        if (std::abs(dot(axis, sa.normal)) < 0.2 || std::abs(dot(axis, sb.normal)) < 0.2) {
            ++res.candidates_rejected;
            continue;
        }
        const auto ra = detail::rim_points(centerA, axis, sa.normal, e1, e2, r, o.rim_segments);
        auto rb = detail::rim_points(centerB, axis, sb.normal, e1, e2, r, o.rim_segments);
        std::vector<Point3> rb_a;  // B rim in A's frame
        for (const auto& p : rb) rb_a.push_back(p + amb.lattice(cand.k));
        if (!detail::tube_is_clear(ra, rb_a, mA, mB, amb)) {
            ++res.candidates_rejected;
            continue;
        }
        const auto pad_a = detail::cut_pad(mA, sa, centerA, axis, e1, e2, r, o);
        const auto pad_b = detail::cut_pad(mB, sb, centerB, axis, e1, e2, r, o);

        TriSurfaceMesh out = merge_meshes(mA, mB);
        const int off_b = static_cast<int>(mA.vertices.size());
        const std::size_t tri_b = mA.triangles.size();
        std::vector<char> removed = pad_a.removed;
        removed.insert(removed.end(), pad_b.removed.begin(), pad_b.removed.end());
        std::vector<char> from_b;
        {
            TriSurfaceMesh kept = out;
            kept.triangles.clear();
            kept.tri_lifts.clear();
            for (std::size_t t = 0; t < out.triangles.size(); ++t) {
                if (removed[t]) continue;
                kept.triangles.push_back(out.triangles[t]);
                if (out.has_lifts()) kept.tri_lifts.push_back(out.tri_lifts[t]);
                from_b.push_back(t >= tri_b);
            }
            out = std::move(kept);
        }
        const auto add_vertex = [&](const Point3& x) {
            out.vertices.push_back(amb.wrap(x).first);
            out.boundary_fixed.push_back(0);
            return static_cast<int>(out.vertices.size()) - 1;
        };
        // corners given with their positions in one common frame
        const auto add_tri = [&](std::array<int, 3> v, std::array<Point3, 3> x) {
            out.triangles.push_back(v);
            from_b.push_back(0);
            if (amb.is_torus()) {
                TriLift l;
                for (int c = 0; c < 3; ++c)
                    l[static_cast<std::size_t>(c)] =
                        detail::lift_towards(amb, out.vertices[static_cast<std::size_t>(v[static_cast<std::size_t>(c)])], x[static_cast<std::size_t>(c)]);
                out.tri_lifts.push_back(l);
            }
        };
        const int n = o.rim_segments;
        std::vector<double> rim_param(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) rim_param[static_cast<std::size_t>(j)] = static_cast<double>(j) / n;

        // rings along the tube, ring 0 on A, last ring on B
        const double chord = 2 * r * std::sin(kPi / n);
        const int rows = std::max(2, static_cast<int>(std::ceil(norm(cand.d) / (2 * chord))));
        std::vector<std::vector<int>> ring_ids(static_cast<std::size_t>(rows + 1));
        std::vector<std::vector<Point3>> ring_pos(static_cast<std::size_t>(rows + 1));
        for (int i = 0; i <= rows; ++i) {
            const double t = static_cast<double>(i) / rows;
            for (int j = 0; j < n; ++j) {
                const auto J = static_cast<std::size_t>(j);
                const Point3 x = i == rows ? rb_a[J] : ra[J] * (1 - t) + rb_a[J] * t;
                // B's rim vertices are stored from B's own frame
                ring_ids[static_cast<std::size_t>(i)].push_back(add_vertex(i == rows ? rb[J] : x));
                ring_pos[static_cast<std::size_t>(i)].push_back(x);
            }
        }
        const auto zip = [&](const std::vector<int>& ia, const std::vector<Point3>& xa, const std::vector<double>& pa,
                             const std::vector<int>& ib, const std::vector<Point3>& xb, const std::vector<double>& pb) {
            std::vector<int> local_a(ia.size()), local_b(ib.size());
            std::iota(local_a.begin(), local_a.end(), 0);
            std::iota(local_b.begin(), local_b.end(), static_cast<int>(ia.size()));
            std::vector<Tri> tris;
            detail::zipper(local_a, pa, local_b, pb, tris);
            const auto id = [&](int k) { return k < static_cast<int>(ia.size()) ? ia[static_cast<std::size_t>(k)] : ib[static_cast<std::size_t>(k) - ia.size()]; };
            const auto pos = [&](int k) { return k < static_cast<int>(ia.size()) ? xa[static_cast<std::size_t>(k)] : xb[static_cast<std::size_t>(k) - ia.size()]; };
            for (const auto& t : tris) add_tri({id(t[0]), id(t[1]), id(t[2])}, {pos(t[0]), pos(t[1]), pos(t[2])});
        };
        // annulus on A between hole loop and rim
        zip(pad_a.loop, pad_a.loop_local, pad_a.loop_param, ring_ids.front(), ring_pos.front(), rim_param);
        for (int i = 0; i < rows; ++i)
            zip(ring_ids[static_cast<std::size_t>(i)], ring_pos[static_cast<std::size_t>(i)], rim_param,
                ring_ids[static_cast<std::size_t>(i + 1)], ring_pos[static_cast<std::size_t>(i + 1)], rim_param);
        {
            std::vector<int> loop_b;
            for (int v : pad_b.loop) loop_b.push_back(v + off_b);
            std::vector<Point3> rim_b_local(rb.begin(), rb.end());
            // B's annulus in B's frame
            zip(loop_b, pad_b.loop_local, pad_b.loop_param, ring_ids.back(), rim_b_local, rim_param);
        }
        const auto flips = orient_coherently(out);
        bool b_flipped = false, b_kept = false;
        for (std::size_t t = 0; t < out.triangles.size(); ++t)
            if (from_b[t]) (flips[t] ? b_flipped : b_kept) = true;
        if (b_flipped && b_kept) throw Error("surgery produced an inconsistent orientation on the second sheet");
        if ((side == HandleSide::Correct) == b_flipped)
            throw Error("handle side does not match the orientation of the joined sheets");
        compact_vertices(out);
        pin_boundary(out);
        validate_mesh(out);
        if (connected_components(out) != 1) throw Error("surgery result is not connected");
        res.mesh = std::move(out);
        res.lift = cand.k;
        res.axis = cand.d;
        res.pad_radius_a = pad_a.radius;
        res.pad_radius_b = pad_b.radius;
        return res;
    }
    throw Error("tube collision: no lattice lift joins the sheets on the requested side without crossing them or the excluded region");
}

inline TriSurfaceMesh mesh_surgery(const TriSurfaceMesh& mA, const TriSurfaceMesh& mB, const Point3& centerA,
                                   const Point3& centerB, double r, HandleSide side, const SurgeryOptions& o = {}) {
    return mesh_surgery_detailed(mA, mB, centerA, centerB, r, side, o).mesh;
}

}  // namespace plateau
