#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "bvh.hpp"
#include "mesh.hpp"

namespace plateau {

using Triangle3 = std::array<Point3, 3>;

struct TriTriHit {
    bool hit = false;
    bool coplanar = false;
    Point3 a, b;  // intersection segment (unset when coplanar)
};

namespace detail {

inline int dominant_axis(const Vec3& n) {
    const double ax = std::abs(n.x), ay = std::abs(n.y), az = std::abs(n.z);
    return ax >= ay && ax >= az ? 0 : (ay >= az ? 1 : 2);
}

struct P2 {
    double u, v;
};

inline P2 drop(const Point3& p, int axis) {
    return axis == 0 ? P2{p.y, p.z} : (axis == 1 ? P2{p.z, p.x} : P2{p.x, p.y});
}

inline double orient2(const P2& a, const P2& b, const P2& c) {
    return (b.u - a.u) * (c.v - a.v) - (b.v - a.v) * (c.u - a.u);
}

inline double point_segment_dist_2d(const P2& p, const P2& a, const P2& b) {
    const double du = b.u - a.u, dv = b.v - a.v, l2 = du * du + dv * dv;
    double t = l2 > 0.0 ? ((p.u - a.u) * du + (p.v - a.v) * dv) / l2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.u - a.u - t * du, p.v - a.v - t * dv);
}

inline bool segments_touch_2d(const P2& a, const P2& b, const P2& c, const P2& d, double tol) {
    const double d1 = orient2(a, b, c), d2 = orient2(a, b, d), d3 = orient2(c, d, a), d4 = orient2(c, d, b);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
    return point_segment_dist_2d(c, a, b) <= tol || point_segment_dist_2d(d, a, b) <= tol ||
           point_segment_dist_2d(a, c, d) <= tol || point_segment_dist_2d(b, c, d) <= tol;
}

inline bool point_in_tri_2d(const P2& p, const P2& a, const P2& b, const P2& c, double tol) {
    const double s = orient2(a, b, c) >= 0 ? 1.0 : -1.0;
    return s * orient2(a, b, p) >= -tol && s * orient2(b, c, p) >= -tol && s * orient2(c, a, p) >= -tol;
}

inline bool coplanar_overlap(const Triangle3& p, const Triangle3& q, const Vec3& n, double tol) {
    const int ax = dominant_axis(n);
    std::array<P2, 3> a{drop(p[0], ax), drop(p[1], ax), drop(p[2], ax)};
    std::array<P2, 3> b{drop(q[0], ax), drop(q[1], ax), drop(q[2], ax)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (segments_touch_2d(a[i], a[(i + 1) % 3], b[j], b[(j + 1) % 3], tol)) return true;
    return point_in_tri_2d(a[0], b[0], b[1], b[2], tol) || point_in_tri_2d(b[0], a[0], a[1], a[2], tol);
}

/// Points where triangle t crosses the plane with signed distances d.
inline std::vector<Point3> plane_cut(const Triangle3& t, const std::array<double, 3>& d) {
    std::vector<Point3> pts;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3;
        if (d[i] == 0.0) pts.push_back(t[i]);
        if ((d[i] < 0.0 && d[j] > 0.0) || (d[i] > 0.0 && d[j] < 0.0))
            pts.push_back(t[i] + (t[j] - t[i]) * (d[i] / (d[i] - d[j])));
    }
    return pts;
}

}  // namespace detail

/// Closest point on triangle abc to p (Ericson, Real-Time Collision Detection 5.1.5).
inline Point3 closest_point_on_triangle(const Point3& p, const Point3& a, const Point3& b, const Point3& c) {
    const Vec3 ab = b - a, ac = c - a, ap = p - a;
    const double d1 = dot(ab, ap), d2 = dot(ac, ap);
    if (d1 <= 0 && d2 <= 0) return a;
    const Vec3 bp = p - b;
    const double d3 = dot(ab, bp), d4 = dot(ac, bp);
    if (d3 >= 0 && d4 <= d3) return b;
    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + ab * (d1 / (d1 - d3));
    const Vec3 cp = p - c;
    const double d5 = dot(ab, cp), d6 = dot(ac, cp);
    if (d6 >= 0 && d5 <= d6) return c;
    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + ac * (d2 / (d2 - d6));
    const double va = d3 * d6 - d5 * d4;
    if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));
    const double denom = 1.0 / (va + vb + vc);
    return a + ab * (vb * denom) + ac * (vc * denom);
}

inline double point_triangle_distance(const Point3& p, const Triangle3& t) {
    return distance(p, closest_point_on_triangle(p, t[0], t[1], t[2]));
}

/// Triangle-triangle intersection with absolute tolerance tol. Coplanar
/// overlapping triangles count as a hit.
inline TriTriHit tri_tri_intersect(const Triangle3& p, const Triangle3& q, double tol = kGeomTol) {
    TriTriHit out;
    const Vec3 np_raw = triangle_normal(p), nq_raw = triangle_normal(q);
    const double lp = norm(np_raw), lq = norm(nq_raw);
    if (lp <= 0.0 || lq <= 0.0) return out;
    const Vec3 np = np_raw / lp, nq = nq_raw / lq;

    std::array<double, 3> dp{}, dq{};
    for (int i = 0; i < 3; ++i) {
        dp[i] = dot(nq, p[i] - q[0]);
        dq[i] = dot(np, q[i] - p[0]);
        if (std::abs(dp[i]) <= tol) dp[i] = 0.0;
        if (std::abs(dq[i]) <= tol) dq[i] = 0.0;
    }
    const auto same_side = [](const std::array<double, 3>& d) {
        return (d[0] > 0 && d[1] > 0 && d[2] > 0) || (d[0] < 0 && d[1] < 0 && d[2] < 0);
    };
    if (same_side(dp) || same_side(dq)) return out;
    const bool p_flat = dp[0] == 0 && dp[1] == 0 && dp[2] == 0;
    const bool q_flat = dq[0] == 0 && dq[1] == 0 && dq[2] == 0;
    if (p_flat || q_flat) {
        // either triangle lies in the other's plane; the larger one's normal is the better conditioned
        if (detail::coplanar_overlap(p, q, lp >= lq ? np : nq, tol)) {
            out.hit = true;
            out.coplanar = true;
        }
        return out;
    }
    const auto cp = detail::plane_cut(p, dp);
    const auto cq = detail::plane_cut(q, dq);
    if (cp.empty() || cq.empty()) return out;
    Vec3 dir = cross(np, nq);
    if (norm(dir) <= 1e-6) {
        // nearly parallel planes that still pass the sign test: the line of
        // intersection is ill-conditioned, so decide by the projected overlap
        if (detail::coplanar_overlap(p, q, lp >= lq ? np : nq, tol)) {
            out.hit = true;
            out.coplanar = true;
        }
        return out;
    }
    dir = normalized(dir);
    const auto span = [&](const std::vector<Point3>& pts) {
        std::size_t lo = 0, hi = 0;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            if (dot(dir, pts[i]) < dot(dir, pts[lo])) lo = i;
            if (dot(dir, pts[i]) > dot(dir, pts[hi])) hi = i;
        }
        return std::pair{lo, hi};
    };
    const auto [plo, phi] = span(cp);
    const auto [qlo, qhi] = span(cq);
    const double a0 = dot(dir, cp[plo]), a1 = dot(dir, cp[phi]);
    const double b0 = dot(dir, cq[qlo]), b1 = dot(dir, cq[qhi]);
    if (std::max(a0, b0) > std::min(a1, b1) + tol) return out;
    const Point3 sa = a0 >= b0 ? cp[plo] : cq[qlo];
    const Point3 sb = a1 <= b1 ? cp[phi] : cq[qhi];
    // vertices snapped onto a plane need not lie on the line itself when the
    // planes are shallow, so confirm the overlap is on both triangles
    const Point3 mid = (sa + sb) * 0.5;
    if (point_triangle_distance(mid, p) > 4 * tol || point_triangle_distance(mid, q) > 4 * tol) return out;
    out.hit = true;
    out.a = sa;
    out.b = sb;
    return out;
}

inline Aabb triangle_box(const Triangle3& t) { return bounds_of(t.begin(), t.end()); }

inline bool share_vertex(const Tri& a, const Tri& b) {
    for (int x : a)
        for (int y : b)
            if (x == y) return true;
    return false;
}

/// Non-adjacent intersecting triangle pairs (i < j), sorted.
inline std::vector<std::pair<int, int>> self_intersections(const TriSurfaceMesh& m, double tol = kGeomTol) {
    if (m.ambient.is_torus()) throw Error("self_intersections needs a euclidean mesh; unroll torus meshes first");
    std::vector<Aabb> boxes;
    boxes.reserve(m.triangles.size());
    for (std::size_t t = 0; t < m.triangles.size(); ++t) boxes.push_back(triangle_box(m.corners(t)).padded(tol));
    const Bvh bvh(boxes);
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < m.triangles.size(); ++i) {
        const auto pi = m.corners(i);
        bvh.query(boxes[i], [&](std::size_t j) {
            if (j <= i || share_vertex(m.triangles[i], m.triangles[j])) return;
            if (tri_tri_intersect(pi, m.corners(j), tol).hit) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
        });
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Lattice offsets searched for periodic contacts.
inline std::vector<ShiftVec> neighbor_shifts(const Ambient& amb) {
    if (!amb.is_torus()) return {ShiftVec{}};
    std::vector<ShiftVec> out;
    for (int x = -1; x <= 1; ++x)
        for (int y = -1; y <= 1; ++y)
            for (int z = -1; z <= 1; ++z) out.push_back({x, y, z});
    return out;
}

/// Intersecting pairs (a, b, shift) between two triangle lists, where list B is
/// translated by every lattice shift of the ambient.
struct LiftedHit {
    std::size_t a, b;
    ShiftVec shift;
    TriTriHit hit;
};

inline std::vector<LiftedHit> lifted_triangle_hits(const std::vector<Triangle3>& A, const std::vector<Triangle3>& B,
                                                   const Ambient& amb, double tol = kGeomTol) {
    std::vector<Aabb> boxes;
    boxes.reserve(B.size());
    for (const auto& t : B) boxes.push_back(triangle_box(t).padded(tol));
    const Bvh bvh(boxes);
    std::vector<LiftedHit> out;
    const auto shifts = neighbor_shifts(amb);
    for (std::size_t i = 0; i < A.size(); ++i) {
        const Aabb box = triangle_box(A[i]).padded(tol);
        for (const auto& s : shifts) {
            const Vec3 off = amb.lattice(s);
            bvh.query(box.shifted(-off), [&](std::size_t j) {
                const Triangle3 q{B[j][0] + off, B[j][1] + off, B[j][2] + off};
                const auto h = tri_tri_intersect(A[i], q, tol);
                if (h.hit) out.push_back({i, j, s, h});
            });
        }
    }
    return out;
}

inline std::vector<Triangle3> lifted_triangles(const TriSurfaceMesh& m) {
    std::vector<Triangle3> out;
    out.reserve(m.triangles.size());
    for (std::size_t t = 0; t < m.triangles.size(); ++t) out.push_back(m.corners(t));
    return out;
}

/// Intersection curve: points in the fundamental domain, shifts per segment
/// (segment i goes from points[i] to points[i+1], cyclically when closed).
struct IntersectionCurve {
    std::vector<Point3> points;
    std::vector<ShiftVec> shifts;
    bool closed = false;
};

namespace detail {

struct RawSegment {
    Point3 a, b;  // continuous lift
};

inline std::vector<IntersectionCurve> chain_segments(const std::vector<RawSegment>& raw, const Ambient& amb, double tol) {
    // cluster endpoints modulo the lattice
    std::vector<Point3> nodes;
    const auto node_of = [&](const Point3& p) {
        const Point3 w = amb.wrap(p).first;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (norm(amb.minimal_image(nodes[i] - w)) <= tol) return i;
        nodes.push_back(w);
        return nodes.size() - 1;
    };
    struct Edge {
        std::size_t u, v;
        Vec3 vec;
    };
    std::vector<Edge> edges;
    for (const auto& s : raw) {
        if (distance(s.a, s.b) <= tol) continue;
        const std::size_t u = node_of(s.a), v = node_of(s.b);
        if (u == v) continue;
        bool dup = false;
        for (const auto& e : edges)
            if ((e.u == u && e.v == v && norm(e.vec - (s.b - s.a)) <= 10 * tol) ||
                (e.u == v && e.v == u && norm(e.vec + (s.b - s.a)) <= 10 * tol)) {
                dup = true;
                break;
            }
        if (!dup) edges.push_back({u, v, s.b - s.a});
    }
    std::vector<std::vector<std::size_t>> inc(nodes.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        inc[edges[e].u].push_back(e);
        inc[edges[e].v].push_back(e);
    }
    std::vector<char> used(edges.size(), 0);
    std::vector<IntersectionCurve> out;
    const auto shift_between = [&](const Point3& from, const Vec3& vec, const Point3& to) {
        ShiftVec k;
        if (!amb.is_torus()) return k;
        const Vec3 d = from + vec - to;
        for (int i = 0; i < 3; ++i) k[i] = static_cast<int>(std::lround(d[i] / amb.periods[i]));
        return k;
    };
    const auto walk = [&](std::size_t start_node) {
        IntersectionCurve c;
        std::size_t cur = start_node;
        c.points.push_back(nodes[cur]);
        while (true) {
            std::size_t next_e = edges.size();
            for (std::size_t e : inc[cur])
                if (!used[e]) { next_e = e; break; }
            if (next_e == edges.size()) break;
            used[next_e] = 1;
            const Edge& e = edges[next_e];
            const bool fwd = e.u == cur;
            const std::size_t nxt = fwd ? e.v : e.u;
            const Vec3 vec = fwd ? e.vec : -e.vec;
            c.shifts.push_back(shift_between(nodes[cur], vec, nodes[nxt]));
            cur = nxt;
            if (cur == start_node) {
                c.closed = true;
                break;
            }
            c.points.push_back(nodes[cur]);
        }
        return c;
    };
    // open chains first (start at odd-degree nodes), then loops
    for (std::size_t n = 0; n < nodes.size(); ++n)
        if (inc[n].size() % 2 == 1 && std::any_of(inc[n].begin(), inc[n].end(), [&](std::size_t e) { return !used[e]; }))
            out.push_back(walk(n));
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (!used[e]) out.push_back(walk(edges[e].u));
    return out;
}

}  // namespace detail

/// Curves along which two surfaces cross, chained from triangle-pair segments.
inline std::vector<IntersectionCurve> surface_intersection(const TriSurfaceMesh& a, const TriSurfaceMesh& b,
                                                           double tol = kGeomTol) {
    if (a.ambient.kind != b.ambient.kind) throw Error("surface_intersection needs meshes in the same ambient");
    const auto hits = lifted_triangle_hits(lifted_triangles(a), lifted_triangles(b), a.ambient, tol);
    std::vector<detail::RawSegment> raw;
    for (const auto& h : hits)
        if (!h.hit.coplanar) raw.push_back({h.hit.a, h.hit.b});
    return detail::chain_segments(raw, a.ambient, 1e3 * tol);
}

}  // namespace plateau
