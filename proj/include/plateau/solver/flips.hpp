#pragma once

#include <cmath>
#include <set>
#include <vector>

#include "../geom/mesh.hpp"

namespace plateau {

namespace detail {

inline double corner_angle(const Point3& apex, const Point3& p, const Point3& q) {
    const Vec3 u = p - apex, v = q - apex;
    return std::atan2(norm(cross(u, v)), dot(u, v));
}

}  // namespace detail

/// One pass of intrinsic-Delaunay edge flips over interior edges. A flip is
/// applied only when it does not increase area, keeps both new triangles
/// non-degenerate and does not fold them over. Returns the number of flips.
inline int delaunay_flip_pass(TriSurfaceMesh& m) {
    const auto em = edge_map(m);
    std::set<std::pair<int, int>> pairs;
    for (const auto& [k, uses] : em) pairs.insert({std::min(k[0], k[1]), std::max(k[0], k[1])});
    std::vector<char> touched(m.triangles.size(), 0);
    int flips = 0;
    for (const auto& [key, uses] : em) {
        if (uses.size() != 2) continue;
        const std::size_t t1 = uses[0].tri, t2 = uses[1].tri;
        if (touched[t1] || touched[t2]) continue;
        const int c1 = uses[0].corner, c2 = uses[1].corner;
        const auto& T1 = m.triangles[t1];
        const auto& T2 = m.triangles[t2];
        const int a = T1[static_cast<std::size_t>(c1)], b = T1[static_cast<std::size_t>((c1 + 1) % 3)];
        const int c = T1[static_cast<std::size_t>((c1 + 2) % 3)];
        // T2 must run b -> a
        if (T2[static_cast<std::size_t>(c2)] != b || T2[static_cast<std::size_t>((c2 + 1) % 3)] != a) continue;
        const int d = T2[static_cast<std::size_t>((c2 + 2) % 3)];
        if (c == d) continue;
        if (pairs.count({std::min(c, d), std::max(c, d)})) continue;
        const ShiftVec la = m.lift(t1, c1), lb = m.lift(t1, (c1 + 1) % 3), lc = m.lift(t1, (c1 + 2) % 3);
        const ShiftVec la2 = m.lift(t2, (c2 + 1) % 3), ld2 = m.lift(t2, (c2 + 2) % 3);
        const ShiftVec ld = ld2 + (la - la2);
        const auto P = [&](int v, const ShiftVec& l) {
            return m.vertices[static_cast<std::size_t>(v)] + m.ambient.lattice(l);
        };
        const Point3 pa = P(a, la), pb = P(b, lb), pc = P(c, lc), pd = P(d, ld);
        const double angle_sum = detail::corner_angle(pc, pa, pb) + detail::corner_angle(pd, pb, pa);
        if (angle_sum <= kPi + 1e-10) continue;
        const Vec3 n1 = cross(pb - pa, pc - pa), n2 = cross(pa - pb, pd - pb);
        const Vec3 m1 = cross(pd - pa, pc - pa), m2 = cross(pb - pd, pc - pd);
        const double old_area = 0.5 * (norm(n1) + norm(n2));
        const double new_area = 0.5 * (norm(m1) + norm(m2));
        if (new_area > old_area) continue;
        const double floor = 1e-12 * old_area;
        if (0.5 * norm(m1) <= floor || 0.5 * norm(m2) <= floor) continue;
        const Vec3 avg = n1 + n2;
        if (dot(m1, avg) <= 0.0 || dot(m2, avg) <= 0.0) continue;
        m.triangles[t1] = {a, d, c};
        m.triangles[t2] = {d, b, c};
        if (m.has_lifts()) {
            m.tri_lifts[t1] = {la, ld, lc};
            m.tri_lifts[t2] = {ld, lb, lc};
        }
        pairs.insert({std::min(c, d), std::max(c, d)});
        touched[t1] = touched[t2] = 1;
        ++flips;
    }
    return flips;
}

}  // namespace plateau
