#pragma once

#include <algorithm>
#include <vector>

#include "../geom/mesh.hpp"

namespace plateau {

struct GradientResult {
    std::vector<Vec3> grad;
    double area = 0.0;
    int degenerate = 0;  // triangles skipped for zero area
};

/// Collinear to working precision: twice the area is negligible against the
/// longest edge squared.
inline bool is_collinear(const Point3& a, const Point3& b, const Point3& c) {
    const double l2 = std::max({norm2(b - a), norm2(c - b), norm2(a - c)});
    return norm(cross(b - a, c - a)) <= 1e-10 * l2;
}

/// Area and its gradient for explicit vertex positions (topology and lifts from m).
inline GradientResult area_and_gradient(const TriSurfaceMesh& m, const std::vector<Point3>& pos) {
    GradientResult r;
    r.grad.assign(pos.size(), Vec3{});
    double comp = 0.0;
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        const auto& tri = m.triangles[t];
        Point3 p[3];
        for (int c = 0; c < 3; ++c)
            p[c] = pos[static_cast<std::size_t>(tri[static_cast<std::size_t>(c)])] + m.ambient.lattice(m.lift(t, c));
        const Vec3 n = cross(p[1] - p[0], p[2] - p[0]);
        const double len = norm(n);
        const double a = 0.5 * len;
        const double s = r.area + a;
        comp += std::abs(r.area) >= a ? (r.area - s) + a : (a - s) + r.area;
        r.area = s;
        if (!(len > 1e-300) || is_collinear(p[0], p[1], p[2])) {
            ++r.degenerate;
            continue;
        }
        const Vec3 nh = n / len;
        for (int c = 0; c < 3; ++c) {
            const Vec3 opp = p[(c + 2) % 3] - p[(c + 1) % 3];
            r.grad[static_cast<std::size_t>(tri[static_cast<std::size_t>(c)])] += 0.5 * cross(nh, opp);
        }
    }
    r.area += comp;
    for (std::size_t v = 0; v < pos.size(); ++v)
        if (!m.boundary_fixed.empty() && m.boundary_fixed[v]) r.grad[v] = Vec3{};
    return r;
}

/// Per-vertex area gradient; pinned vertices report zero.
inline std::vector<Vec3> area_gradient(const TriSurfaceMesh& m) { return area_and_gradient(m, m.vertices).grad; }

inline double area_at(const TriSurfaceMesh& m, const std::vector<Point3>& pos) {
    double sum = 0.0, comp = 0.0;
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        const auto& tri = m.triangles[t];
        Point3 p[3];
        for (int c = 0; c < 3; ++c)
            p[c] = pos[static_cast<std::size_t>(tri[static_cast<std::size_t>(c)])] + m.ambient.lattice(m.lift(t, c));
        const double a = 0.5 * norm(cross(p[1] - p[0], p[2] - p[0]));
        const double s = sum + a;
        comp += std::abs(sum) >= a ? (sum - s) + a : (a - s) + sum;
        sum = s;
    }
    return sum + comp;
}

}  // namespace plateau
