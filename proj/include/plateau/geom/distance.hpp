#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "bvh.hpp"
#include "intersect.hpp"
#include "mesh.hpp"

namespace plateau {

/// Sample points covering every triangle at spacing <= h (vertices included).
inline std::vector<Point3> surface_samples(const TriSurfaceMesh& m, double h) {
    std::vector<Point3> out;
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        const auto p = m.corners(t);
        const double longest = std::max({distance(p[0], p[1]), distance(p[1], p[2]), distance(p[2], p[0])});
        const int n = std::max(1, static_cast<int>(std::ceil(longest / h)));
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j) {
                const double u = static_cast<double>(i) / n, v = static_cast<double>(j) / n;
                out.push_back(p[0] + (p[1] - p[0]) * u + (p[2] - p[0]) * v);
            }
    }
    return out;
}

/// max over samples of `from` of the distance to mesh `to`.
inline double directed_hausdorff(const TriSurfaceMesh& from, const TriSurfaceMesh& to, double h) {
    const auto tris = lifted_triangles(to);
    std::vector<Aabb> boxes;
    boxes.reserve(tris.size());
    for (const auto& t : tris) boxes.push_back(triangle_box(t));
    const Bvh bvh(boxes);
    double worst = 0.0;
    for (const auto& p : surface_samples(from, h)) {
        const double d2 = bvh.nearest(p, [&](std::size_t i) {
            const double d = point_triangle_distance(p, tris[i]);
            return d * d;
        });
        worst = std::max(worst, std::sqrt(d2));
    }
    return worst;
}

/// Symmetric Hausdorff distance estimated from samples at spacing sample_h.
inline double hausdorff_distance(const TriSurfaceMesh& a, const TriSurfaceMesh& b, double sample_h) {
    if (a.ambient.is_torus() || b.ambient.is_torus()) throw Error("hausdorff_distance needs euclidean meshes");
    if (!(sample_h > 0.0)) throw Error("sample spacing must be positive");
    return std::max(directed_hausdorff(a, b, sample_h), directed_hausdorff(b, a, sample_h));
}

}  // namespace plateau
