#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "../geom/mesh.hpp"

namespace plateau {

namespace detail {

/// Point at normalized arc parameter s in [0,1) along a closed loop.
inline Point3 loop_point(const std::vector<Point3>& pts, const std::vector<double>& cum, double s) {
    const double total = cum.back();
    double target = s * total;
    auto it = std::upper_bound(cum.begin(), cum.end(), target);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - cum.begin() - 1));
    if (i >= pts.size()) i = pts.size() - 1;
    const double len = cum[i + 1] - cum[i];
    const double t = len > 0 ? (target - cum[i]) / len : 0.0;
    return pts[i] + (pts[(i + 1) % pts.size()] - pts[i]) * t;
}

/// Triangles joining ring A (params sa) to ring B (params sb); both params
/// start at 0 and increase. Triangles run A_i -> A_{i+1} -> B_j.
inline void zipper(const std::vector<int>& A, const std::vector<double>& sa, const std::vector<int>& B,
                   const std::vector<double>& sb, std::vector<Tri>& out) {
    const std::size_t na = A.size(), nb = B.size();
    std::size_t i = 0, j = 0;
    while (i < na || j < nb) {
        const double next_a = i < na ? (i + 1 < na ? sa[i + 1] : 1.0 + sa[0]) : 2.0;
        const double next_b = j < nb ? (j + 1 < nb ? sb[j + 1] : 1.0 + sb[0]) : 2.0;
        if (next_a <= next_b) {
            out.push_back({A[i % na], A[(i + 1) % na], B[j % nb]});
            ++i;
        } else {
            out.push_back({A[i % na], B[(j + 1) % nb], B[j % nb]});
            ++j;
        }
    }
}

inline std::vector<double> cumulative(const std::vector<Point3>& pts) {
    std::vector<double> cum(pts.size() + 1, 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i) cum[i + 1] = cum[i] + distance(pts[i], pts[(i + 1) % pts.size()]);
    return cum;
}

inline void laplacian_smooth(TriSurfaceMesh& m, int rounds) {
    std::vector<std::vector<int>> nb(m.vertices.size());
    for (const auto& t : m.triangles)
        for (int c = 0; c < 3; ++c) {
            nb[static_cast<std::size_t>(t[static_cast<std::size_t>(c)])].push_back(t[static_cast<std::size_t>((c + 1) % 3)]);
            nb[static_cast<std::size_t>(t[static_cast<std::size_t>((c + 1) % 3)])].push_back(t[static_cast<std::size_t>(c)]);
        }
    for (auto& n : nb) {
        std::sort(n.begin(), n.end());
        n.erase(std::unique(n.begin(), n.end()), n.end());
    }
    for (int r = 0; r < rounds; ++r) {
        auto next = m.vertices;
        for (std::size_t v = 0; v < m.vertices.size(); ++v) {
            if (m.boundary_fixed[v] || nb[v].empty()) continue;
            Vec3 s;
            for (int w : nb[v]) s += m.vertices[static_cast<std::size_t>(w)];
            next[v] = m.vertices[v] * 0.5 + s * (0.5 / static_cast<double>(nb[v].size()));
        }
        m.vertices = std::move(next);
    }
}

/// Makes the boundary loop run along the resampled input order.
inline void orient_along(TriSurfaceMesh& m, int v0, int v1) {
    for (const auto& k : boundary_edges(m))
        if (k[0] == v0 && k[1] == v1) return;
    flip_orientation(m);
}

}  // namespace detail

/// Disk mesh spanning a closed euclidean curve: the boundary is resampled to
/// target_edge, shrunken copies toward the centroid form concentric rings, and
/// the interior is Laplacian-smoothed.
inline TriSurfaceMesh triangulate_disk(const ClosedPolyline& boundary, double target_edge) {
    if (boundary.ambient.is_torus()) throw Error("triangulate_disk needs a euclidean curve");
    if (!(target_edge > 0)) throw Error("target_edge must be positive");
    const ClosedPolyline rb = resampled(boundary, target_edge);
    const auto& bp = rb.vertices;
    const auto cum = detail::cumulative(bp);
    Point3 centroid;
    for (std::size_t i = 0; i < bp.size(); ++i)
        centroid += (bp[i] + bp[(i + 1) % bp.size()]) * (0.5 * (cum[i + 1] - cum[i]) / cum.back());
    double diam = 0.0;
    for (const auto& p : bp) diam = std::max(diam, distance(p, centroid));
    if (diam < 1e-9) throw Error("degenerate boundary: near-zero diameter");

    TriSurfaceMesh m;
    const int N = static_cast<int>(bp.size());
    const int K = std::max(1, static_cast<int>(std::lround(diam / target_edge)));
    std::vector<int> prev(static_cast<std::size_t>(N));
    std::vector<double> prev_s(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        m.vertices.push_back(bp[static_cast<std::size_t>(i)]);
        m.boundary_fixed.push_back(1);
        prev[static_cast<std::size_t>(i)] = i;
        prev_s[static_cast<std::size_t>(i)] = cum[static_cast<std::size_t>(i)] / cum.back();
    }
    for (int k = 1; k < K; ++k) {
        const double t = 1.0 - static_cast<double>(k) / K;
        const int n = std::max(3, static_cast<int>(std::lround(N * t)));
        std::vector<int> ring(static_cast<std::size_t>(n));
        std::vector<double> rs(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            const double s = static_cast<double>(j) / n;
            ring[static_cast<std::size_t>(j)] = static_cast<int>(m.vertices.size());
            rs[static_cast<std::size_t>(j)] = s;
            m.vertices.push_back(centroid + (detail::loop_point(bp, cum, s) - centroid) * t);
            m.boundary_fixed.push_back(0);
        }
        detail::zipper(prev, prev_s, ring, rs, m.triangles);
        prev = std::move(ring);
        prev_s = std::move(rs);
    }
    const int center = static_cast<int>(m.vertices.size());
    m.vertices.push_back(centroid);
    m.boundary_fixed.push_back(0);
    for (std::size_t j = 0; j < prev.size(); ++j) m.triangles.push_back({prev[j], prev[(j + 1) % prev.size()], center});
    orient_coherently(m);
    detail::orient_along(m, 0, 1);
    detail::laplacian_smooth(m, 10);
    return m;
}

/// Annulus mesh between two euclidean loops traversed in the same rotational
/// sense; rings interpolate linearly between them.
inline TriSurfaceMesh triangulate_annulus(const ClosedPolyline& a, const ClosedPolyline& b, double target_edge) {
    if (a.ambient.is_torus() || b.ambient.is_torus()) throw Error("triangulate_annulus needs euclidean curves");
    if (!(target_edge > 0)) throw Error("target_edge must be positive");
    const auto ra = resampled(a, target_edge).vertices;
    const auto rb = resampled(b, target_edge).vertices;
    const auto ca = detail::cumulative(ra), cb = detail::cumulative(rb);
    double gap = 0.0;
    for (int j = 0; j < 16; ++j)
        gap = std::max(gap, distance(detail::loop_point(ra, ca, j / 16.0), detail::loop_point(rb, cb, j / 16.0)));
    const int K = std::max(1, static_cast<int>(std::lround(gap / target_edge)));
    TriSurfaceMesh m;
    std::vector<int> prev;
    std::vector<double> prev_s;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        prev.push_back(static_cast<int>(m.vertices.size()));
        prev_s.push_back(ca[i] / ca.back());
        m.vertices.push_back(ra[i]);
        m.boundary_fixed.push_back(1);
    }
    for (int k = 1; k <= K; ++k) {
        std::vector<int> ring;
        std::vector<double> rs;
        if (k == K) {
            for (std::size_t i = 0; i < rb.size(); ++i) {
                ring.push_back(static_cast<int>(m.vertices.size()));
                rs.push_back(cb[i] / cb.back());
                m.vertices.push_back(rb[i]);
                m.boundary_fixed.push_back(1);
            }
        } else {
            const double t = static_cast<double>(k) / K;
            const int n = static_cast<int>(std::lround((1 - t) * static_cast<double>(ra.size()) + t * static_cast<double>(rb.size())));
            for (int j = 0; j < n; ++j) {
                const double s = static_cast<double>(j) / n;
                ring.push_back(static_cast<int>(m.vertices.size()));
                rs.push_back(s);
                m.vertices.push_back(detail::loop_point(ra, ca, s) * (1 - t) + detail::loop_point(rb, cb, s) * t);
                m.boundary_fixed.push_back(0);
            }
        }
        detail::zipper(prev, prev_s, ring, rs, m.triangles);
        prev = std::move(ring);
        prev_s = std::move(rs);
    }
    orient_coherently(m);
    detail::orient_along(m, 0, 1);
    return m;
}

}  // namespace plateau
