#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "../geom/mesh.hpp"

namespace plateau {

/// Interval [lo, hi] meshed with spacing h instead of the default.
struct RefineZone {
    double lo = 0.0, hi = 0.0, h = 0.0;
};

/// Sorted parameter values on [a, b] containing every fixed break inside it,
/// with spacing at most h (or the zone's h where zones apply).
inline std::vector<double> breakpoints(double a, double b, std::vector<double> fixed, double h,
                                       const std::vector<RefineZone>& zones = {}) {
    if (!(b > a)) throw Error("breakpoints: empty interval");
    if (!(h > 0)) throw Error("breakpoints: spacing must be positive");
    fixed.push_back(a);
    fixed.push_back(b);
    for (const auto& z : zones) {
        if (!(z.h > 0)) throw Error("breakpoints: zone spacing must be positive");
        fixed.push_back(z.lo);
        fixed.push_back(z.hi);
    }
    std::vector<double> knots;
    for (double f : fixed)
        if (f >= a && f <= b) knots.push_back(f);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end(), [](double x, double y) { return std::abs(x - y) < 1e-12; }),
                knots.end());
    const auto spacing = [&](double mid) {
        double s = h;
        for (const auto& z : zones)
            if (mid >= z.lo && mid <= z.hi) s = std::min(s, z.h);
        return s;
    };
    std::vector<double> out{knots.front()};
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double lo = knots[i], hi = knots[i + 1];
        const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / spacing(0.5 * (lo + hi)) - 1e-9)));
        for (int k = 1; k < n; ++k) out.push_back(lo + (hi - lo) * k / n);
        out.push_back(hi);
    }
    return out;
}

/// Collects parametric grid patches and welds them along their borders.
class PatchAssembler {
public:
    using Map = std::function<Point3(double, double)>;
    using CellFilter = std::function<bool(double, double)>;

    /// Adds the image of the grid us x vs under f. Cells whose centre fails
    /// `keep` are skipped.
    void add_grid(const Map& f, const std::vector<double>& us, const std::vector<double>& vs,
                  const CellFilter& keep = nullptr) {
        if (us.size() < 2 || vs.size() < 2) throw Error("patch grid needs at least 2 values per direction");
        const int base = static_cast<int>(verts_.size());
        const std::size_t nu = us.size(), nv = vs.size();
        for (std::size_t j = 0; j < nv; ++j)
            for (std::size_t i = 0; i < nu; ++i) {
                verts_.push_back(f(us[i], vs[j]));
                weldable_.push_back(i == 0 || j == 0 || i + 1 == nu || j + 1 == nv);
            }
        const auto id = [&](std::size_t i, std::size_t j) { return base + static_cast<int>(j * nu + i); };
        for (std::size_t j = 0; j + 1 < nv; ++j)
            for (std::size_t i = 0; i + 1 < nu; ++i) {
                if (keep && !keep(0.5 * (us[i] + us[i + 1]), 0.5 * (vs[j] + vs[j + 1]))) {
                    for (auto [a, b] : {std::pair{i, j}, {i + 1, j}, {i, j + 1}, {i + 1, j + 1}})
                        weldable_[static_cast<std::size_t>(id(a, b))] = true;
                    continue;
                }
                tris_.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
                tris_.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
            }
    }

    /// Zips consecutive polylines into a strip of triangles. Rows may differ in
    /// length (a single point closes a fan). First and last rows and the row
    /// endpoints are weldable.
    void add_row_strip(const std::vector<std::vector<Point3>>& rows) {
        if (rows.size() < 2) throw Error("row strip needs at least 2 rows");
        std::vector<int> start;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].empty()) throw Error("row strip has an empty row");
            start.push_back(static_cast<int>(verts_.size()));
            for (std::size_t i = 0; i < rows[r].size(); ++i) {
                verts_.push_back(rows[r][i]);
                weldable_.push_back(r == 0 || r + 1 == rows.size() || i == 0 || i + 1 == rows[r].size());
            }
        }
        for (std::size_t r = 0; r + 1 < rows.size(); ++r) {
            const std::size_t n = rows[r].size(), m = rows[r + 1].size();
            if (n == 1 && m == 1) throw Error("row strip cannot join two single points");
            const int a0 = start[r], b0 = start[r + 1];
            std::size_t i = 0, j = 0;
            const auto frac = [](std::size_t k, std::size_t len) {
                return len == 1 ? 1.0 : static_cast<double>(k) / static_cast<double>(len - 1);
            };
            while (i + 1 < n || j + 1 < m) {
                // advance along whichever row lags behind in relative position
                const bool step_a = j + 1 >= m || (i + 1 < n && frac(i + 1, n) <= frac(j + 1, m));
                if (step_a) {
                    tris_.push_back({a0 + static_cast<int>(i), a0 + static_cast<int>(i + 1), b0 + static_cast<int>(j)});
                    ++i;
                } else {
                    tris_.push_back({a0 + static_cast<int>(i), b0 + static_cast<int>(j + 1), b0 + static_cast<int>(j)});
                    ++j;
                }
            }
        }
    }

    /// Welds coincident border vertices, drops collapsed triangles, orients
    /// coherently and pins the boundary.
    TriSurfaceMesh assemble(double weld_tol = 1e-9) const {
        std::vector<int> parent(verts_.size());
        std::iota(parent.begin(), parent.end(), 0);
        const std::function<int(int)> find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x)
                x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            return x;
        };
        const double cell = std::max(weld_tol * 4, 1e-8);
        std::map<std::array<long long, 3>, std::vector<int>> grid;
        const auto key = [&](const Point3& p) {
            return std::array<long long, 3>{static_cast<long long>(std::floor(p.x / cell)),
                                            static_cast<long long>(std::floor(p.y / cell)),
                                            static_cast<long long>(std::floor(p.z / cell))};
        };
        for (std::size_t v = 0; v < verts_.size(); ++v) {
            if (!weldable_[v]) continue;
            const auto k = key(verts_[v]);
            for (long long dx = -1; dx <= 1; ++dx)
                for (long long dy = -1; dy <= 1; ++dy)
                    for (long long dz = -1; dz <= 1; ++dz) {
                        auto it = grid.find({k[0] + dx, k[1] + dy, k[2] + dz});
                        if (it == grid.end()) continue;
                        for (int w : it->second)
                            if (distance(verts_[v], verts_[static_cast<std::size_t>(w)]) <= weld_tol)
                                parent[static_cast<std::size_t>(find(static_cast<int>(v)))] = find(w);
                    }
            grid[k].push_back(static_cast<int>(v));
        }
        TriSurfaceMesh m;
        m.vertices = verts_;
        for (auto t : tris_) {
            for (auto& v : t) v = find(v);
            if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) continue;
            m.triangles.push_back(t);
        }
        m.boundary_fixed.assign(m.vertices.size(), 0);
        compact_vertices(m);
        orient_coherently(m);
        pin_boundary(m);
        return m;
    }

private:
    std::vector<Point3> verts_;
    std::vector<char> weldable_;
    std::vector<Tri> tris_;
};

/// Doubly periodic grid on the torus: f(us[i], vs[j]) is continuous, with
/// us and vs spanning one period each, so the last row and column coincide
/// with the first modulo the lattice. Lifts come from the continuous image.
inline TriSurfaceMesh build_torus_grid(const Ambient& amb, const PatchAssembler::Map& f, const std::vector<double>& us,
                                       const std::vector<double>& vs, const PatchAssembler::CellFilter& keep = nullptr) {
    if (!amb.is_torus()) throw Error("build_torus_grid needs a flat-torus ambient");
    if (us.size() < 3 || vs.size() < 3) throw Error("periodic grid needs at least 3 values per direction");
    const std::size_t nu = us.size() - 1, nv = vs.size() - 1;
    TriSurfaceMesh m;
    m.ambient = amb;
    for (std::size_t j = 0; j < nv; ++j)
        for (std::size_t i = 0; i < nu; ++i) m.vertices.push_back(amb.wrap(f(us[i], vs[j])).first);
    const auto id = [&](std::size_t i, std::size_t j) { return static_cast<int>((j % nv) * nu + (i % nu)); };
    const auto lift_of = [&](std::size_t i, std::size_t j) {
        const Point3 p = f(us[i], vs[j]);
        const Point3 q = m.vertices[static_cast<std::size_t>(id(i, j))];
        const Vec3 d = p - q;
        ShiftVec s;
        for (int a = 0; a < 3; ++a) s.k[static_cast<std::size_t>(a)] = static_cast<int>(std::lround(d[a] / amb.periods[a]));
        return s;
    };
    for (std::size_t j = 0; j < nv; ++j)
        for (std::size_t i = 0; i < nu; ++i) {
            if (keep && !keep(0.5 * (us[i] + us[i + 1]), 0.5 * (vs[j] + vs[j + 1]))) continue;
            m.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            m.tri_lifts.push_back({lift_of(i, j), lift_of(i + 1, j), lift_of(i + 1, j + 1)});
            m.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
            m.tri_lifts.push_back({lift_of(i, j), lift_of(i + 1, j + 1), lift_of(i, j + 1)});
        }
    m.boundary_fixed.assign(m.vertices.size(), 0);
    compact_vertices(m);
    pin_boundary(m);
    return m;
}

/// Re-homes a euclidean mesh lying inside the fundamental domain into a torus ambient.
inline TriSurfaceMesh embed_in_torus(TriSurfaceMesh m, const Ambient& amb) {
    if (!amb.is_torus()) throw Error("embed_in_torus needs a flat-torus ambient");
    for (auto& p : m.vertices) {
        const auto [w, k] = amb.wrap(p);
        if (!k.is_zero()) throw Error("mesh leaves the fundamental domain");
        p = w;
    }
    m.ambient = amb;
    m.tri_lifts.assign(m.triangles.size(), TriLift{});
    return m;
}

}  // namespace plateau
