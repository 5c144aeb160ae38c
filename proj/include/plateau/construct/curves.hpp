#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "../geom/polyline.hpp"

namespace plateau {

// Example I -----------------------------------------------------------------

struct ExampleIParams {
    double eps = 0.05;          // strip half-width
    double C = 10.0;            // tower height
    double bridge_width = 0.05; // w
    double trim = 0.025;        // strip tip trim

    void validate() const {
        if (!(eps > 0)) throw Error("eps must be positive");
        if (!(C > 0)) throw Error("C must be positive");
        if (!(bridge_width > 0 && bridge_width <= eps)) throw Error("bridge width must lie in (0, eps]");
        if (!(trim >= 0)) throw Error("trim must be non-negative");
    }
};

/// p1..p6 of the hexagonal curve.
inline std::array<Point3, 6> gamma1_points(const ExampleIParams& p) {
    return {Point3{1, -1, 0}, Point3{1, 1, 0}, Point3{p.eps, 1, 0},
            Point3{p.eps, 1, p.C}, Point3{p.eps, -1, -p.C}, Point3{p.eps, -1, 0}};
}

inline ClosedPolyline build_gamma1(const ExampleIParams& p) {
    p.validate();
    const auto pts = gamma1_points(p);
    return ClosedPolyline(std::vector<Point3>(pts.begin(), pts.end()));
}

inline ClosedPolyline build_gamma2(const ExampleIParams& p) { return mirror_curve(build_gamma1(p), MirrorPlane::X0); }

namespace detail {

/// Arc of c from the point half past a around to the point half before a.
inline std::vector<Point3> arc_around(const ClosedPolyline& c, const Point3& a, double half) {
    const std::size_t n = c.size();
    for (std::size_t k = 0; k < n; ++k)
        if (distance(c.vertices[k], a) <= kGeomTol) {
            const Point3 prev = c.vertices[(k + n - 1) % n], next = c.vertices[(k + 1) % n];
            if (half >= distance(prev, a) || half >= distance(next, a))
                throw Error("bridge width larger than the adjacent segment lengths");
            std::vector<Point3> out{a + normalized(next - a) * half};
            for (std::size_t i = 1; i < n; ++i) out.push_back(c.vertices[(k + i) % n]);
            out.push_back(a + normalized(prev - a) * half);
            return out;
        }
    for (std::size_t k = 0; k < n; ++k) {
        const Point3 s = c.vertices[k], e = c.vertices[(k + 1) % n];
        const auto r = point_segment_closest(a, s, e);
        if (r.distance > kGeomTol) continue;
        if (half >= distance(s, a) || half >= distance(e, a))
            throw Error("bridge width larger than the adjacent segment lengths");
        const Vec3 dir = normalized(e - s);
        std::vector<Point3> out{a + dir * half};
        for (std::size_t i = 1; i <= n; ++i) out.push_back(c.vertices[(k + i) % n]);
        out.push_back(a - dir * half);
        return out;
    }
    throw Error("bridge point does not lie on the curve");
}

}  // namespace detail

/// Joins c1 and c2 by two rails along the segment a1a2: the subarcs of
/// length `width` centred at a1 and a2 are removed.
inline ClosedPolyline bridge_curves(const ClosedPolyline& c1, const ClosedPolyline& c2, const Point3& a1,
                                   const Point3& a2, double width) {
    if (c1.ambient.is_torus() || c2.ambient.is_torus()) throw Error("bridge_curves needs euclidean curves");
    if (!(width > 0)) throw Error("bridge width must be positive");
    auto arc1 = detail::arc_around(c1, a1, width / 2);
    auto arc2 = detail::arc_around(c2, a2, width / 2);
    std::vector<Point3> out;
    out.insert(out.end(), arc1.begin(), arc1.end());
    out.insert(out.end(), arc2.begin(), arc2.end());
    return ClosedPolyline(std::move(out));
}

/// The bridged pair used as the boundary of both competitors in Example I.
inline ClosedPolyline build_gamma_hat(const ExampleIParams& p) {
    const auto g1 = build_gamma1(p);
    const auto g2 = build_gamma2(p);
    const auto pts = gamma1_points(p);
    const Point3 p5 = pts[4];
    return bridge_curves(g1, g2, p5, Point3{-p5.x, p5.y, p5.z}, p.bridge_width);
}

inline ClosedPolyline build_tau() {
    return ClosedPolyline({Point3{1, -1, 0}, Point3{1, 1, 0}, Point3{-1, 1, 0}, Point3{-1, -1, 0}});
}

// Example II ----------------------------------------------------------------

struct ExampleIIParams {
    double h = 0.01;
    double delta = 0.166;
    double theta0 = std::atan(1.0 / 30.0);
    double eps = 0.015;
    double c = 0.005;

    double sigma() const { return (h / 3.0) * std::cos(theta0) / std::sin(theta0); }
    double x() const { return 1.0 - 2.0 * delta; }
    double shear(double level) const { return (level - h / 3.0) * std::cos(theta0) / std::sin(theta0); }

    /// Names of violated constraints (empty when valid).
    std::vector<std::string> violations() const {
        std::vector<std::string> v;
        if (!(h > 0)) v.push_back("h > 0");
        if (!(delta > 0 && delta < 0.5)) v.push_back("0 < delta < 1/2");
        if (!(theta0 > 0 && std::tan(theta0) < 1.0 / 6.0)) v.push_back("tan(theta0) < 1/6");
        if (!(sigma() < delta)) v.push_back("sigma < delta");
        if (!(sigma() > 2 * h)) v.push_back("sigma > 2h");
        if (!(c > h / 3 && c < 2 * h / 3)) v.push_back("h/3 < c < 2h/3");
        if (!(h < eps)) v.push_back("h < eps");
        if (!(eps < sigma() / 2)) v.push_back("eps < sigma/2");
        return v;
    }

    void validate() const {
        const auto v = violations();
        if (v.empty()) return;
        std::string msg = "example II parameters violate:";
        for (const auto& s : v) msg += " [" + s + "]";
        throw Error(msg);
    }
};

inline Parallelepiped build_parallelepiped(const ExampleIIParams& p) {
    const double s = p.sigma();
    if (!(s < p.delta)) throw Error("sigma must be smaller than delta");
    const double d = p.delta, lo = p.h / 3.0;
    Parallelepiped b;
    b.base = {Point3{d, d, lo}, Point3{d, 1 - d, lo}, Point3{1 - d, 1 - d, lo}, Point3{1 - d, d, lo}};
    for (std::size_t i = 0; i < 4; ++i) b.top[i] = b.base[i] + Vec3{-s, 0, lo};
    return b;
}

inline Ambient example_II_ambient(const ExampleIIParams& p) {
    return Ambient::flat_torus({1, 1, p.h}, build_parallelepiped(p));
}

/// Boundary of the level-`level` cross-section of the sheared box, counterclockwise seen from +z.
inline ClosedPolyline build_gamma_c(const ExampleIIParams& p, double level) {
    if (!(level >= p.h / 3 && level <= 2 * p.h / 3)) throw Error("slice height outside [h/3, 2h/3]");
    const double s = p.shear(level), d = p.delta;
    return ClosedPolyline({Point3{d - s, d, level}, Point3{1 - d - s, d, level}, Point3{1 - d - s, 1 - d, level},
                           Point3{d - s, 1 - d, level}},
                          example_II_ambient(p));
}

inline ClosedPolyline build_gamma_c(const ExampleIIParams& p) { return build_gamma_c(p, p.c); }

// Example III ---------------------------------------------------------------

inline ClosedPolyline circle_polyline(double radius, double z, int n) {
    if (n < 3) throw Error("circle needs at least 3 segments");
    std::vector<Point3> v;
    for (int i = 0; i < n; ++i) {
        const double t = 2 * kPi * i / n;
        v.push_back({radius * std::cos(t), radius * std::sin(t), z});
    }
    return ClosedPolyline(std::move(v));
}

/// gamma1+, gamma1-, gamma2+, gamma2- on the unit sphere.
inline std::array<ClosedPolyline, 4> build_sphere_circles(int n = 256) {
    const std::array<double, 4> zs{0.2, -0.1, 0.1, -0.2};
    std::array<ClosedPolyline, 4> out;
    for (std::size_t i = 0; i < 4; ++i) out[i] = circle_polyline(std::sqrt(1 - zs[i] * zs[i]), zs[i], n);
    return out;
}

struct ExampleIIIBParams {
    double delta = 0.1;
    double c = 0.15;
    double d = 0.1;

    void validate() const {
        if (!(delta > 0 && delta < 0.5)) throw Error("delta must lie in (0, 1/2)");
        if (!(c > delta && c < 1 - delta)) throw Error("slice height must lie in (delta, 1-delta)");
        if (!(d >= 0 && d < 1)) throw Error("d must lie in [0, 1)");
    }
};

inline Parallelepiped iiib_cube(const ExampleIIIBParams& p) {
    const double a = p.delta, b = 1 - p.delta;
    Parallelepiped box;
    box.base = {Point3{a, a, a}, Point3{a, b, a}, Point3{b, b, a}, Point3{b, a, a}};
    for (std::size_t i = 0; i < 4; ++i) box.top[i] = box.base[i] + Vec3{0, 0, b - a};
    return box;
}

inline Ambient iiib_ambient(const ExampleIIIBParams& p) { return Ambient::flat_torus({1, 1, 1}, iiib_cube(p)); }

/// u-intervals (y values) where the plane y+z=d (mod 1) runs inside the cube.
inline std::vector<std::pair<double, double>> iiib_hole_intervals(const ExampleIIIBParams& p) {
    std::vector<std::pair<double, double>> out;
    for (int k = -1; k <= 2; ++k) {
        const double lo = std::max(p.delta, p.d - (1 - p.delta) + k);
        const double hi = std::min(1 - p.delta, p.d - p.delta + k);
        if (hi - lo > 1e-12) {
            if (!out.empty() && lo <= out.back().second + 1e-12)
                out.back().second = hi;
            else
                out.emplace_back(lo, hi);
        }
    }
    return out;
}

/// Point of the slanted plane over parameters (x, u), in the fundamental domain.
inline Point3 iiib_plane_point(const ExampleIIIBParams& p, double x, double u) {
    double z = std::fmod(p.d - u, 1.0);
    if (z < 0) z += 1.0;
    return {x, u, z};
}

inline ClosedPolyline iiib_gamma_c(const ExampleIIIBParams& p) {
    const double a = p.delta, b = 1 - p.delta;
    return ClosedPolyline({Point3{a, a, p.c}, Point3{b, a, p.c}, Point3{b, b, p.c}, Point3{a, b, p.c}}, iiib_ambient(p));
}

/// Components of the slanted plane's intersection with the cube boundary.
inline std::vector<ClosedPolyline> iiib_alpha_d(const ExampleIIIBParams& p) {
    std::vector<ClosedPolyline> out;
    const double a = p.delta, b = 1 - p.delta;
    for (const auto& [u0, u1] : iiib_hole_intervals(p))
        out.emplace_back(std::vector<Point3>{iiib_plane_point(p, a, u0), iiib_plane_point(p, b, u0),
                                             iiib_plane_point(p, b, u1), iiib_plane_point(p, a, u1)},
                         iiib_ambient(p));
    return out;
}

}  // namespace plateau
