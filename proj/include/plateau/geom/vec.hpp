#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace plateau {

/// Raised for invalid inputs and violated preconditions across the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Absolute tolerance for geometric predicates (intersections, coincidence).
inline constexpr double kGeomTol = 1e-9;

inline constexpr double kPi = 3.14159265358979323846;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
    constexpr Vec3& operator/=(double s) { x /= s; y /= s; z /= s; return *this; }

    friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
    friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend constexpr Vec3 operator/(Vec3 a, double s) { return a /= s; }
    friend constexpr bool operator==(const Vec3& a, const Vec3& b) = default;

    friend std::ostream& operator<<(std::ostream& os, const Vec3& v) {
        return os << '(' << v.x << ", " << v.y << ", " << v.z << ')';
    }
};

using Point3 = Vec3;

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
constexpr double norm2(const Vec3& a) { return dot(a, a); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

inline Vec3 normalized(const Vec3& a) {
    const double n = norm(a);
    return n > 0.0 ? a / n : Vec3{};
}

inline bool is_finite(const Vec3& a) {
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

constexpr Vec3 cwise_mul(const Vec3& a, const Vec3& b) { return {a.x * b.x, a.y * b.y, a.z * b.z}; }

/// Integer lattice translation, in units of the torus periods.
struct ShiftVec {
    std::array<int, 3> k{0, 0, 0};

    constexpr ShiftVec() = default;
    constexpr ShiftVec(int a, int b, int c) : k{a, b, c} {}

    constexpr int operator[](int i) const { return k[static_cast<std::size_t>(i)]; }
    constexpr int& operator[](int i) { return k[static_cast<std::size_t>(i)]; }
    constexpr bool is_zero() const { return k[0] == 0 && k[1] == 0 && k[2] == 0; }

    friend constexpr ShiftVec operator+(ShiftVec a, const ShiftVec& b) {
        for (int i = 0; i < 3; ++i) a[i] += b[i];
        return a;
    }
    friend constexpr ShiftVec operator-(ShiftVec a, const ShiftVec& b) {
        for (int i = 0; i < 3; ++i) a[i] -= b[i];
        return a;
    }
    friend constexpr ShiftVec operator-(const ShiftVec& a) { return {-a[0], -a[1], -a[2]}; }
    friend constexpr bool operator==(const ShiftVec& a, const ShiftVec& b) = default;
};

/// Sheared box given by a base quadrilateral and a top quadrilateral that is the
/// base translated by one lateral edge vector.
struct Parallelepiped {
    std::array<Point3, 4> base;  // a1..a4
    std::array<Point3, 4> top;   // b1..b4

    Vec3 edge_u() const { return base[3] - base[0]; }
    Vec3 edge_v() const { return base[1] - base[0]; }
    Vec3 lateral() const { return top[0] - base[0]; }

    /// Affine coordinates (u, v, w) of p, so that p = a1 + u*(a4-a1) + v*(a2-a1) + w*(b1-a1).
    Vec3 local_coords(const Point3& p) const {
        const Vec3 eu = edge_u(), ev = edge_v(), ew = lateral();
        const double det = dot(eu, cross(ev, ew));
        const Vec3 d = p - base[0];
        return {dot(d, cross(ev, ew)) / det, dot(eu, cross(d, ew)) / det, dot(eu, cross(ev, d)) / det};
    }

    /// Strict interior test; points within tol of a face count as outside.
    bool contains_interior(const Point3& p, double tol = kGeomTol) const {
        const Vec3 c = local_coords(p);
        const auto inside = [&](double t, double scale) { return t * scale > tol && (1.0 - t) * scale > tol; };
        // scale by an inradius-like length so tol acts roughly as a distance
        const double hu = volume() / norm(cross(edge_v(), lateral()));
        const double hv = volume() / norm(cross(edge_u(), lateral()));
        const double hw = volume() / norm(cross(edge_u(), edge_v()));
        return inside(c.x, hu) && inside(c.y, hv) && inside(c.z, hw);
    }

    double volume() const { return std::abs(dot(edge_u(), cross(edge_v(), lateral()))); }

    /// Nearest point on the boundary surface to an interior point p.
    Point3 project_to_boundary(const Point3& p) const {
        const Vec3 c = local_coords(p);
        const double hu = volume() / norm(cross(edge_v(), lateral()));
        const double hv = volume() / norm(cross(edge_u(), lateral()));
        const double hw = volume() / norm(cross(edge_u(), edge_v()));
        // distance to each face pair, measured along the face normal
        const std::array<double, 6> d{c.x * hu, (1.0 - c.x) * hu, c.y * hv, (1.0 - c.y) * hv, c.z * hw, (1.0 - c.z) * hw};
        std::size_t best = 0;
        for (std::size_t i = 1; i < d.size(); ++i)
            if (d[i] < d[best]) best = i;
        const Vec3 nu = normalized(cross(edge_v(), lateral()));
        const Vec3 nv = normalized(cross(edge_u(), lateral()));
        const Vec3 nw = normalized(cross(edge_u(), edge_v()));
        const auto toward = [&](const Vec3& n, const Point3& on_face) {
            return p - n * dot(p - on_face, n);
        };
        switch (best) {
            case 0: return toward(nu, base[0]);
            case 1: return toward(nu, base[3]);
            case 2: return toward(nv, base[0]);
            case 3: return toward(nv, base[1]);
            case 4: return toward(nw, base[0]);
            default: return toward(nw, top[0]);
        }
    }
};

enum class AmbientKind { Euclidean3, FlatTorus3 };

struct Ambient {
    AmbientKind kind = AmbientKind::Euclidean3;
    Vec3 periods{1.0, 1.0, 1.0};
    std::optional<Parallelepiped> excluded;

    static Ambient euclidean() { return {}; }

    static Ambient flat_torus(const Vec3& periods, std::optional<Parallelepiped> excluded = std::nullopt) {
        if (!(periods.x > 0 && periods.y > 0 && periods.z > 0))
            throw Error("flat torus periods must be positive");
        if (excluded) {
            for (const auto* quad : {&excluded->base, &excluded->top})
                for (const auto& c : *quad)
                    for (int i = 0; i < 3; ++i)
                        if (c[i] < 0.0 || c[i] > periods[i])
                            throw Error("excluded region must lie inside one fundamental domain");
        }
        Ambient a;
        a.kind = AmbientKind::FlatTorus3;
        a.periods = periods;
        a.excluded = std::move(excluded);
        return a;
    }

    bool is_torus() const { return kind == AmbientKind::FlatTorus3; }

    Vec3 lattice(const ShiftVec& s) const {
        if (!is_torus()) return {};
        return {s[0] * periods.x, s[1] * periods.y, s[2] * periods.z};
    }

    /// Maps p into the fundamental domain [0, L)^3; returns the wrapped point and
    /// the shift k with p = wrapped + k*L.
    std::pair<Point3, ShiftVec> wrap(const Point3& p) const {
        if (!is_torus()) return {p, ShiftVec{}};
        Point3 q = p;
        ShiftVec k;
        for (int i = 0; i < 3; ++i) {
            const double L = periods[i];
            const double f = std::floor(q[i] / L);
            k[i] = static_cast<int>(f);
            q[i] -= f * L;
            if (q[i] >= L) { q[i] -= L; k[i] += 1; }
            if (q[i] < 0) { q[i] = 0; }
        }
        return {q, k};
    }

    /// Shortest lattice image of a displacement.
    Vec3 minimal_image(const Vec3& d) const {
        if (!is_torus()) return d;
        Vec3 r = d;
        for (int i = 0; i < 3; ++i) r[i] -= periods[i] * std::round(r[i] / periods[i]);
        return r;
    }

    /// True if p (any lift) lies strictly inside the excluded region.
    bool in_excluded(const Point3& p, double tol = kGeomTol) const {
        if (!excluded) return false;
        if (!is_torus()) return excluded->contains_interior(p, tol);
        for (int i = -1; i <= 1; ++i)
            for (int j = -1; j <= 1; ++j)
                for (int k = -1; k <= 1; ++k)
                    if (excluded->contains_interior(p + lattice({i, j, k}), tol)) return true;
        return false;
    }
};

}  // namespace plateau
