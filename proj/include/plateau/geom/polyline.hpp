#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "vec.hpp"

namespace plateau {

/// Closed vertex loop. Segment i runs from vertices[i] to vertices[i+1] (cyclic),
/// lifted by shifts[i] in a flat torus.
struct ClosedPolyline {
    std::vector<Point3> vertices;
    std::vector<ShiftVec> shifts;
    Ambient ambient;

    ClosedPolyline() = default;

    explicit ClosedPolyline(std::vector<Point3> verts, Ambient amb = Ambient::euclidean(),
                            std::vector<ShiftVec> sh = {})
        : vertices(std::move(verts)), shifts(std::move(sh)), ambient(std::move(amb)) {
        if (shifts.empty()) shifts.assign(vertices.size(), ShiftVec{});
        validate();
    }

    std::size_t size() const { return vertices.size(); }

    Vec3 segment(std::size_t i) const {
        const std::size_t j = (i + 1) % vertices.size();
        return vertices[j] + ambient.lattice(shifts[i]) - vertices[i];
    }

    void validate() const {
        if (vertices.size() < 3) throw Error("polyline needs at least 3 vertices");
        if (shifts.size() != vertices.size()) throw Error("polyline shift count mismatch");
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            if (!is_finite(vertices[i])) throw Error("polyline vertex is not finite");
            if (!ambient.is_torus() && !shifts[i].is_zero())
                throw Error("euclidean polyline cannot carry lattice shifts");
            if (norm(segment(i)) <= kGeomTol) throw Error("polyline has repeated consecutive vertices");
            if (ambient.is_torus())
                for (int a = 0; a < 3; ++a)
                    if (vertices[i][a] < -kGeomTol || vertices[i][a] > ambient.periods[a] + kGeomTol)
                        throw Error("torus polyline vertex outside the fundamental domain");
        }
    }
};

inline double polyline_length(const ClosedPolyline& c) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += norm(c.segment(i));
    return s;
}

/// Continuous lift starting at vertices[0]; returns size()+1 points (last closes the loop).
inline std::vector<Point3> unrolled(const ClosedPolyline& c) {
    std::vector<Point3> out;
    out.reserve(c.size() + 1);
    Point3 p = c.vertices[0];
    out.push_back(p);
    for (std::size_t i = 0; i < c.size(); ++i) {
        p += c.segment(i);
        out.push_back(p);
    }
    return out;
}

inline ClosedPolyline reversed(const ClosedPolyline& c) {
    const std::size_t n = c.size();
    std::vector<Point3> v(n);
    std::vector<ShiftVec> s(n);
    for (std::size_t j = 0; j < n; ++j) {
        v[j] = c.vertices[n - 1 - j];
        s[j] = -c.shifts[(2 * n - 2 - j) % n];
    }
    return ClosedPolyline(std::move(v), c.ambient, std::move(s));
}

enum class MirrorPlane { X0, Y0, Z0 };

/// Reflect in a coordinate plane; orientation is reversed so a mirrored
/// spanning surface induces the mirrored curve as its boundary.
inline ClosedPolyline mirror_curve(const ClosedPolyline& c, MirrorPlane plane) {
    if (c.ambient.is_torus()) throw Error("mirror_curve needs a euclidean ambient");
    const int axis = plane == MirrorPlane::X0 ? 0 : (plane == MirrorPlane::Y0 ? 1 : 2);
    std::vector<Point3> v;
    v.reserve(c.size());
    for (auto it = c.vertices.rbegin(); it != c.vertices.rend(); ++it) {
        Point3 p = *it;
        p[axis] = -p[axis];
        v.push_back(p);
    }
    return ClosedPolyline(std::move(v));
}

struct SegmentClosest {
    double distance;
    double t;  // parameter on the segment [0,1]
};

inline SegmentClosest point_segment_closest(const Point3& p, const Point3& a, const Point3& b) {
    const Vec3 ab = b - a;
    const double l2 = norm2(ab);
    double t = l2 > 0.0 ? dot(p - a, ab) / l2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return {distance(p, a + ab * t), t};
}

/// Minimum distance between segments [p0,p1] and [q0,q1].
inline double segment_segment_distance(const Point3& p0, const Point3& p1, const Point3& q0, const Point3& q1) {
    const Vec3 d1 = p1 - p0, d2 = q1 - q0, r = p0 - q0;
    const double a = dot(d1, d1), e = dot(d2, d2), f = dot(d2, r);
    double s = 0.0, t = 0.0;
    if (a <= 0.0 && e <= 0.0) return norm(r);
    if (a <= 0.0) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = dot(d1, r);
        if (e <= 0.0) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = dot(d1, d2);
            const double denom = a * e - b * b;
            s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return distance(p0 + d1 * s, q0 + d2 * t);
}

namespace detail {

/// Lattice offsets to try around a nearest image (just zero when euclidean).
inline std::vector<Vec3> image_offsets(const Ambient& amb) {
    if (!amb.is_torus()) return {Vec3{}};
    std::vector<Vec3> out;
    for (int x = -1; x <= 1; ++x)
        for (int y = -1; y <= 1; ++y)
            for (int z = -1; z <= 1; ++z) out.push_back(amb.lattice({x, y, z}));
    return out;
}

}  // namespace detail

/// Minimum distance between the traces of two curves (periodic images taken into account).
inline double curve_distance(const ClosedPolyline& a, const ClosedPolyline& b) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Point3 p0 = a.vertices[i];
        const Point3 p1 = p0 + a.segment(i);
        for (std::size_t j = 0; j < b.size(); ++j) {
            Point3 q0 = b.vertices[j];
            if (a.ambient.is_torus()) q0 = p0 + a.ambient.minimal_image(q0 - p0);
            const Point3 q1 = q0 + b.segment(j);
            // a long segment may be closer through another image
            for (const auto& o : detail::image_offsets(a.ambient))
                best = std::min(best, segment_segment_distance(p0, p1, q0 + o, q1 + o));
        }
    }
    return best;
}

/// Cumulative arc length at each vertex (first entry 0, size()+1 entries).
inline std::vector<double> arc_lengths(const ClosedPolyline& c) {
    std::vector<double> s(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) s[i + 1] = s[i] + norm(c.segment(i));
    return s;
}

/// Nearest point on the curve trace: distance and arc-length parameter.
inline std::pair<double, double> project_to_curve(const ClosedPolyline& c, const Point3& p,
                                                  const std::vector<double>& s) {
    double best = std::numeric_limits<double>::infinity(), param = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Point3 a = c.vertices[i];
        const Point3 q = c.ambient.is_torus() ? a + c.ambient.minimal_image(p - a) : p;
        for (const auto& off : detail::image_offsets(c.ambient)) {
            const auto r = point_segment_closest(q + off, a, a + c.segment(i));
            if (r.distance < best) {
                best = r.distance;
                param = s[i] + r.t * (s[i + 1] - s[i]);
            }
        }
    }
    return {best, param};
}

/// Resample so no segment is longer than h; original vertices are kept.
inline ClosedPolyline resampled(const ClosedPolyline& c, double h) {
    if (!(h > 0.0)) throw Error("resample spacing must be positive");
    std::vector<Point3> v;
    std::vector<ShiftVec> s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Vec3 seg = c.segment(i);
        const int n = std::max(1, static_cast<int>(std::ceil(norm(seg) / h - 1e-9)));
        for (int k = 0; k < n; ++k) {
            const Point3 p = c.vertices[i] + seg * (static_cast<double>(k) / n);
            if (k == 0) {
                v.push_back(p);
                s.push_back(ShiftVec{});
                continue;
            }
            const auto [w, kk] = c.ambient.wrap(p);
            // lift of the previous point carries over into this wrap
            s.back() = s.back() + kk;
            v.push_back(w);
            s.push_back(-kk);
        }
        s.back() = s.back() + c.shifts[i];
    }
    return ClosedPolyline(std::move(v), c.ambient, std::move(s));
}

}  // namespace plateau
