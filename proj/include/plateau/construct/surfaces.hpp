#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "../geom/mesh.hpp"
#include "curves.hpp"
#include "../solver/triangulate.hpp"
#include "patch.hpp"

namespace plateau {

// Example I -----------------------------------------------------------------

/// Square tau and the flat grid disk E it bounds.
inline std::pair<ClosedPolyline, TriSurfaceMesh> build_tau_and_E(double res) {
    if (!(res > 0)) throw Error("res must be positive");
    const auto tau = build_tau();
    PatchAssembler pa;
    const auto br = breakpoints(-1, 1, {}, res);
    pa.add_grid([](double u, double v) { return Point3{u, v, 0}; }, br, br);
    auto E = pa.assemble();
    orient_to_boundary(E, tau, 1e-9);
    return {tau, std::move(E)};
}

/// E plus the three strips (S1a up the y=1 wall, S1b along z=Cy, S2 down the
/// y=-1 wall) trimmed so the boundary is the bridged curve.
inline TriSurfaceMesh build_ehat_mesh(const ExampleIParams& p, double res) {
    p.validate();
    if (!(res > 0)) throw Error("res must be positive");
    const double w = p.bridge_width;
    if (std::abs(p.trim - w / 2) > 1e-12) throw Error("incompatible trim: the strip tips meet the bridge only when trim = bridge_width/2");
    const double eps = p.eps, C = p.C, s = std::sqrt(1 + C * C);
    // at least four cells across the strips so they can bend
    const auto xs = breakpoints(-1, 1, {-eps, eps}, res, {RefineZone{-eps, eps, std::min(res, eps / 2)}});
    std::vector<double> strip_x;
    for (double x : xs)
        if (x >= -eps - 1e-15 && x <= eps + 1e-15) strip_x.push_back(x);
    PatchAssembler pa;
    pa.add_grid([](double u, double v) { return Point3{u, v, 0}; }, xs, breakpoints(-1, 1, {}, res));
    pa.add_grid([](double u, double v) { return Point3{u, 1, v}; }, strip_x, breakpoints(0, C, {}, res));
    const double y_tip = -1 + w / (2 * s);
    pa.add_grid([C](double u, double v) { return Point3{u, v, C * v}; }, strip_x, breakpoints(y_tip, 1, {}, res / s));
    pa.add_grid([](double u, double v) { return Point3{u, -1, v}; }, strip_x, breakpoints(-C + w / 2, 0, {}, res));
    auto m = pa.assemble();
    orient_to_boundary(m, build_gamma_hat(p), 1e-7);
    return m;
}

/// Embedded initial disk for the bridged curve: for Gamma1 the rectangle
/// [eps,1]x[-1,1] at z=0 plus the two triangles of the plane x=eps cut out by
/// alpha3..alpha5; its mirror for Gamma2; a flat strip across the bridge.
inline TriSurfaceMesh build_sigmahat_init(const ExampleIParams& p, double res) {
    p.validate();
    if (!(res > 0)) throw Error("res must be positive");
    const double eps = p.eps, C = p.C, w = p.bridge_width, s = std::sqrt(1 + C * C);
    const auto pts = gamma1_points(p);
    const Point3 O{eps, 0, 0}, p3 = pts[2], p4 = pts[3], p5 = pts[4], p6 = pts[5];
    const Point3 cb1 = p5 + Vec3{0, 1, C} * (w / (2 * s));
    const Point3 ca1 = p5 + Vec3{0, 0, w / 2};
    const auto mirror = [](Point3 q) { return Point3{-q.x, q.y, q.z}; };

    const auto ys = breakpoints(-1, 1, {0}, res);
    std::vector<double> v_up, v_down;  // T_u and T_l' parameters along x=eps, z=0
    for (double y : ys) {
        if (y >= 0) v_up.push_back(y);
        if (y <= 0) v_down.push_back(-y);
    }
    std::sort(v_down.begin(), v_down.end());
    const int n_rows = std::max(2, static_cast<int>(std::ceil(s / res)));
    const double w1 = distance(cb1, ca1);
    const int n_tip = std::max(1, static_cast<int>(std::ceil(w1 / res)));

    // rows parallel to the crease with R, thinned as the triangle narrows so
    // no fan of slivers converges on the far corner
    const auto rows_between = [&](Point3 a0, Point3 b0, Point3 a1, Point3 b1, const std::vector<double>& first,
                                  int last_cells) {
        std::vector<std::vector<Point3>> rows;
        for (int k = 0; k <= n_rows; ++k) {
            const double t = static_cast<double>(k) / n_rows;
            const Point3 a = a0 * (1 - t) + a1 * t, b = b0 * (1 - t) + b1 * t;
            std::vector<Point3> row;
            if (k == 0) {
                for (double u : first) row.push_back(a * (1 - u) + b * u);
            } else {
                const int cells = k == n_rows ? last_cells : std::max(1, static_cast<int>(std::ceil(distance(a, b) / res)));
                if (cells == 0) {
                    row.push_back(a);
                } else {
                    for (int i = 0; i <= cells; ++i) row.push_back(a * (1 - static_cast<double>(i) / cells) + b * (static_cast<double>(i) / cells));
                }
            }
            rows.push_back(std::move(row));
        }
        return rows;
    };
    const auto Tu = rows_between(O, p3, p4, p4, v_up, 0);
    const auto Tl = rows_between(O, p6, cb1, ca1, v_down, n_tip);

    PatchAssembler pa;
    for (int side = 0; side < 2; ++side) {
        const auto img = [&](const std::vector<std::vector<Point3>>& rows) {
            auto out = rows;
            if (side)
                for (auto& r : out)
                    for (auto& q : r) q = mirror(q);
            return out;
        };
        const auto flat = [side, mirror](double u, double v) {
            const Point3 q{u, v, 0};
            return side ? mirror(q) : q;
        };
        pa.add_grid(flat, breakpoints(eps, 1, {}, res), ys);
        pa.add_row_strip(img(Tu));
        pa.add_row_strip(img(Tl));
    }
    const auto bridge = [=](double u, double v) {
        const Point3 a = cb1 * (1 - v) + ca1 * v;
        return Point3{eps - 2 * eps * u, a.y, a.z};
    };
    pa.add_grid(bridge, breakpoints(0, 1, {}, std::min(1.0, w1 / n_tip / (2 * eps))), breakpoints(0, 1, {}, 1.0 / n_tip));
    auto m = pa.assemble();
    orient_to_boundary(m, build_gamma_hat(p), 1e-7);
    return m;
}

/// Cone over tau with apex height H: the flat disk mesh lifted to
/// z = H(1 - t), t = max(|x|,|y|).
inline TriSurfaceMesh build_cone_over_tau(double target_edge, double H = 0.5) {
    auto m = triangulate_disk(build_tau(), target_edge);
    for (std::size_t v = 0; v < m.vertices.size(); ++v) {
        auto& q = m.vertices[v];
        if (m.boundary_fixed[v]) continue;
        q.z = H * (1 - std::max(std::abs(q.x), std::abs(q.y)));
    }
    return m;
}

// Example II ----------------------------------------------------------------

/// Refinement zones (x and y) around a tube column.
struct TubeRefinement {
    std::vector<RefineZone> x, y;
};

inline TubeRefinement tube_refinement(double cx, double cy, double radius, double h_fine) {
    const double half = 2.5 * radius;
    return {{RefineZone{cx - half, cx + half, h_fine}}, {RefineZone{cy - half, cy + half, h_fine}}};
}

/// The z=level slice of the torus minus the sheared cross-section, oriented so
/// its boundary is +Gamma_level.
inline TriSurfaceMesh build_sigma_c_mesh(const ExampleIIParams& p, double level, double res,
                                         const TubeRefinement& ref = {}) {
    p.validate();
    if (!(res > 0)) throw Error("res must be positive");
    const auto gamma = build_gamma_c(p, level);
    const double s = p.shear(level), d = p.delta;
    if (d - s <= 0) throw Error("cross-section leaves the fundamental domain");
    const auto us = breakpoints(0, 1, {d - s, 1 - d - s}, res, ref.x);
    const auto vs = breakpoints(0, 1, {d, 1 - d}, res, ref.y);
    auto m = build_torus_grid(
        example_II_ambient(p), [level](double u, double v) { return Point3{u, v, level}; }, us, vs,
        [=](double u, double v) { return !(u > d - s && u < 1 - d - s && v > d && v < 1 - d); });
    orient_coherently(m);
    orient_to_boundary(m, gamma, 1e-9);
    return m;
}

/// Bottom face of the sheared box plus its four walls from z=h/3 up to level,
/// oriented so its boundary is +Gamma_level.
inline TriSurfaceMesh build_Dc_mesh(const ExampleIIParams& p, double level, double res,
                                    const TubeRefinement& ref = {}) {
    p.validate();
    if (!(res > 0)) throw Error("res must be positive");
    const auto gamma = build_gamma_c(p, level);
    const double d = p.delta, lo = p.h / 3;
    if (!(level > lo)) throw Error("D_c needs level above h/3");
    const double fine = std::min(res, std::min(ref.x.empty() ? res : ref.x.front().h, ref.y.empty() ? res : ref.y.front().h));
    const int n_t = std::max({2, static_cast<int>(std::ceil(p.shear(level) / fine)),
                              static_cast<int>(std::ceil((level - lo) / res))});
    const auto ts = breakpoints(0, 1, {}, 1.0 / n_t);
    const auto xs = breakpoints(d, 1 - d, {}, res, ref.x);
    const auto ys = breakpoints(d, 1 - d, {}, res, ref.y);
    const auto z_of = [=](double t) { return lo + t * (level - lo); };
    PatchAssembler pa;
    pa.add_grid([lo](double u, double v) { return Point3{u, v, lo}; }, xs, ys);
    for (double wy : {d, 1 - d})
        pa.add_grid([&p, z_of, wy](double u, double t) { return Point3{u - p.shear(z_of(t)), wy, z_of(t)}; }, xs, ts);
    for (double wx : {d, 1 - d})
        pa.add_grid([&p, z_of, wx](double v, double t) { return Point3{wx - p.shear(z_of(t)), v, z_of(t)}; }, ys, ts);
    auto m = embed_in_torus(pa.assemble(), example_II_ambient(p));
    orient_to_boundary(m, gamma, 1e-9);
    return m;
}

// Example III-B -------------------------------------------------------------

struct IIIBSurfaces {
    TriSurfaceMesh sigma_c;
    TriSurfaceMesh s_d;
    ClosedPolyline gamma_c;
    std::vector<ClosedPolyline> alpha_d;
};

inline IIIBSurfaces build_IIIB_surfaces(const ExampleIIIBParams& p, double res) {
    p.validate();
    if (!(res > 0)) throw Error("res must be positive");
    const auto amb = iiib_ambient(p);
    const double a = p.delta, b = 1 - p.delta;
    IIIBSurfaces out;
    out.gamma_c = iiib_gamma_c(p);
    out.alpha_d = iiib_alpha_d(p);
    const auto sq = breakpoints(0, 1, {a, b}, res);
    out.sigma_c = build_torus_grid(
        amb, [c = p.c](double u, double v) { return Point3{u, v, c}; }, sq, sq,
        [=](double u, double v) { return !(u > a && u < b && v > a && v < b); });
    orient_coherently(out.sigma_c);

    const auto holes = iiib_hole_intervals(p);
    std::vector<double> ub;
    for (const auto& [lo, hi] : holes) {
        ub.push_back(lo);
        ub.push_back(hi);
    }
    const auto us = breakpoints(0, 1, ub, res);
    out.s_d = build_torus_grid(
        amb, [d = p.d](double x, double u) { return Point3{x, u, d - u}; }, sq, us, [=](double x, double u) {
            if (!(x > a && x < b)) return true;
            for (const auto& [lo, hi] : holes)
                if (u > lo && u < hi) return false;
            return true;
        });
    orient_coherently(out.s_d);
    return out;
}

}  // namespace plateau
