#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "plateau/plateau.hpp"

using namespace plateau;

namespace {

double max_free_grad(const TriSurfaceMesh& m) {
    const auto g = area_gradient(m);
    double mx = 0;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (!m.boundary_fixed[v]) mx = std::max(mx, norm(g[v]));
    return mx;
}

// skew quadrilateral: its minimal disk is a saddle, not a plane
ClosedPolyline skew_quad() {
    return ClosedPolyline({Point3{0, 0, 0}, Point3{1, 0, 0.3}, Point3{1, 1, 0}, Point3{0, 1, 0.3}});
}

TriSurfaceMesh jittered_grid(std::mt19937& rng, double amp_xy, double amp_z) {
    auto m = build_tau_and_E(0.25).second;
    std::uniform_real_distribution<double> U(-1, 1);
    for (std::size_t v = 0; v < m.vertices.size(); ++v) {
        if (m.boundary_fixed[v]) continue;
        m.vertices[v] += Vec3{amp_xy * U(rng), amp_xy * U(rng), amp_z * U(rng)};
    }
    return m;
}

}  // namespace

// gradient -----------------------------------------------------------------------

TEST(AreaGradient, FlatDiskIsCritical) {
    const auto m = triangulate_disk(build_tau(), 0.1);
    EXPECT_LE(max_free_grad(m), 1e-12);
}

TEST(AreaGradient, PinnedVerticesReportZero) {
    const auto m = build_cone_over_tau(0.2);
    const auto g = area_gradient(m);
    for (std::size_t v = 0; v < g.size(); ++v)
        if (m.boundary_fixed[v]) {
            EXPECT_EQ(norm(g[v]), 0.0);
        }
}

TEST(AreaGradient, TentApexIsPulledDown) {
    TriSurfaceMesh m;
    m.vertices = {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}, {0, 0, 0.4}};
    m.triangles = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
    pin_boundary(m);
    const auto g = area_gradient(m);
    EXPECT_GT(g[4].z, 0.0);
    EXPECT_NEAR(g[4].x, 0.0, 1e-15);
    EXPECT_NEAR(g[4].y, 0.0, 1e-15);
}

TEST(AreaGradient, MatchesFiniteDifferences) {
    std::mt19937 rng(2024);
    const double h = 1e-6;
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = jittered_grid(rng, 0.05, 0.3);
        const auto g = area_gradient(m);
        auto pos = m.vertices;
        for (std::size_t v = 0; v < pos.size(); ++v) {
            if (m.boundary_fixed[v]) continue;
            for (int a = 0; a < 3; ++a) {
                const double keep = pos[v][a];
                pos[v][a] = keep + h;
                const double up = area_at(m, pos);
                pos[v][a] = keep - h;
                const double dn = area_at(m, pos);
                pos[v][a] = keep;
                const double fd = (up - dn) / (2 * h);
                EXPECT_NEAR(g[v][a], fd, 1e-5 * std::max(1.0, std::abs(fd)));
            }
        }
    }
}

TEST(AreaGradient, CollinearDetection) {
    EXPECT_TRUE(is_collinear({0, 0, 0}, {1, 0, 0}, {2, 0, 0}));
    EXPECT_TRUE(is_collinear({0, 0, 0}, {1, 1e-12, 0}, {2, 0, 0}));
    EXPECT_FALSE(is_collinear({0, 0, 0}, {1, 1e-3, 0}, {2, 0, 0}));
}

TEST(AreaGradient, CollinearTriangleIsSkipped) {
    TriSurfaceMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {1, 1, 0}};
    m.triangles = {{0, 1, 2}, {0, 1, 3}};
    m.boundary_fixed.assign(4, 0);
    const auto r = area_and_gradient(m, m.vertices);
    EXPECT_EQ(r.degenerate, 1);
    EXPECT_NEAR(r.area, 0.5, 1e-15);
}

// descent ---------------------------------------------------------------------------

TEST(Minimize, ConeRelaxesToTheFlatSquare) {
    const auto cone = build_cone_over_tau(0.1);
    ASSERT_GT(mesh_area(cone), 4.2);
    const auto [m, rep] = minimize_area(cone, SolveOptions{});
    EXPECT_TRUE(rep.converged) << rep.message;
    EXPECT_LE(rep.iters, 2000);
    EXPECT_LE(rep.final_area, 4.0 + 1e-3);
    double zmax = 0;
    for (const auto& q : m.vertices) zmax = std::max(zmax, std::abs(q.z));
    EXPECT_LE(zmax, 1e-4);
}

TEST(Minimize, HistoryIsMonotone) {
    const auto [m, rep] = minimize_area(build_cone_over_tau(0.15), SolveOptions{});
    ASSERT_GE(rep.area_history.size(), 2u);
    for (std::size_t i = 1; i < rep.area_history.size(); ++i) EXPECT_LE(rep.area_history[i], rep.area_history[i - 1]);
    EXPECT_NEAR(rep.area_history.back(), rep.final_area, 1e-12);
}

TEST(Minimize, PinnedBoundaryIsUntouched) {
    const auto cone = build_cone_over_tau(0.15);
    const auto [m, rep] = minimize_area(cone, SolveOptions{});
    ASSERT_EQ(m.vertices.size(), cone.vertices.size());
    for (std::size_t v = 0; v < cone.vertices.size(); ++v)
        if (cone.boundary_fixed[v]) {
            EXPECT_EQ(m.vertices[v].x, cone.vertices[v].x);
            EXPECT_EQ(m.vertices[v].y, cone.vertices[v].y);
            EXPECT_EQ(m.vertices[v].z, cone.vertices[v].z);
        }
}

TEST(Minimize, Deterministic) {
    const auto disk = triangulate_disk(skew_quad(), 0.1);
    SolveOptions o;
    o.max_iters = 300;
    const auto a = minimize_area(disk, o), b = minimize_area(disk, o);
    EXPECT_EQ(a.second.area_history, b.second.area_history);
    EXPECT_EQ(a.first.vertices, b.first.vertices);
    EXPECT_EQ(a.first.triangles, b.first.triangles);
}

TEST(Minimize, ScaleCovariant) {
    const auto disk = triangulate_disk(skew_quad(), 0.1);
    auto big = disk;
    for (auto& q : big.vertices) q = q * 3.0;
    SolveOptions o;
    o.grad_tol = 1e-8;
    o.max_iters = 20000;
    const auto a = minimize_area(disk, o);
    o.grad_tol = 3e-8;
    const auto b = minimize_area(big, o);
    ASSERT_TRUE(a.second.converged) << a.second.message << " " << a.second.iters << " " << a.second.final_grad_norm;
    ASSERT_TRUE(b.second.converged) << b.second.message << " " << b.second.iters << " " << b.second.final_grad_norm;
    EXPECT_NEAR(b.second.final_area / 9.0, a.second.final_area, 1e-8 * a.second.final_area);
    EXPECT_LT(a.second.final_area, mesh_area(disk));
}

TEST(Minimize, SaddleBelowBothTriangleFans) {
    const auto [m, rep] = minimize_area(triangulate_disk(skew_quad(), 0.1), SolveOptions{});
    // each of the two flat fans over a diagonal
    const auto q = skew_quad().vertices;
    const double fan1 = triangle_area({q[0], q[1], q[2]}) + triangle_area({q[0], q[2], q[3]});
    const double fan2 = triangle_area({q[1], q[2], q[3]}) + triangle_area({q[1], q[3], q[0]});
    EXPECT_LT(rep.final_area, std::min(fan1, fan2));
}

TEST(Minimize, FlatSliceOnTorusNeedsNoIterations) {
    const ExampleIIParams p;
    const double c0 = solve_c0(p.delta, p.h, p.theta0, DcVariant::Exact);
    const auto S = build_sigma_c_mesh(p, c0, 0.05);
    const auto [m, rep] = minimize_area_torus(S, SolveOptions{});
    EXPECT_TRUE(rep.converged);
    EXPECT_EQ(rep.iters, 0);
    EXPECT_EQ(rep.final_area, mesh_area(S));
}

TEST(Minimize, PerturbedTorusSlicesReturn) {
    const ExampleIIIBParams p;
    const auto s = build_IIIB_surfaces(p, 0.05);
    SolveOptions o;
    o.grad_tol = 1e-7;
    o.max_iters = 4000;
    auto S = s.sigma_c;
    for (std::size_t v = 0; v < S.vertices.size(); ++v)
        if (!S.boundary_fixed[v])
            S.vertices[v].z += 0.01 * std::sin(2 * kPi * S.vertices[v].x) * std::sin(2 * kPi * S.vertices[v].y);
    ASSERT_GT(mesh_area(S), mesh_area(s.sigma_c));
    const auto rs = minimize_area_torus(S, o);
    EXPECT_NEAR(rs.second.final_area, mesh_area(s.sigma_c), 5e-3 * mesh_area(s.sigma_c));

    auto D = s.s_d;
    const Vec3 n = normalized(Vec3{0, 1, 1});
    for (std::size_t v = 0; v < D.vertices.size(); ++v)
        if (!D.boundary_fixed[v]) {
            // vertices that would cross a period face stay put, so lifts remain valid
            const auto q = D.vertices[v] + n * (0.01 * std::sin(2 * kPi * D.vertices[v].x));
            if (D.ambient.wrap(q).second.is_zero()) D.vertices[v] = q;
        }
    const auto rd = minimize_area_torus(D, o);
    EXPECT_NEAR(rd.second.final_area, mesh_area(s.s_d), 5e-3 * mesh_area(s.s_d))
        << rd.second.message << " " << rd.second.iters << " " << rd.second.final_grad_norm << " " << mesh_area(D);
}

TEST(Minimize, OptionsAreValidated) {
    const auto cone = build_cone_over_tau(0.2);
    SolveOptions o;
    o.max_iters = 0;
    EXPECT_THROW(minimize_area(cone, o), Error);
    o = {};
    o.grad_tol = -1;
    EXPECT_THROW(minimize_area(cone, o), Error);
    o = {};
    o.memory = 0;
    EXPECT_THROW(minimize_area(cone, o), Error);
}

TEST(Minimize, UnpinnedBoundaryIsAnError) {
    auto cone = build_cone_over_tau(0.2);
    cone.boundary_fixed.assign(cone.vertices.size(), 0);
    EXPECT_THROW(minimize_area(cone, SolveOptions{}), Error);
}

TEST(Minimize, AmbientMismatchIsAnError) {
    const auto s = build_IIIB_surfaces(ExampleIIIBParams{}, 0.1);
    EXPECT_THROW(minimize_area(s.sigma_c, SolveOptions{}), Error);
    EXPECT_THROW(minimize_area_torus(build_cone_over_tau(0.2), SolveOptions{}), Error);
}

// flips ------------------------------------------------------------------------------

TEST(Flips, PreserveVerticesBoundaryAndTopology) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        auto m = jittered_grid(rng, 0.1, 0.02);
        const auto before = m;
        const double a0 = mesh_area(m);
        int total = 0;
        for (int k = 0; k < 5; ++k) total += delaunay_flip_pass(m);
        EXPECT_EQ(m.vertices, before.vertices);
        EXPECT_EQ(m.triangles.size(), before.triangles.size());
        EXPECT_EQ(euler_characteristic(m), euler_characteristic(before));
        EXPECT_TRUE(is_coherently_oriented(m));
        EXPECT_EQ(boundary_edges(m).size(), boundary_edges(before).size());
        EXPECT_EQ(boundary_multiplicity(m, build_tau(), 1e-12), 1);
        EXPECT_LE(mesh_area(m), a0 + 1e-12);
        validate_mesh(m);
        (void)total;
    }
}

TEST(Flips, FixesASkinnyPair) {
    // two triangles sharing the long diagonal of a flat rhombus
    TriSurfaceMesh m;
    m.vertices = {{-1, 0, 0}, {1, 0, 0}, {0, 0.1, 0}, {0, -0.1, 0}};
    m.triangles = {{0, 1, 2}, {1, 0, 3}};
    pin_boundary(m);
    EXPECT_EQ(delaunay_flip_pass(m), 1);
    EXPECT_NEAR(mesh_area(m), 0.2, 1e-15);
    EXPECT_EQ(delaunay_flip_pass(m), 0);
}

// meshing ------------------------------------------------------------------------------

TEST(Triangulate, DiskHasOneBoundaryAndEulerOne) {
    for (double te : {0.2, 0.1, 0.05}) {
        const auto m = triangulate_disk(skew_quad(), te);
        validate_mesh(m);
        EXPECT_EQ(euler_characteristic(m), 1);
        EXPECT_EQ(boundary_loops(m).size(), 1u);
        EXPECT_EQ(boundary_multiplicity(m, skew_quad(), 1e-9), 1);
        EXPECT_TRUE(is_coherently_oriented(m));
    }
}

TEST(Triangulate, AnnulusBetweenCircles) {
    const auto c = build_sphere_circles(64);
    const auto m = triangulate_annulus(c[0], c[1], 0.1);
    validate_mesh(m);
    EXPECT_EQ(euler_characteristic(m), 0);
    EXPECT_EQ(boundary_loops(m).size(), 2u);
}

TEST(Triangulate, BadTargetEdgeIsAnError) { EXPECT_THROW(triangulate_disk(build_tau(), 0), Error); }
