#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "plateau/plateau.hpp"

using namespace plateau;

namespace {

ExampleIParams params_I(double eps = 0.05) {
    ExampleIParams p;
    p.eps = eps;
    p.C = 10;
    p.bridge_width = eps;
    p.trim = eps / 2;
    return p;
}

std::set<std::array<double, 3>> vertex_set(const ClosedPolyline& c) {
    std::set<std::array<double, 3>> s;
    for (const auto& p : c.vertices) s.insert({p.x, p.y, p.z});
    return s;
}

bool polyline_is_simple(const ClosedPolyline& c) {
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            const double d = segment_segment_distance(c.vertices[i], c.vertices[(i + 1) % n], c.vertices[j],
                                                      c.vertices[(j + 1) % n]);
            if (d <= 1e-12) return false;
        }
    return true;
}

ClosedPolyline unit_square_at(double x0) {
    return ClosedPolyline({Point3{x0, 0, 0}, Point3{x0 + 1, 0, 0}, Point3{x0 + 1, 1, 0}, Point3{x0, 1, 0}});
}

// the example of the sheared box with cot(theta0) = 7
ExampleIIParams params_cot7() {
    ExampleIIParams p;
    p.delta = 0.15;
    p.h = 0.012;
    p.theta0 = std::atan(1.0 / 7.0);
    p.eps = 0.013;
    p.c = 0.005;
    return p;
}

}  // namespace

// hexagonal curve ------------------------------------------------------------

TEST(Gamma1, VerticesAreTheSixCorners) {
    const auto g = build_gamma1(params_I());
    const std::vector<Point3> want{{1, -1, 0}, {1, 1, 0}, {0.05, 1, 0}, {0.05, 1, 10}, {0.05, -1, -10}, {0.05, -1, 0}};
    EXPECT_EQ(g.vertices, want);
}

TEST(Gamma1, LastFourVerticesInPlaneXEqualsEps) {
    const auto g = build_gamma1(params_I());
    for (std::size_t i = 2; i < 6; ++i) EXPECT_EQ(g.vertices[i].x, 0.05);
}

TEST(Gamma1, LiesOnBoxBoundary) {
    const auto g = build_gamma1(params_I());
    const auto on_face = [](const Point3& q) {
        return q.x == 0.05 || q.x == 1 || std::abs(q.y) == 1 || std::abs(q.z) == 10;
    };
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point3 a = g.vertices[i], b = g.vertices[(i + 1) % n];
        EXPECT_TRUE(on_face(a));
        // whole segment on one face: the segment midpoint shares a face coordinate with both ends
        const Point3 m = (a + b) * 0.5;
        EXPECT_TRUE(m.x == 0.05 || m.x == 1 || std::abs(m.y) == 1 || std::abs(m.z) == 10);
    }
}

// mirror ---------------------------------------------------------------------

TEST(Mirror, Gamma2IsReflectionOfGamma1) {
    const auto p = params_I();
    std::set<std::array<double, 3>> want;
    for (const auto& q : gamma1_points(p)) want.insert({-q.x, q.y, q.z});
    EXPECT_EQ(vertex_set(build_gamma2(p)), want);
}

TEST(Mirror, IsAnInvolution) {
    const auto g = build_gamma1(params_I());
    for (auto pl : {MirrorPlane::X0, MirrorPlane::Y0, MirrorPlane::Z0})
        EXPECT_EQ(vertex_set(mirror_curve(mirror_curve(g, pl), pl)), vertex_set(g));
}

TEST(Mirror, PointOnPlaneIsFixed) {
    const ClosedPolyline c({Point3{0, 0.3, 0.1}, Point3{1, 0, 0}, Point3{1, 1, 0}});
    const auto m = mirror_curve(c, MirrorPlane::X0);
    EXPECT_TRUE(vertex_set(m).count({0, 0.3, 0.1}));
}

TEST(Mirror, ReflectedVertexOrderIsReversed) {
    // tau is symmetric about x=0; the reflection alone would run it clockwise,
    // the reversal restores the counterclockwise sense
    const auto [tau, E] = build_tau_and_E(0.5);
    EXPECT_EQ(boundary_multiplicity(E, mirror_curve(tau, MirrorPlane::X0), 1e-12), 1);
    auto R = E;
    for (auto& q : R.vertices) q.x = -q.x;
    EXPECT_EQ(boundary_multiplicity(R, mirror_curve(tau, MirrorPlane::X0), 1e-12), -1);
    flip_orientation(R);
    EXPECT_EQ(boundary_multiplicity(R, mirror_curve(tau, MirrorPlane::X0), 1e-12), 1);
}

// bridge -----------------------------------------------------------------------

TEST(Bridge, TwoSquaresGiveSimpleTwelveGon) {
    const double w = 0.1;
    const auto b = bridge_curves(unit_square_at(0), unit_square_at(3),
                                 Point3{1, 0.5, 0}, Point3{3, 0.5, 0}, w);
    EXPECT_EQ(b.size(), 12u);
    EXPECT_TRUE(polyline_is_simple(b));
    // 4 + 4 - 2w + two rails of length 2
    EXPECT_NEAR(polyline_length(b), 12 - 2 * w, 1e-12);
}

TEST(Bridge, WidthLargerThanSegmentIsAnError) {
    EXPECT_THROW(bridge_curves(unit_square_at(0), unit_square_at(3), Point3{1, 0.5, 0}, Point3{3, 0.5, 0}, 1.5), Error);
}

TEST(Bridge, GammaHatIsConnectedAndSimple) {
    const auto p = params_I();
    const auto gh = build_gamma_hat(p);
    EXPECT_TRUE(polyline_is_simple(gh));
    const auto m = build_sigmahat_init(p, 0.1);
    EXPECT_EQ(boundary_loops(m).size(), 1u);
    // bridge removes w from each curve and adds two rails of length 2 eps (the gap between x=eps and x=-eps)
    const double g1 = polyline_length(build_gamma1(p));
    EXPECT_NEAR(polyline_length(gh), 2 * g1 - 2 * p.bridge_width + 2 * (2 * p.eps), 1e-9);
}

// Example I surfaces --------------------------------------------------------------

TEST(TauAndE, FlatSquareOfAreaFour) {
    const auto [tau, E] = build_tau_and_E(0.1);
    EXPECT_NEAR(mesh_area(E), 4.0, 1e-12);
    EXPECT_EQ(boundary_multiplicity(E, tau, 1e-12), 1);
    EXPECT_TRUE(self_intersections(E).empty());
    EXPECT_EQ(euler_characteristic(E), 1);
}

TEST(EhatMesh, AreaIsTheExactFlatArea) {
    for (double eps : {0.2, 0.1, 0.05}) {
        const auto p = params_I(eps);
        const auto m = build_ehat_mesh(p, 0.05);
        EXPECT_NEAR(mesh_area(m), ehat_flat_area(eps, p.C, p.bridge_width), 1e-9);
    }
}

TEST(EhatMesh, FlatAreaAtEpsFiveHundredths) {
    // 4 + 0.1 (20 + 2 sqrt(101) - 0.05)
    EXPECT_NEAR(mesh_area(build_ehat_mesh(params_I(0.05), 0.1)), 8.00497512422418, 1e-9);
}

TEST(EhatMesh, DiskBoundedByGammaHatWithSelfIntersections) {
    const auto p = params_I();
    const auto m = build_ehat_mesh(p, 0.1);
    validate_mesh(m);
    EXPECT_EQ(euler_characteristic(m), 1);
    EXPECT_EQ(boundary_multiplicity(m, build_gamma_hat(p), 1e-7), 1);
    EXPECT_FALSE(self_intersections(m).empty());
}

TEST(EhatMesh, IncompatibleTrimIsAnError) {
    auto p = params_I();
    p.trim = 0.3;
    EXPECT_THROW(build_ehat_mesh(p, 0.1), Error);
}

TEST(SigmaHatInit, EmbeddedDiskBoundedByGammaHat) {
    const auto p = params_I();
    const auto m = build_sigmahat_init(p, 0.1);
    validate_mesh(m);
    EXPECT_EQ(euler_characteristic(m), 1);
    EXPECT_EQ(boundary_multiplicity(m, build_gamma_hat(p), 1e-7), 1);
    EXPECT_TRUE(self_intersections(m).empty());
}

TEST(SigmaHatInit, AreaIsTheBowtieArea) {
    for (double eps : {0.2, 0.05}) {
        const auto p = params_I(eps);
        EXPECT_NEAR(mesh_area(build_sigmahat_init(p, 0.1)), sigma_hat_bowtie_area(eps, p.C, p.bridge_width), 1e-9);
    }
}

TEST(ConeOverTau, BoundaryIsTauAndApexIsRaised) {
    const auto m = build_cone_over_tau(0.1, 0.5);
    EXPECT_EQ(boundary_multiplicity(m, build_tau(), 1e-12), 1);
    double zmax = 0;
    for (const auto& q : m.vertices) zmax = std::max(zmax, q.z);
    EXPECT_GT(zmax, 0.4);
}

// sheared box and torus slices -------------------------------------------------------

TEST(Parallelepiped, CornersForCotSeven) {
    const auto p = params_cot7();
    EXPECT_NEAR(p.sigma(), 0.028, 1e-15);
    const auto b = build_parallelepiped(p);
    EXPECT_NEAR(b.base[0].x, 0.15, 1e-15);
    EXPECT_NEAR(b.base[0].y, 0.15, 1e-15);
    EXPECT_NEAR(b.base[0].z, 0.004, 1e-15);
    EXPECT_NEAR(b.top[0].x, 0.122, 1e-15);
    EXPECT_NEAR(b.top[0].y, 0.15, 1e-15);
    EXPECT_NEAR(b.top[0].z, 0.008, 1e-15);
}

TEST(Parallelepiped, TopIsTranslatedBase) {
    const auto p = params_cot7();
    const auto b = build_parallelepiped(p);
    for (std::size_t i = 0; i < 4; ++i) {
        const Vec3 d = b.top[i] - b.base[i];
        EXPECT_NEAR(d.x, -p.sigma(), 1e-15);
        EXPECT_EQ(d.y, 0.0);
        EXPECT_NEAR(d.z, p.h / 3, 1e-15);
        EXPECT_NEAR(norm(d), 0.0282842712474619, 1e-15);
    }
}

TEST(Parallelepiped, SigmaNotBelowDeltaIsAnError) {
    auto p = params_cot7();
    p.delta = 0.02;
    EXPECT_THROW(build_parallelepiped(p), Error);
}

TEST(GammaC, EndLevelsAreBottomAndTopSquares) {
    const ExampleIIParams p;
    const auto b = build_parallelepiped(p);
    const auto lo = build_gamma_c(p, p.h / 3), hi = build_gamma_c(p, 2 * p.h / 3);
    std::set<std::array<double, 3>> bot, top;
    for (std::size_t i = 0; i < 4; ++i) {
        bot.insert({b.base[i].x, b.base[i].y, b.base[i].z});
        top.insert({b.top[i].x, b.top[i].y, b.top[i].z});
    }
    for (const auto& q : lo.vertices) {
        bool hit = false;
        for (const auto& r : bot) hit = hit || distance(q, Point3{r[0], r[1], r[2]}) < 1e-15;
        EXPECT_TRUE(hit);
    }
    for (const auto& q : hi.vertices) {
        bool hit = false;
        for (const auto& r : top) hit = hit || distance(q, Point3{r[0], r[1], r[2]}) < 1e-15;
        EXPECT_TRUE(hit);
    }
}

TEST(GammaC, PerimeterIndependentOfLevel) {
    const ExampleIIParams p;
    for (double t : {0.0, 0.25, 0.5, 0.9, 1.0})
        EXPECT_NEAR(polyline_length(build_gamma_c(p, p.h / 3 * (1 + t))), 4 * (1 - 2 * p.delta), 1e-14);
}

TEST(GammaC, LevelOutOfRangeIsAnError) {
    const ExampleIIParams p;
    EXPECT_THROW(build_gamma_c(p, p.h), Error);
}

TEST(SliceMeshes, AreasAreExact) {
    const ExampleIIParams p;
    const double c0 = solve_c0(p.delta, p.h, p.theta0, DcVariant::Exact);
    const auto S = build_sigma_c_mesh(p, c0, 0.05);
    const auto D = build_Dc_mesh(p, c0, 0.05);
    EXPECT_NEAR(mesh_area(S), sigma_c_area(p.delta), 1e-10);
    EXPECT_NEAR(mesh_area(D), disk_Dc_area(p.delta, p.h, p.theta0, c0, DcVariant::Exact), 1e-10);
    const auto g = build_gamma_c(p, c0);
    EXPECT_EQ(boundary_multiplicity(S, g, 1e-9), 1);
    EXPECT_EQ(boundary_multiplicity(D, g, 1e-9), 1);
    validate_mesh(S);
    validate_mesh(D);
}

// surgery --------------------------------------------------------------------------

class SurgeryTest : public ::testing::Test {
protected:
    void SetUp() override {
        c0 = solve_c0(p.delta, p.h, p.theta0, DcVariant::Exact);
        p.c = c0;
        X = 1 - p.delta - p.shear(c0) / 2;
        const auto ref = tube_refinement(X, 0.5, p.eps, p.eps / 8);
        S = build_sigma_c_mesh(p, c0, 0.05, ref);
        D = build_Dc_mesh(p, c0, 0.05, ref);
        gamma = build_gamma_c(p, c0);
    }
    ExampleIIParams p;
    double c0 = 0, X = 0;
    TriSurfaceMesh S, D;
    ClosedPolyline gamma;
};

TEST_F(SurgeryTest, CorrectSideDoublesTheBoundary) {
    const auto r = mesh_surgery_detailed(S, D, {X, 0.5, c0}, {X, 0.5, p.h / 3}, p.eps, HandleSide::Correct);
    EXPECT_EQ(boundary_multiplicity(r.mesh, gamma, 1e-9), 2);
    EXPECT_TRUE(is_coherently_oriented(r.mesh));
    EXPECT_EQ(connected_components(r.mesh), 1);
    EXPECT_EQ(euler_characteristic(r.mesh), euler_characteristic(S) + euler_characteristic(D) - 2);
}

TEST_F(SurgeryTest, OppositeSideCancelsTheBoundary) {
    const auto r = mesh_surgery_detailed(S, D, {X, 0.5, c0}, {X, 0.5, (p.h / 3 + c0) / 2}, p.eps, HandleSide::Opposite);
    EXPECT_EQ(boundary_multiplicity(r.mesh, gamma, 1e-9), 0);
    EXPECT_TRUE(is_coherently_oriented(r.mesh));
}

TEST_F(SurgeryTest, AreaChangeIsTubeMinusDisks) {
    SurgeryOptions o;
    const auto r = mesh_surgery_detailed(S, D, {X, 0.5, c0}, {X, 0.5, p.h / 3}, p.eps, HandleSide::Correct, o);
    const double L = norm(r.axis), e = p.eps;
    const double want = 2 * kPi * e * L - 2 * kPi * e * e;
    const double got = mesh_area(r.mesh) - mesh_area(S) - mesh_area(D);
    // inscribed polygons: relative error of order (2 pi / n)^2
    const double k = std::pow(2 * kPi / o.rim_segments, 2);
    EXPECT_NEAR(got, want, k * (2 * kPi * e * L + 2 * kPi * e * e));
}

TEST_F(SurgeryTest, BadRadiusIsAnError) {
    EXPECT_THROW(mesh_surgery(S, D, {X, 0.5, c0}, {X, 0.5, p.h / 3}, -1.0, HandleSide::Correct), Error);
}

// Example III-B -------------------------------------------------------------------

TEST(IIIBSurfaces, PaperChoiceHasOneAlphaComponentDisjointFromGamma) {
    ExampleIIIBParams p;  // delta 0.1, d 0.1, c 0.15
    const auto s = build_IIIB_surfaces(p, 0.1);
    ASSERT_EQ(s.alpha_d.size(), 1u);
    EXPECT_GT(curve_distance(s.gamma_c, s.alpha_d[0]), 0.0);
    validate_mesh(s.sigma_c);
    validate_mesh(s.s_d);
}

TEST(IIIBSurfaces, MiddleOffsetHasTwoAlphaComponents) {
    ExampleIIIBParams p;
    p.d = 0.5;
    EXPECT_EQ(build_IIIB_surfaces(p, 0.1).alpha_d.size(), 2u);
}

TEST(IIIBSurfaces, SliceAreasAreFlatAreas) {
    ExampleIIIBParams p;
    const auto s = build_IIIB_surfaces(p, 0.1);
    const double x = 1 - 2 * p.delta;
    EXPECT_NEAR(mesh_area(s.sigma_c), 1 - x * x, 1e-12);
    // the tilted slice has area sqrt 2 per unit of (x, y) shadow minus its cut through the cube
    EXPECT_LT(mesh_area(s.s_d), std::sqrt(2.0));
}

// sphere circles -----------------------------------------------------------------

TEST(SphereCircles, RadiusOfTheUpperCircle) {
    const auto c = build_sphere_circles();
    for (const auto& q : c[0].vertices) {
        EXPECT_NEAR(std::hypot(q.x, q.y), 0.9797958971132712, 1e-14);
        EXPECT_EQ(q.z, 0.2);
    }
}

TEST(SphereCircles, SecondPairIsReflectionOfFirst) {
    const auto c = build_sphere_circles(64);
    EXPECT_EQ(vertex_set(c[2]), vertex_set(mirror_curve(c[1], MirrorPlane::Z0)));
    EXPECT_EQ(vertex_set(c[3]), vertex_set(mirror_curve(c[0], MirrorPlane::Z0)));
}

TEST(SphereCircles, InscribedPolygonRadiusError) {
    for (int n : {16, 64, 256}) {
        const auto c = build_sphere_circles(n);
        const double r = std::sqrt(1 - 0.04), bound = std::pow(2 * kPi / n, 2) / 8;
        for (std::size_t i = 0; i < c[0].size(); ++i) {
            const Point3 m = (c[0].vertices[i] + c[0].vertices[(i + 1) % c[0].size()]) * 0.5;
            EXPECT_LE(1 - std::hypot(m.x, m.y) / r, bound);
        }
    }
}
