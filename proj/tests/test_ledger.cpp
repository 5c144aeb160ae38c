#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "plateau/plateau.hpp"

using namespace plateau;

// frozen reference values, computed at 30 digits and rounded

TEST(LedgerFrozen, ExampleIValues) {
    EXPECT_NEAR(ehat_area(0.05, 10), 6.004987562112089, 1e-12);
    EXPECT_NEAR(sigma_hat_area(10), 40.09975124224178, 1e-12);
    EXPECT_NEAR(eps_threshold(10), 0.9002487577582195, 1e-12);
}

TEST(LedgerFrozen, DiskAreasForCotSeven) {
    const double th = std::atan(1.0 / 7.0);
    EXPECT_NEAR(disk_Dc_area(0.15, 0.012, th, 0.005, DcVariant::Approx), 0.5097989898732233, 1e-12);
    EXPECT_NEAR(disk_Dc_area(0.15, 0.012, th, 0.005, DcVariant::Exact), 0.5012994949366117, 1e-12);
}

TEST(LedgerFrozen, BalanceHeightsForCotSeven) {
    const double th = std::atan(1.0 / 7.0);
    EXPECT_NEAR(solve_c0(0.15, 0.012, th, DcVariant::Approx), 0.005010152544552211, 1e-14);
    EXPECT_NEAR(solve_c0(0.15, 0.012, th, DcVariant::Exact), 0.005769990615704220, 1e-14);
}

TEST(LedgerFrozen, SurgeryGain) {
    EXPECT_NEAR(surgery_gain(0.013, 0.012, 0.0050101), 1.641878002175019e-4, 1e-15);
}

// Example I --------------------------------------------------------------------

TEST(LedgerExampleI, EhatAtZeroWidthIsTheSquare) { EXPECT_EQ(ehat_area(0, 10), 4.0); }

TEST(LedgerExampleI, EhatLinearInEps) {
    const double k = 10 + std::sqrt(101.0);
    for (double e : {0.01, 0.1, 0.5}) EXPECT_NEAR(ehat_area(e, 10) - 4, 2 * e * k, 1e-12);
}

TEST(LedgerExampleI, SigmaHatGrowsLikeFourC) {
    for (double C : {1e3, 1e5, 1e7}) EXPECT_NEAR(sigma_hat_area(C) / (4 * C), 1.0, 1e-6);
}

TEST(LedgerExampleI, MonotoneInEpsAndC) {
    double prev = 0;
    for (double e = 0; e < 1; e += 0.05) {
        const double v = ehat_area(e, 10);
        EXPECT_GT(v, prev);
        prev = v;
    }
    prev = 0;
    for (double C = 0.5; C < 50; C *= 1.5) {
        const double v = sigma_hat_area(C);
        EXPECT_GT(v, prev);
        EXPECT_GT(eps_threshold(std::max(C, 2.0)), 0.0);
        prev = v;
    }
}

TEST(LedgerExampleI, EhatBelowSigmaHatExactlyBelowThreshold) {
    for (double C : {2.0, 5.0, 10.0, 40.0}) {
        const double t = eps_threshold(C);
        EXPECT_NEAR(ehat_area(t, C), sigma_hat_area(C), 1e-12 * sigma_hat_area(C));
        for (double f : {0.1, 0.5, 0.99}) EXPECT_LT(ehat_area(f * t, C), sigma_hat_area(C));
        EXPECT_GT(ehat_area(1.01 * t, C), sigma_hat_area(C));
    }
}

TEST(LedgerExampleI, ThresholdMatchesBisection) {
    double lo = 0, hi = 1;
    for (int i = 0; i < 200; ++i) {
        const double mid = (lo + hi) / 2;
        (ehat_area(mid, 10) < sigma_hat_area(10) ? lo : hi) = mid;
    }
    EXPECT_NEAR(eps_threshold(10), lo, 1e-14);
}

TEST(LedgerExampleI, SmallCHasNoThreshold) { EXPECT_THROW(eps_threshold(0.5), Error); }

TEST(LedgerExampleI, FlatAreasDifferFromClosedForms) {
    // the mesh disks carry strips of full width 2 eps
    EXPECT_NEAR(ehat_flat_area(0.05, 10, 0.05) - 4, 2 * (ehat_area(0.05, 10) - 4) - 0.005, 1e-12);
    // the two bowtie disks: a triangle pair of area 2(1-eps) + C on each side, plus a thin bridge
    EXPECT_NEAR(sigma_hat_bowtie_area(0.05, 10, 0.05), 2 * (2 * 0.95 + 10), 1e-2);
    EXPECT_LT(sigma_hat_bowtie_area(0.05, 10, 0.05), sigma_hat_area(10));
}

// Example II -------------------------------------------------------------------

TEST(LedgerExampleII, ExactNeverExceedsPaper) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 100; ++i) {
        const double delta = 0.05 + 0.4 * U(rng), h = 0.001 + 0.02 * U(rng), th = std::atan(1.0 / (6.5 + 50 * U(rng)));
        const double c = h / 3 * (1 + U(rng));
        EXPECT_LE(disk_Dc_area(delta, h, th, c, DcVariant::Exact), disk_Dc_area(delta, h, th, c, DcVariant::Approx));
    }
}

TEST(LedgerExampleII, BothVariantsAgreeOnTheBottomFace) {
    for (auto v : {DcVariant::Approx, DcVariant::Exact}) EXPECT_NEAR(disk_Dc_area(0.2, 0.01, 0.1, 0.01 / 3, v), 0.36, 1e-15);
}

TEST(LedgerExampleII, BalanceAtBottomWhenHalfAreaSplit) {
    const double delta = (1 - 1 / std::sqrt(2.0)) / 2;
    for (auto v : {DcVariant::Approx, DcVariant::Exact}) EXPECT_NEAR(solve_c0(delta, 0.012, 0.1, v), 0.004, 1e-15);
}

TEST(LedgerExampleII, BackSubstitutionBalancesAreas) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(0, 1);
    int tried = 0;
    for (int i = 0; i < 1000 && tried < 100; ++i) {
        const double delta = 0.1 + 0.1 * U(rng), h = 0.005 + 0.01 * U(rng), th = std::atan(1.0 / (6.5 + 50 * U(rng)));
        for (auto v : {DcVariant::Approx, DcVariant::Exact}) {
            double c0;
            try {
                c0 = solve_c0(delta, h, th, v);
            } catch (const Error&) {
                continue;
            }
            ++tried;
            EXPECT_NEAR(disk_Dc_area(delta, h, th, c0, v), sigma_c_area(delta), 1e-12);
        }
    }
    EXPECT_GE(tried, 100);
}

TEST(LedgerExampleII, DiskAreaIsAffineInHeight) {
    const double d = 0.166, h = 0.01, th = std::atan(1.0 / 30);
    for (auto v : {DcVariant::Approx, DcVariant::Exact}) {
        const double a = disk_Dc_area(d, h, th, 0.004, v), b = disk_Dc_area(d, h, th, 0.005, v),
                     c = disk_Dc_area(d, h, th, 0.006, v);
        EXPECT_NEAR(a - 2 * b + c, 0.0, 1e-14);
    }
}

TEST(LedgerExampleII, OutOfRangeHeightIsAnError) {
    EXPECT_THROW(disk_Dc_area(0.15, 0.012, 0.1, 0.009, DcVariant::Exact), Error);
    EXPECT_THROW(solve_c0(0.4, 0.012, 0.1, DcVariant::Exact), Error);
}

TEST(LedgerExampleII, GainVanishesAtTubeLength) {
    const double h = 0.012, c0 = 0.0050101;
    const double eps = 4 * h / 3 - c0;
    // below break-even the formula is rejected because eps < h there
    EXPECT_THROW(surgery_gain(eps, h, c0), Error);
    EXPECT_NEAR(surgery_gain(0.013, h, c0), 2 * kPi * 0.013 * (0.013 - eps), 1e-16);
    EXPECT_GT(surgery_gain(0.02, h, c0), surgery_gain(0.013, h, c0));
}

// Example III --------------------------------------------------------------------

TEST(LedgerCatenoid, CanonicalNeck) {
    const double r = std::cosh(1.0);
    const auto f = catenoid_fit(r, -1, r, 1);
    ASSERT_TRUE(f);
    EXPECT_NEAR(f->a, 1.0, 1e-10);
    EXPECT_NEAR(f->b, 0.0, 1e-10);
    EXPECT_NEAR(catenoid_area(*f), 17.67730332006746, 1e-9);
}

TEST(LedgerCatenoid, SphereCirclePairFit) {
    const auto f = catenoid_fit(std::sqrt(0.96), 0.2, std::sqrt(0.99), -0.1);
    ASSERT_TRUE(f);
    EXPECT_NEAR(f->a, 0.974571707759188, 1e-9);
    EXPECT_NEAR(f->b, 0.0991356858043024, 1e-9);
    EXPECT_LE(f->residual(), 1e-10);
    EXPECT_NEAR(catenoid_area(*f), 1.856347040490099, 1e-9);
    // the unstable branch is the smaller one
    EXPECT_GT(f->a, 0.037963);
}

TEST(LedgerCatenoid, AreaBelowTheTwoDisks) {
    const auto f = catenoid_fit(std::sqrt(0.96), 0.2, std::sqrt(0.99), -0.1);
    ASSERT_TRUE(f);
    EXPECT_LT(catenoid_area(*f), 1.95 * kPi);
    EXPECT_NEAR(1.95 * kPi, 6.126105674500097, 1e-12);
}

TEST(LedgerCatenoid, FarApartCirclesHaveNoCatenoid) { EXPECT_FALSE(catenoid_fit(0.1, -10, 0.1, 10)); }

TEST(LedgerCatenoid, AreaMatchesQuadrature) {
    const auto f = catenoid_fit(0.8, -0.3, 1.1, 0.4);
    ASSERT_TRUE(f);
    // Simpson on 2 pi r sqrt(1 + r'^2) = 2 pi a cosh^2(u)
    const int n = 2000;
    const double z1 = -0.3, z2 = 0.4, hz = (z2 - z1) / n;
    double s = 0;
    for (int i = 0; i <= n; ++i) {
        const double z = z1 + i * hz, c = std::cosh((z - f->b) / f->a);
        s += (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2)) * 2 * kPi * f->a * c * c;
    }
    EXPECT_NEAR(catenoid_area(*f), s * hz / 3, 1e-8);
}

TEST(LedgerCatenoid, DegenerateInputsAreErrors) {
    EXPECT_THROW(catenoid_fit(1, 0.1, 1, 0.1), Error);
    EXPECT_THROW(catenoid_fit(-1, 0, 1, 1), Error);
}

TEST(LedgerCatenoid, ZeroSpanHasZeroArea) {
    CatenoidFit f{1.0, 0.0, 0.3, 0.3, std::cosh(0.3), std::cosh(0.3)};
    EXPECT_EQ(catenoid_area(f), 0.0);
}

TEST(LedgerThreshold, SliceWinsOnlyAboveThreshold) {
    const double t = (2 - std::sqrt(2.0)) / 4;
    EXPECT_TRUE(iiib_threshold_check(0.1).slice_wins);
    EXPECT_FALSE(iiib_threshold_check(0.2).slice_wins);
    EXPECT_NEAR(iiib_threshold_check(0.1).threshold, t, 1e-16);
    const auto at = iiib_threshold_check(t);
    EXPECT_NEAR(at.slice_area, at.disk_area, 1e-15);
    EXPECT_NEAR(iiib_threshold_check(0.1).disk_area, 0.64, 1e-15);
    EXPECT_NEAR(iiib_threshold_check(0.1).slice_area, 0.36, 1e-15);
}

TEST(LedgerEntries, RejectsNonFiniteAndMissingFormula) {
    EXPECT_THROW(make_entry("x", std::nan(""), "f", {}), Error);
    EXPECT_THROW(make_entry("x", INFINITY, "f", {}), Error);
    EXPECT_THROW(make_entry("x", 1.0, "", {}), Error);
    const auto e = make_entry("x", 2.0, "1+1", {{"a", 1.0}});
    EXPECT_EQ(e.value, 2.0);
    EXPECT_EQ(e.inputs.at("a"), 1.0);
}
