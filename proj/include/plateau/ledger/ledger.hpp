#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "../geom/vec.hpp"

namespace plateau {

struct LedgerEntry {
    std::string name;
    double value = 0.0;
    std::string formula_source;
    std::map<std::string, double> inputs;
};

inline LedgerEntry make_entry(std::string name, double value, std::string formula,
                              std::map<std::string, double> inputs) {
    if (!std::isfinite(value)) throw Error("ledger value for " + name + " is not finite");
    if (formula.empty()) throw Error("ledger entry needs a formula source");
    return {std::move(name), value, std::move(formula), std::move(inputs)};
}

// Example I -----------------------------------------------------------------

inline double sigma_hat_area(double C) {
    if (!(C > 0)) throw Error("C must be positive");
    return 2.0 * (C + std::sqrt(C * C + 1.0));
}

inline double ehat_area(double eps, double C) {
    if (!(eps >= 0) || !(C > 0)) throw Error("ehat_area needs eps >= 0 and C > 0");
    return 4.0 + 2.0 * eps * (C + std::sqrt(C * C + 1.0));
}

/// Crossover eps at which ehat_area equals sigma_hat_area.
inline double eps_threshold(double C) {
    if (!(C > 0)) throw Error("C must be positive");
    const double k = C + std::sqrt(C * C + 1.0);
    const double t = 1.0 - 2.0 / k;
    if (!(t > 0)) throw Error("C too small: no positive eps threshold");
    return t;
}

/// Exact flat area of the strip-and-square disk with strips of full width 2*eps,
/// cut open by a bridge of width w.
inline double ehat_flat_area(double eps, double C, double w) {
    const double s = std::sqrt(C * C + 1.0);
    return 4.0 + 2.0 * eps * (2.0 * C + 2.0 * s - w);
}

/// Exact flat area of the bowtie spanning disk pair joined by a planar bridge strip.
inline double sigma_hat_bowtie_area(double eps, double C, double w) {
    const double s = std::sqrt(C * C + 1.0);
    const double half = 2.0 * (1.0 - eps) + C - (w * w / 8.0) / s;
    // cut points near the lower tip, in the (y,z) plane
    const double dy = w / (2.0 * s), dz = C * w / (2.0 * s) - w / 2.0;
    const double rail = std::hypot(dy, dz);
    return 2.0 * half + 2.0 * eps * rail;
}

// Example II ----------------------------------------------------------------

enum class DcVariant { Approx, Exact };

inline const char* to_string(DcVariant v) { return v == DcVariant::Approx ? "Approx" : "Exact"; }

inline double disk_Dc_area(double delta, double h, double theta0, double c, DcVariant variant) {
    if (c < h / 3.0 - 1e-15 || c > 2.0 * h / 3.0 + 1e-15) throw Error("slice height outside [h/3, 2h/3]");
    const double x = 1.0 - 2.0 * delta;
    const double rise = c - h / 3.0;
    if (variant == DcVariant::Approx) return x * x + 4.0 * x * rise / std::sin(theta0);
    return x * x + 2.0 * x * rise / std::sin(theta0) + 2.0 * x * rise;
}

inline double sigma_c_area(double delta) {
    if (!(delta > 0 && delta < 0.5)) throw Error("delta must lie in (0, 1/2)");
    const double x = 1.0 - 2.0 * delta;
    return 1.0 - x * x;
}

/// Height at which the wall disk and the slice torus have equal area.
inline double solve_c0(double delta, double h, double theta0, DcVariant variant) {
    const double x = 1.0 - 2.0 * delta;
    const double slope = variant == DcVariant::Approx ? 4.0 * x / std::sin(theta0)
                                                     : 2.0 * x / std::sin(theta0) + 2.0 * x;
    const double c0 = h / 3.0 + (1.0 - 2.0 * x * x) / slope;
    if (c0 < h / 3.0 - 1e-15 || c0 > 2.0 * h / 3.0 + 1e-15)
        throw Error("no balance point; adjust h or delta");
    return c0;
}

inline double surgery_gain(double eps, double h, double c0) {
    if (!(h < eps)) throw Error("surgery_gain needs h < eps");
    return 2.0 * kPi * eps * eps - 2.0 * kPi * eps * (4.0 * h / 3.0 - c0);
}

// Example III ---------------------------------------------------------------

struct CatenoidFit {
    double a = 0, b = 0, z1 = 0, z2 = 0, r1 = 0, r2 = 0;

    double radius(double z) const { return a * std::cosh((z - b) / a); }
    double residual() const { return std::max(std::abs(radius(z1) - r1), std::abs(radius(z2) - r2)); }
};

namespace detail {

/// Damped Newton on a*cosh((z_i-b)/a) = r_i from one start.
inline std::optional<std::pair<double, double>> catenoid_newton(double r1, double z1, double r2, double z2, double a,
                                                                double b) {
    const auto F = [&](double A, double B, double& f1, double& f2) {
        f1 = A * std::cosh((z1 - B) / A) - r1;
        f2 = A * std::cosh((z2 - B) / A) - r2;
        return std::hypot(f1, f2);
    };
    double f1, f2;
    double res = F(a, b, f1, f2);
    for (int it = 0; it < 200 && std::isfinite(res); ++it) {
        if (res < 1e-14) return std::pair{a, b};
        const double u1 = (z1 - b) / a, u2 = (z2 - b) / a;
        const double j11 = std::cosh(u1) - u1 * std::sinh(u1), j12 = -std::sinh(u1);
        const double j21 = std::cosh(u2) - u2 * std::sinh(u2), j22 = -std::sinh(u2);
        const double det = j11 * j22 - j12 * j21;
        if (std::abs(det) < 1e-300) return std::nullopt;
        const double da = -(j22 * f1 - j12 * f2) / det, db = -(-j21 * f1 + j11 * f2) / det;
        double lam = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 60; ++ls, lam *= 0.5) {
            const double na = a + lam * da, nb = b + lam * db;
            if (!(na > 0)) continue;
            double g1, g2;
            const double nr = F(na, nb, g1, g2);
            if (std::isfinite(nr) && nr < res) {
                a = na;
                b = nb;
                res = nr;
                f1 = g1;
                f2 = g2;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    if (res <= 1e-11) return std::pair{a, b};
    return std::nullopt;
}

}  // namespace detail

/// Catenoid through two coaxial circles; the larger-a (stable) branch when two
/// exist, nullopt when the circles are too far apart.
inline std::optional<CatenoidFit> catenoid_fit(double r1, double z1, double r2, double z2) {
    if (!(r1 > 0 && r2 > 0)) throw Error("catenoid radii must be positive");
    if (z1 == z2) throw Error("catenoid circles must be at distinct heights");
    const double rmax = std::max(r1, r2);
    const double zlo = std::min(z1, z2), zhi = std::max(z1, z2), span = zhi - zlo;
    std::optional<CatenoidFit> best;
    for (int i = 1; i <= 24; ++i) {
        const double a0 = rmax * i / 24.0;
        for (int j = 0; j <= 16; ++j) {
            const double b0 = zlo - span + 3.0 * span * j / 16.0;
            const auto sol = detail::catenoid_newton(r1, z1, r2, z2, a0, b0);
            if (!sol) continue;
            CatenoidFit f{sol->first, sol->second, z1, z2, r1, r2};
            if (f.residual() > 1e-10) continue;
            if (!best || f.a > best->a + 1e-12) best = f;
        }
    }
    return best;
}

/// Lateral area of r = a*cosh((z-b)/a) between z1 and z2.
inline double catenoid_area(const CatenoidFit& f) {
    const auto G = [&](double u) { return u + std::sinh(u) * std::cosh(u); };
    const double u1 = (f.z1 - f.b) / f.a, u2 = (f.z2 - f.b) / f.a;
    return kPi * f.a * f.a * std::abs(G(u2) - G(u1));
}

struct ThresholdReport {
    double delta = 0;
    double disk_area = 0;   // (1-2 delta)^2
    double slice_area = 0;  // 1 - (1-2 delta)^2
    double threshold = 0;   // (2 - sqrt 2)/4
    bool slice_wins = false;
};

inline ThresholdReport iiib_threshold_check(double delta) {
    if (!(delta > 0 && delta < 0.5)) throw Error("delta must lie in (0, 1/2)");
    ThresholdReport r;
    r.delta = delta;
    const double x = 1.0 - 2.0 * delta;
    r.disk_area = x * x;
    r.slice_area = 1.0 - x * x;
    r.threshold = (2.0 - std::sqrt(2.0)) / 4.0;
    r.slice_wins = r.slice_area < r.disk_area;
    return r;
}

}  // namespace plateau
