// Acceptance run: one PASS/FAIL line per criterion, detail lines indented below.
// Exit status 0 iff every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "plateau/plateau.hpp"

using namespace plateau;

namespace {

struct Criterion {
    Criterion(int i, std::string t) : id(i), title(std::move(t)) {}

    int id;
    std::string title;
    bool pass = true;
    std::vector<std::string> detail;

    void expect(bool ok, const std::string& what) {
        pass = pass && ok;
        detail.push_back(std::string(ok ? "[ok] " : "[no] ") + what);
    }
    void note(const std::string& what) { detail.push_back("     " + what); }
};

std::string num(double v, int prec = 12) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

void print(const Criterion& c) {
    std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << "\n";
    for (const auto& d : c.detail) std::cout << "    " << d << "\n";
    std::cout.flush();
}

const Check* find_check(const ExampleReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

void expect_check(Criterion& cr, const ExampleReport& r, const std::string& name) {
    const Check* c = find_check(r, name);
    if (!c) {
        cr.expect(false, name + " (missing from report)");
        return;
    }
    cr.expect(c->pass, name + "  observed " + num(c->observed, 10) + ", expected " + c->relation + " " +
                           num(c->expected, 10));
}

// closed forms recomputed in long double, independent of the ledger code
long double ref_sqrt_term(long double C) { return C + std::sqrt(C * C + 1.0L); }

Criterion ledger_exactness() {
    Criterion c{1, "ledger exactness"};
    const long double k = ref_sqrt_term(10.0L);
    const double e = ehat_area(0.05, 10), s = sigma_hat_area(10), t = eps_threshold(10);
    c.expect(std::abs(e - static_cast<double>(4.0L + 0.1L * k)) <= 1e-9, "ehat_area(0.05,10) = " + num(e, 16));
    c.expect(std::abs(s - static_cast<double>(2.0L * k)) <= 1e-9, "sigma_hat_area(10) = " + num(s, 16));
    c.expect(std::abs(t - static_cast<double>(1.0L - 2.0L / k)) <= 1e-9, "eps_threshold(10) = " + num(t, 16));
    // printed constants are 6-decimal roundings; 40.099875 does not round from 40.0997512
    c.note("printed constants at 6 decimals: 6.004988 -> " + std::string(std::abs(e - 6.004988) < 5e-7 ? "agrees" : "differs") +
           ", 0.900249 -> " + (std::abs(t - 0.900249) < 5e-7 ? "agrees" : "differs") + ", 40.099875 -> " +
           (std::abs(s - 40.099875) < 5e-7 ? "agrees" : "differs (typo for 40.099751)"));
    const double half = sigma_c_area((2 - std::sqrt(2.0)) / 4);
    c.expect(std::abs(half - 0.5) <= 4 * std::numeric_limits<double>::epsilon(),
             "sigma_c_area((2-sqrt 2)/4) = " + num(half, 17) + " (0.5 to rounding)");

    std::mt19937 rng(20240601);
    std::uniform_real_distribution<double> U(0, 1);
    int sets = 0;
    double worst = 0;
    for (int i = 0; i < 100000 && sets < 100; ++i) {
        ExampleIIParams p;
        p.h = 0.002 + 0.02 * U(rng);
        p.delta = 0.05 + 0.4 * U(rng);
        p.theta0 = std::atan(1.0 / (6.5 + 60 * U(rng)));
        p.eps = p.h * (1 + U(rng));
        const auto v = U(rng) < 0.5 ? DcVariant::Approx : DcVariant::Exact;
        double c0;
        try {
            c0 = solve_c0(p.delta, p.h, p.theta0, v);
        } catch (const Error&) {
            continue;
        }
        p.c = c0;
        if (!p.violations().empty()) continue;
        ++sets;
        worst = std::max(worst, std::abs(disk_Dc_area(p.delta, p.h, p.theta0, c0, v) - sigma_c_area(p.delta)));
    }
    c.expect(sets == 100, "random valid parameter sets drawn: " + std::to_string(sets));
    c.expect(worst <= 1e-12, "solve_c0 back-substitution residual max " + num(worst, 3));
    return c;
}

Criterion flat_disk(std::vector<SolveReport>& runs) {
    Criterion c{2, "flat-disk recovery from a cone over tau"};
    const auto cone = build_cone_over_tau(0.05);
    SolveOptions o;
    o.max_iters = 2000;
    const auto [m, rep] = minimize_area(cone, o);
    runs.push_back(rep);
    double zmax = 0;
    for (const auto& q : m.vertices) zmax = std::max(zmax, std::abs(q.z));
    c.note("initial area " + num(mesh_area(cone), 8) + ", " + std::to_string(m.vertices.size()) + " vertices");
    c.expect(rep.final_area <= 4 + 1e-3, "final area " + num(rep.final_area, 12) + " <= 4.001");
    c.expect(zmax <= 1e-4, "max|z| " + num(zmax, 3) + " <= 1e-4");
    c.expect(rep.iters <= 2000, "iterations " + std::to_string(rep.iters) + " <= 2000");
    return c;
}

Criterion catenoid(const ExampleReport& r) {
    Criterion c{3, "catenoid agreement at target_edge 0.02"};
    for (const char* n : {"A1 fit residual <= 1e-10", "A2 fit residual <= 1e-10", "A1 annulus area within 1% of catenoid area",
                          "A1 catenoid area < disk pair area"})
        expect_check(c, r, n);
    const auto* a = find_check(r, "A1 annulus area within 1% of catenoid area");
    if (a) c.expect(a->observed < 1.95 * kPi, "annulus area " + num(a->observed, 10) + " < 1.95 pi = " + num(1.95 * kPi, 10));
    return c;
}

Criterion example_I(const ExampleReport& r, double seconds) {
    Criterion c{4, "Example I two-minima phenomenon"};
    for (const auto& ch : r.checks) expect_check(c, r, ch.name);
    c.expect(seconds <= 300, "runtime " + num(seconds, 4) + " s <= 300 s");
    if (!c.pass)
        c.note("the ehat_area / sigma_hat_area sub-checks rest on closed forms that misstate the flat areas; see report notes");
    return c;
}

Criterion example_II(const ExampleReport& r) {
    Criterion c{5, "Example II surgery inequality and boundary dichotomy"};
    for (const char* v : {"Exact: ", "Approx: "}) {
        const std::string pre = v;
        expect_check(c, r, pre + "Sigma' area < 2 sigma_c_area - 0.9 gain");
        expect_check(c, r, pre + "Sigma' boundary multiplicity == 2");
        expect_check(c, r, pre + "opposite-handle surface boundary multiplicity == 0");
    }
    return c;
}

Criterion example_IIIB() {
    Criterion c{6, "Example III-B intersection curve"};
    ExampleIIIBParams p;
    p.delta = 0.1;
    const auto s = build_IIIB_surfaces(p, 0.05);
    const auto loops = surface_intersection(s.sigma_c, s.s_d);
    c.expect(loops.size() == 1, "intersection components " + std::to_string(loops.size()));
    if (loops.empty()) return c;
    const double y0 = 1 - p.delta / 2, z0 = 3 * p.delta / 2;
    double dev = 0;
    for (const auto& q : loops.front().points)
        dev = std::max({dev, std::abs(std::remainder(q.y - y0, 1.0)), std::abs(q.z - z0)});
    c.expect(loops.front().closed, "loop closed");
    c.expect(dev <= 1e-9, "max deviation from (y,z) = (" + num(y0) + ", " + num(z0) + "): " + num(dev, 3));
    return c;
}

Criterion properties(const std::vector<SolveReport>& runs, const ExampleReport& II,
                     const std::vector<std::pair<std::string, bool>>& determinism) {
    Criterion c{7, "property suites"};
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> U(-1, 1);

    double worst_fd = 0;
    for (int trial = 0; trial < 50; ++trial) {
        auto m = triangulate_disk(circle_polyline(1.0, 0.0, 24 + trial), 0.2);
        for (std::size_t v = 0; v < m.vertices.size(); ++v)
            if (!m.boundary_fixed[v]) m.vertices[v] += Vec3{0.03 * U(rng), 0.03 * U(rng), 0.3 * U(rng)};
        const auto g = area_gradient(m);
        auto pos = m.vertices;
        const double h = 1e-6;
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
                worst_fd = std::max(worst_fd, std::abs(g[v][a] - fd) / std::max(1.0, std::abs(fd)));
            }
        }
    }
    c.expect(worst_fd <= 1e-5, "gradient vs finite differences, 50 meshes: max relative error " + num(worst_fd, 3));

    double worst_rigid = 0;
    ExampleIParams ip;
    const auto E = build_ehat_mesh(ip, 0.1);
    const double a0 = mesh_area(E);
    for (int trial = 0; trial < 20; ++trial) {
        const Vec3 axis = normalized(Vec3{U(rng), U(rng), U(rng)});
        const double th = kPi * U(rng), co = std::cos(th), si = std::sin(th);
        const Vec3 shift{10 * U(rng), 10 * U(rng), 10 * U(rng)};
        auto M = E;
        for (auto& q : M.vertices)
            q = q * co + cross(axis, q) * si + axis * (dot(axis, q) * (1 - co)) + shift;
        worst_rigid = std::max(worst_rigid, std::abs(mesh_area(M) - a0) / a0);
    }
    c.expect(worst_rigid <= 1e-10, "area under 20 rigid motions: max relative change " + num(worst_rigid, 3));

    bool mono = true;
    for (const auto& r : runs) mono = mono && history_monotone(r);
    c.expect(mono, "area history non-increasing on all " + std::to_string(runs.size()) + " recorded solves");

    expect_check(c, II, "Exact: Sigma' coherently oriented");
    expect_check(c, II, "Approx: Sigma' coherently oriented");
    for (const auto& [name, same] : determinism) c.expect(same, "two runs give identical reports: example " + name);
    return c;
}

Criterion honesty(const ExampleReport& I, const ExampleReport& II) {
    Criterion c{8, "non-reproducible parts are stated, not claimed"};
    const auto has = [](const ExampleReport& r, const std::string& key) {
        for (const auto& n : r.notes)
            if (n.find(key) != std::string::npos) return true;
        return false;
    };
    c.expect(has(I, "limit itself is not computed"), "Example I report states the eps -> 0 limit is replaced by the trend check");
    c.expect(has(II, "Metric smoothing"), "Example II report states metric smoothing is not modelled");
    c.note("the compactness argument for the limit current has no numerical counterpart and is out of scope");
    return c;
}

}  // namespace

int main() {
    try {
        std::vector<Criterion> out;
        std::vector<SolveReport> runs;

        out.push_back(ledger_exactness());
        print(out.back());
        out.push_back(flat_disk(runs));
        print(out.back());

        ExampleIIIAConfig ca;
        ca.target_edge = 0.02;
        ca.solver.max_iters = 20000;
        const auto IIIA = verify_example_IIIA(ca);
        for (const auto& s : IIIA.solver_runs) runs.push_back(s.report);
        out.push_back(catenoid(IIIA));
        print(out.back());

        const auto t0 = std::chrono::steady_clock::now();
        const auto I = verify_example_I(ExampleIConfig{});
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (const auto& s : I.solver_runs) runs.push_back(s.report);
        out.push_back(example_I(I, secs));
        print(out.back());

        const auto II = verify_example_II(ExampleIIConfig{});
        out.push_back(example_II(II));
        print(out.back());

        out.push_back(example_IIIB());
        print(out.back());

        std::vector<std::pair<std::string, bool>> det{
            {"I", report_to_string(I) == report_to_string(verify_example_I(ExampleIConfig{}))},
            {"II", report_to_string(II) == report_to_string(verify_example_II(ExampleIIConfig{}))},
            {"IIIA", report_to_string(IIIA) == report_to_string(verify_example_IIIA(ca))},
            {"IIIB", report_to_string(verify_example_IIIB(ExampleIIIBConfig{})) ==
                         report_to_string(verify_example_IIIB(ExampleIIIBConfig{}))}};
        out.push_back(properties(runs, II, det));
        print(out.back());

        out.push_back(honesty(I, II));
        print(out.back());

        int failed = 0;
        for (const auto& c : out) failed += c.pass ? 0 : 1;
        std::cout << (failed ? "FAIL" : "PASS") << " overall: " << out.size() - static_cast<std::size_t>(failed) << "/"
                  << out.size() << " criteria pass\n";
        return failed ? 1 : 0;
    } catch (const std::exception& e) {
        std::cerr << "acceptance aborted: " << e.what() << "\n";
        return 2;
    }
}
