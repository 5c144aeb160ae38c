// plateau-lab: build meshes and curves, evaluate ledger entries, run the area
// solver, and verify the four examples.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "plateau/plateau.hpp"

namespace fs = std::filesystem;
using namespace plateau;

namespace {

/// --param k=v pairs; every key must be consumed by the command.
class ParamSet {
public:
    explicit ParamSet(const std::vector<std::string>& kv) {
        for (const auto& s : kv) {
            const auto eq = s.find('=');
            if (eq == std::string::npos || eq == 0) throw Error("--param expects key=value, got '" + s + "'");
            const std::string key = s.substr(0, eq), val = s.substr(eq + 1);
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(val, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != val.size() || val.empty()) throw Error("--param " + key + ": '" + val + "' is not a number");
            values_[key] = v;
        }
    }

    double get(const std::string& k, double fallback) {
        seen_.insert(k);
        auto it = values_.find(k);
        return it == values_.end() ? fallback : it->second;
    }

    void finish() const {
        for (const auto& [k, v] : values_)
            if (!seen_.count(k)) throw Error("unknown parameter '" + k + "' for this command");
    }

private:
    std::map<std::string, double> values_;
    std::set<std::string> seen_;
};

ExampleIParams example_I_params(ParamSet& ps) {
    ExampleIParams p;
    p.eps = ps.get("eps", p.eps);
    p.C = ps.get("C", p.C);
    p.bridge_width = ps.get("w", p.eps);
    p.trim = ps.get("trim", p.bridge_width / 2);
    p.validate();
    return p;
}

ExampleIIParams example_II_params(ParamSet& ps) {
    ExampleIIParams p;
    p.h = ps.get("h", p.h);
    p.delta = ps.get("delta", p.delta);
    p.theta0 = std::atan(1.0 / ps.get("cot_theta0", 1.0 / std::tan(p.theta0)));
    p.eps = ps.get("eps", p.eps);
    p.c = ps.get("c", solve_c0(p.delta, p.h, p.theta0, DcVariant::Exact));
    return p;
}

ExampleIIIBParams example_IIIB_params(ParamSet& ps) {
    ExampleIIIBParams p;
    p.delta = ps.get("delta", p.delta);
    p.c = ps.get("c", p.c);
    p.d = ps.get("d", p.d);
    p.validate();
    return p;
}

DcVariant parse_variant(const std::string& s) {
    if (s == "Approx" || s == "approx") return DcVariant::Approx;
    if (s == "Exact" || s == "exact") return DcVariant::Exact;
    throw Error("variant must be Approx or Exact");
}

const std::vector<std::string> kBuildNames{"gamma1",  "gamma2",         "gamma_hat",    "tau",          "E",
                                           "ehat",    "sigmahat_init",  "cone",         "sphere_circle", "annulus",
                                           "parallelepiped", "gamma_c", "sigma_c",      "D_c",          "iiib_sigma_c",
                                           "iiib_s_d", "iiib_gamma_c",  "iiib_alpha_d"};

const std::vector<std::string> kLedgerNames{"sigma_hat_area", "ehat_area",      "eps_threshold", "ehat_flat_area",
                                            "sigma_hat_bowtie_area", "disk_Dc_area", "sigma_c_area", "solve_c0",
                                            "surgery_gain",   "catenoid_area",  "iiib_disk_area", "iiib_slice_area"};

void write_curve(const ClosedPolyline& c, const fs::path& out) {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw Error("cannot open " + out.string() + " for writing");
    write_polyline_obj(c, os);
}

int run_build(const std::string& name, const std::vector<std::string>& kv, const fs::path& out) {
    ParamSet ps(kv);
    const double res = ps.get("res", 0.05);
    std::optional<TriSurfaceMesh> mesh;
    std::optional<ClosedPolyline> curve;
    if (name == "gamma1") {
        curve = build_gamma1(example_I_params(ps));
    } else if (name == "gamma2") {
        curve = build_gamma2(example_I_params(ps));
    } else if (name == "gamma_hat") {
        curve = build_gamma_hat(example_I_params(ps));
    } else if (name == "tau") {
        curve = build_tau();
    } else if (name == "E") {
        mesh = build_tau_and_E(res).second;
    } else if (name == "ehat") {
        mesh = build_ehat_mesh(example_I_params(ps), res);
    } else if (name == "sigmahat_init") {
        mesh = build_sigmahat_init(example_I_params(ps), res);
    } else if (name == "cone") {
        mesh = build_cone_over_tau(res, ps.get("H", 0.5));
    } else if (name == "sphere_circle") {
        const auto i = static_cast<long>(ps.get("i", 0));
        if (i < 0 || i > 3) throw Error("sphere_circle index i must be 0..3");
        curve = build_sphere_circles(static_cast<int>(ps.get("n", 256)))[static_cast<std::size_t>(i)];
    } else if (name == "annulus") {
        const auto c = build_sphere_circles(static_cast<int>(ps.get("n", 256)));
        mesh = triangulate_annulus(c[0], c[1], res);
    } else if (name == "parallelepiped") {
        const auto b = build_parallelepiped(example_II_params(ps));
        ps.finish();
        nlohmann::json j;
        for (const auto* q : {&b.base, &b.top}) {
            auto& arr = j[q == &b.base ? "base" : "top"];
            for (const auto& pt : *q) arr.push_back({pt.x, pt.y, pt.z});
        }
        std::ofstream os(out, std::ios::binary);
        if (!os) throw Error("cannot open " + out.string() + " for writing");
        os << j.dump(2) << '\n';
        return 0;
    } else if (name == "gamma_c") {
        curve = build_gamma_c(example_II_params(ps));
    } else if (name == "sigma_c" || name == "D_c") {
        const auto p = example_II_params(ps);
        mesh = name == "sigma_c" ? build_sigma_c_mesh(p, p.c, res) : build_Dc_mesh(p, p.c, res);
    } else if (name.rfind("iiib_", 0) == 0) {
        const auto s = build_IIIB_surfaces(example_IIIB_params(ps), res);
        if (name == "iiib_sigma_c")
            mesh = s.sigma_c;
        else if (name == "iiib_s_d")
            mesh = s.s_d;
        else if (name == "iiib_gamma_c")
            curve = s.gamma_c;
        else if (name == "iiib_alpha_d") {
            const auto i = static_cast<std::size_t>(ps.get("i", 0));
            if (i >= s.alpha_d.size()) throw Error("alpha_d has " + std::to_string(s.alpha_d.size()) + " components");
            curve = s.alpha_d[i];
        } else
            throw Error("unknown builder '" + name + "'");
    } else {
        throw Error("unknown builder '" + name + "'");
    }
    ps.finish();
    if (mesh) {
        write_obj(*mesh, out);
        std::cout << name << ": " << mesh->vertices.size() << " vertices, " << mesh->triangles.size()
                  << " triangles, area " << std::setprecision(12) << mesh_area(*mesh) << " -> " << out.string() << "\n";
    } else {
        write_curve(*curve, out);
        std::cout << name << ": " << curve->size() << " vertices, length " << std::setprecision(12)
                  << polyline_length(*curve) << " -> " << out.string() << "\n";
    }
    return 0;
}

LedgerEntry ledger_entry(const std::string& name, const std::vector<std::string>& kv, const std::string& variant) {
    ParamSet ps(kv);
    LedgerEntry e;
    if (name == "sigma_hat_area") {
        const double C = ps.get("C", 10);
        e = make_entry(name, sigma_hat_area(C), "2(C+sqrt(C^2+1))", {{"C", C}});
    } else if (name == "ehat_area") {
        const double eps = ps.get("eps", 0.05), C = ps.get("C", 10);
        e = make_entry(name, ehat_area(eps, C), "4+2 eps (C+sqrt(C^2+1))", {{"eps", eps}, {"C", C}});
    } else if (name == "eps_threshold") {
        const double C = ps.get("C", 10);
        e = make_entry(name, eps_threshold(C), "1-2/(C+sqrt(C^2+1))", {{"C", C}});
    } else if (name == "ehat_flat_area" || name == "sigma_hat_bowtie_area") {
        const double eps = ps.get("eps", 0.05), C = ps.get("C", 10), w = ps.get("w", eps);
        e = name == "ehat_flat_area"
                ? make_entry(name, ehat_flat_area(eps, C, w), "4+2 eps (2C+2 sqrt(C^2+1)-w)", {{"eps", eps}, {"C", C}, {"w", w}})
                : make_entry(name, sigma_hat_bowtie_area(eps, C, w), "two bowtie disks 2(1-eps)+C each plus the bridge strip",
                             {{"eps", eps}, {"C", C}, {"w", w}});
    } else if (name == "disk_Dc_area" || name == "solve_c0") {
        const auto v = parse_variant(variant);
        const double delta = ps.get("delta", 0.15), h = ps.get("h", 0.012), cot = ps.get("cot_theta0", 7);
        const double th = std::atan(1.0 / cot);
        std::map<std::string, double> in{{"delta", delta}, {"h", h}, {"theta0", th}};
        if (name == "solve_c0") {
            e = make_entry(name, solve_c0(delta, h, th, v), std::string("disk_Dc_area(c0) = 1-x^2, variant ") + to_string(v), in);
        } else {
            const double c = ps.get("c", h / 3);
            in["c"] = c;
            e = make_entry(name, disk_Dc_area(delta, h, th, c, v),
                           v == DcVariant::Approx ? "x^2+4x(c-h/3)/sin theta0" : "x^2+2x(c-h/3)/sin theta0+2x(c-h/3)", in);
        }
    } else if (name == "sigma_c_area") {
        const double delta = ps.get("delta", 0.15);
        e = make_entry(name, sigma_c_area(delta), "1-x^2, x=1-2 delta", {{"delta", delta}});
    } else if (name == "surgery_gain") {
        const double eps = ps.get("eps", 0.013), h = ps.get("h", 0.012), c0 = ps.get("c0", 0.0050101);
        e = make_entry(name, surgery_gain(eps, h, c0), "2 pi eps^2 - 2 pi eps (4h/3 - c0)", {{"eps", eps}, {"h", h}, {"c0", c0}});
    } else if (name == "catenoid_area") {
        const double r1 = ps.get("r1", std::sqrt(0.96)), z1 = ps.get("z1", 0.2);
        const double r2 = ps.get("r2", std::sqrt(0.99)), z2 = ps.get("z2", -0.1);
        const auto fit = catenoid_fit(r1, z1, r2, z2);
        if (!fit) throw Error("no catenoid through these circles");
        e = make_entry(name, catenoid_area(*fit), "pi a^2 [u + sinh u cosh u] between the circles",
                       {{"r1", r1}, {"z1", z1}, {"r2", r2}, {"z2", z2}, {"a", fit->a}, {"b", fit->b}});
    } else if (name == "iiib_disk_area" || name == "iiib_slice_area") {
        const double delta = ps.get("delta", 0.1);
        const auto t = iiib_threshold_check(delta);
        e = name == "iiib_disk_area" ? make_entry(name, t.disk_area, "(1-2 delta)^2", {{"delta", delta}})
                                     : make_entry(name, t.slice_area, "1-(1-2 delta)^2", {{"delta", delta}});
    } else {
        throw Error("unknown ledger entry '" + name + "'");
    }
    ps.finish();
    return e;
}

int run_solve(const fs::path& in, const std::optional<fs::path>& opts_path, const fs::path& out,
              const std::optional<fs::path>& report_path) {
    const auto m = read_obj(in);
    SolveOptions o;
    if (opts_path) o = solve_options_from_json(load_json_file(*opts_path));
    auto [res, rep] = m.ambient.is_torus() ? minimize_area_torus(m, o) : minimize_area(m, o);
    write_obj(res, out);
    if (report_path) {
        std::ofstream os(*report_path, std::ios::binary);
        if (!os) throw Error("cannot open " + report_path->string() + " for writing");
        os << nlohmann::json(rep).dump(2) << '\n';
    }
    std::cout << std::setprecision(12) << "converged " << (rep.converged ? "yes" : "no") << ", iters " << rep.iters
              << ", area " << rep.area_history.front() << " -> " << rep.final_area << ", grad " << rep.final_grad_norm
              << (rep.message.empty() ? "" : ", " + rep.message) << "\n";
    return rep.converged ? 0 : 1;
}

ExampleReport run_example(const std::string& which, const std::optional<fs::path>& config, const OutDir& dir) {
    const nlohmann::json j = config ? load_json_file(*config) : nlohmann::json::object();
    if (j.contains("example") && j["example"] != which)
        throw Error("config is for example " + j["example"].dump() + ", not " + which);
    if (which == "I") return verify_example_I(example_I_config_from_json(j), dir);
    if (which == "II") return verify_example_II(example_II_config_from_json(j), dir);
    if (which == "IIIA") return verify_example_IIIA(example_IIIA_config_from_json(j), dir);
    if (which == "IIIB") return verify_example_IIIB(example_IIIB_config_from_json(j), dir);
    throw Error("unknown example '" + which + "'");
}

int run_verify(const std::string& which, const std::optional<fs::path>& config, const std::optional<fs::path>& dir) {
    const auto r = run_example(which, config, dir);
    if (dir) {
        fs::create_directories(*dir);
        std::ofstream os(*dir / "report.json", std::ios::binary);
        if (!os) throw Error("cannot write report.json in " + dir->string());
        os << report_to_string(r);
    }
    for (const auto& c : r.checks)
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  (observed " << std::setprecision(10) << c.observed
                  << ", expected " << c.relation << ' ' << c.expected
                  << (c.relation == "near" ? ", tol " + fmt_num(c.tolerance) : std::string()) << ")\n";
    const bool ok = r.overall_pass();
    std::cout << "example " << which << ": " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"plateau-lab: discrete minimal surface experiments"};
    app.require_subcommand(0, 1);
    bool list_checks = false;
    app.add_flag("--list-checks", list_checks, "Print the check catalog and exit");

    auto* build = app.add_subcommand("build", "Build a curve or mesh and write it as OBJ");
    std::string build_name;
    std::vector<std::string> build_params;
    fs::path build_out;
    build->add_option("name", build_name, "Builder name")->required()->check(CLI::IsMember(kBuildNames));
    build->add_option("--param", build_params, "Parameter key=value (repeatable)");
    build->add_option("--out", build_out, "Output path")->required();

    auto* ledger = app.add_subcommand("ledger", "Evaluate a closed-form ledger entry and print it as JSON");
    std::string ledger_name, variant = "Exact";
    std::vector<std::string> ledger_params;
    ledger->add_option("entry", ledger_name, "Entry name")->required()->check(CLI::IsMember(kLedgerNames));
    ledger->add_option("--param", ledger_params, "Parameter key=value (repeatable)");
    ledger->add_option("--variant", variant, "D_c wall-area variant (Approx or Exact)");

    auto* solve = app.add_subcommand("solve", "Minimize area of an OBJ mesh with pinned boundary");
    fs::path solve_in, solve_out;
    std::optional<fs::path> solve_opts, solve_report;
    solve->add_option("--in", solve_in, "Input OBJ")->required()->check(CLI::ExistingFile);
    solve->add_option("--opts", solve_opts, "Solver options JSON")->check(CLI::ExistingFile);
    solve->add_option("--out", solve_out, "Output OBJ")->required();
    solve->add_option("--report", solve_report, "Solve report JSON");

    auto* verify = app.add_subcommand("verify", "Run an example pipeline; exit 0 iff every check passes");
    std::string which;
    std::optional<fs::path> config, out_dir;
    verify->add_option("example", which, "I, II, IIIA or IIIB")->required()->check(CLI::IsMember({"I", "II", "IIIA", "IIIB"}));
    verify->add_option("--config", config, "Config JSON")->check(CLI::ExistingFile);
    verify->add_option("--out-dir", out_dir, "Directory for report.json and OBJ artifacts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_checks) {
            for (const auto& c : check_catalog()) std::cout << c.example << "\t" << c.name << "\t" << c.description << "\n";
            return 0;
        }
        if (*build) return run_build(build_name, build_params, build_out);
        if (*ledger) {
            std::cout << nlohmann::json(ledger_entry(ledger_name, ledger_params, variant)).dump(2) << "\n";
            return 0;
        }
        if (*solve) return run_solve(solve_in, solve_opts, solve_out, solve_report);
        if (*verify) return run_verify(which, config, out_dir);
        std::cout << app.help();
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
