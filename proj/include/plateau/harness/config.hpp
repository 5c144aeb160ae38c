#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "../construct/curves.hpp"
#include "../solver/minimize.hpp"

namespace plateau {

namespace detail {

template <class T>
void read_opt(const nlohmann::json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        j.at(key).get_to(out);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("config key '") + key + "': " + e.what());
    }
}

inline void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> known, const char* where) {
    if (!j.is_object()) throw Error(std::string(where) + " must be a JSON object");
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* s : known) ok = ok || k == s;
        if (!ok) throw Error(std::string("unknown key '") + k + "' in " + where);
    }
}

}  // namespace detail

inline SolveOptions solve_options_from_json(const nlohmann::json& j, SolveOptions o = {}) {
    detail::reject_unknown(j, {"max_iters", "grad_tol", "step_init", "min_step", "improve_every", "seed", "memory"},
                           "solver options");
    detail::read_opt(j, "max_iters", o.max_iters);
    detail::read_opt(j, "grad_tol", o.grad_tol);
    detail::read_opt(j, "step_init", o.step_init);
    detail::read_opt(j, "min_step", o.min_step);
    detail::read_opt(j, "improve_every", o.improve_every);
    detail::read_opt(j, "seed", o.seed);
    detail::read_opt(j, "memory", o.memory);
    o.validate();
    return o;
}

inline nlohmann::json solve_options_to_json(const SolveOptions& o) {
    return {{"max_iters", o.max_iters}, {"grad_tol", o.grad_tol},         {"step_init", o.step_init},
            {"min_step", o.min_step},   {"improve_every", o.improve_every}, {"seed", o.seed},
            {"memory", o.memory}};
}

struct ExampleIConfig {
    double C = 10.0;
    std::vector<double> eps_sequence{0.2, 0.1, 0.05};
    double bridge_ratio = 1.0;  // bridge width / eps
    double res = 0.1;           // target edge
    SolveOptions solver = [] {
        SolveOptions o;
        o.grad_tol = 1e-4;
        o.max_iters = 12000;
        return o;
    }();

    ExampleIParams params_for(double eps) const {
        ExampleIParams p;
        p.eps = eps;
        p.C = C;
        p.bridge_width = bridge_ratio * eps;
        p.trim = p.bridge_width / 2;
        return p;
    }
};

struct ExampleIIConfig {
    ExampleIIParams params;   // params.c is replaced by the balance height
    double res = 0.05;
    double tube_refine = 8.0;  // tube zone spacing = eps / tube_refine
};

struct ExampleIIIAConfig {
    int circle_segments = 256;
    double target_edge = 0.05;
    SolveOptions solver = [] {
        SolveOptions o;
        o.grad_tol = 1e-7;
        return o;
    }();
};

struct ExampleIIIBConfig {
    ExampleIIIBParams params;
    double res = 0.05;
};

inline ExampleIConfig example_I_config_from_json(const nlohmann::json& j) {
    detail::reject_unknown(j, {"example", "C", "eps_sequence", "bridge_ratio", "res", "solver"}, "example I config");
    ExampleIConfig c;
    detail::read_opt(j, "C", c.C);
    detail::read_opt(j, "eps_sequence", c.eps_sequence);
    detail::read_opt(j, "bridge_ratio", c.bridge_ratio);
    detail::read_opt(j, "res", c.res);
    if (j.contains("solver")) c.solver = solve_options_from_json(j["solver"], c.solver);
    if (c.eps_sequence.empty()) throw Error("eps_sequence must not be empty");
    if (!(c.bridge_ratio > 0 && c.bridge_ratio <= 1)) throw Error("bridge_ratio must lie in (0, 1]");
    if (!(c.res > 0)) throw Error("res must be positive");
    return c;
}

inline ExampleIIConfig example_II_config_from_json(const nlohmann::json& j) {
    detail::reject_unknown(j, {"example", "h", "delta", "cot_theta0", "eps", "res", "tube_refine"},
                           "example II config");
    ExampleIIConfig c;
    double cot = 1.0 / std::tan(c.params.theta0);
    detail::read_opt(j, "h", c.params.h);
    detail::read_opt(j, "delta", c.params.delta);
    detail::read_opt(j, "cot_theta0", cot);
    detail::read_opt(j, "eps", c.params.eps);
    detail::read_opt(j, "res", c.res);
    detail::read_opt(j, "tube_refine", c.tube_refine);
    if (!(cot > 0)) throw Error("cot_theta0 must be positive");
    c.params.theta0 = std::atan(1.0 / cot);
    if (!(c.res > 0) || !(c.tube_refine >= 1)) throw Error("res must be positive and tube_refine >= 1");
    return c;
}

inline ExampleIIIAConfig example_IIIA_config_from_json(const nlohmann::json& j) {
    detail::reject_unknown(j, {"example", "circle_segments", "target_edge", "solver"}, "example IIIA config");
    ExampleIIIAConfig c;
    detail::read_opt(j, "circle_segments", c.circle_segments);
    detail::read_opt(j, "target_edge", c.target_edge);
    if (j.contains("solver")) c.solver = solve_options_from_json(j["solver"], c.solver);
    if (c.circle_segments < 8) throw Error("circle_segments must be at least 8");
    if (!(c.target_edge > 0)) throw Error("target_edge must be positive");
    return c;
}

inline ExampleIIIBConfig example_IIIB_config_from_json(const nlohmann::json& j) {
    detail::reject_unknown(j, {"example", "delta", "c", "d", "res"}, "example IIIB config");
    ExampleIIIBConfig c;
    detail::read_opt(j, "delta", c.params.delta);
    detail::read_opt(j, "c", c.params.c);
    detail::read_opt(j, "d", c.params.d);
    detail::read_opt(j, "res", c.res);
    if (!(c.res > 0)) throw Error("res must be positive");
    return c;
}

inline nlohmann::json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("cannot parse " + path.string() + ": " + e.what());
    }
}

}  // namespace plateau
