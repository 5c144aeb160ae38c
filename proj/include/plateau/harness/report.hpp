#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "../ledger/ledger.hpp"
#include "../solver/minimize.hpp"

namespace plateau {

/// One verdict. `relation` says how observed is compared to expected:
/// "near" (|observed - expected| <= tolerance), "<", "<=", ">", ">=" or "==".
struct Check {
    std::string name;
    std::string relation;
    double expected = 0.0;
    double observed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline Check evaluate_check(std::string name, std::string relation, double expected, double observed,
                            double tolerance = 0.0) {
    Check c{std::move(name), std::move(relation), expected, observed, tolerance, false};
    if (!std::isfinite(observed) || !std::isfinite(expected)) return c;
    if (c.relation == "near")
        c.pass = std::abs(observed - expected) <= tolerance;
    else if (c.relation == "<")
        c.pass = observed < expected;
    else if (c.relation == "<=")
        c.pass = observed <= expected + tolerance;
    else if (c.relation == ">")
        c.pass = observed > expected;
    else if (c.relation == ">=")
        c.pass = observed >= expected - tolerance;
    else if (c.relation == "==")
        c.pass = observed == expected;
    else
        throw Error("unknown check relation '" + c.relation + "'");
    return c;
}

struct SolverRun {
    std::string label;
    SolveReport report;
};

struct ExampleReport {
    std::string example_id;
    std::map<std::string, double> params;
    std::vector<LedgerEntry> ledger;
    std::vector<SolverRun> solver_runs;
    std::vector<Check> checks;
    std::vector<std::string> artifacts;
    std::vector<std::string> notes;

    bool overall_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }

    // the add_* helpers return copies: a reference into the vector would
    // dangle after the next push
    Check add(Check c) {
        checks.push_back(c);
        return c;
    }

    LedgerEntry add_ledger(LedgerEntry e) {
        ledger.push_back(e);
        return e;
    }

    SolveReport add_run(std::string label, SolveReport r) {
        solver_runs.push_back({std::move(label), r});
        return r;
    }
};

/// True when the area history never goes up.
inline bool history_monotone(const SolveReport& r) {
    for (std::size_t i = 1; i < r.area_history.size(); ++i)
        if (r.area_history[i] > r.area_history[i - 1]) return false;
    return true;
}

// json -----------------------------------------------------------------------

inline void to_json(nlohmann::json& j, const LedgerEntry& e) {
    j = {{"name", e.name}, {"value", e.value}, {"formula_source", e.formula_source}, {"inputs", e.inputs}};
}
inline void from_json(const nlohmann::json& j, LedgerEntry& e) {
    j.at("name").get_to(e.name);
    j.at("value").get_to(e.value);
    j.at("formula_source").get_to(e.formula_source);
    j.at("inputs").get_to(e.inputs);
}

inline void to_json(nlohmann::json& j, const SolveReport& r) {
    j = {{"converged", r.converged},
         {"iters", r.iters},
         {"final_area", r.final_area},
         {"final_grad_norm", r.final_grad_norm},
         {"area_history", r.area_history},
         {"flips", r.flips},
         {"projections", r.projections},
         {"degenerate_triangles", r.degenerate_triangles},
         {"message", r.message}};
}
inline void from_json(const nlohmann::json& j, SolveReport& r) {
    j.at("converged").get_to(r.converged);
    j.at("iters").get_to(r.iters);
    j.at("final_area").get_to(r.final_area);
    j.at("final_grad_norm").get_to(r.final_grad_norm);
    j.at("area_history").get_to(r.area_history);
    j.at("flips").get_to(r.flips);
    j.at("projections").get_to(r.projections);
    j.at("degenerate_triangles").get_to(r.degenerate_triangles);
    j.at("message").get_to(r.message);
}

inline void to_json(nlohmann::json& j, const SolverRun& r) {
    j = r.report;
    j["label"] = r.label;
}
inline void from_json(const nlohmann::json& j, SolverRun& r) {
    j.at("label").get_to(r.label);
    j.get_to(r.report);
}

inline void to_json(nlohmann::json& j, const Check& c) {
    j = {{"name", c.name},         {"relation", c.relation},   {"expected", c.expected},
         {"observed", c.observed}, {"tolerance", c.tolerance}, {"pass", c.pass}};
}
inline void from_json(const nlohmann::json& j, Check& c) {
    j.at("name").get_to(c.name);
    j.at("relation").get_to(c.relation);
    j.at("expected").get_to(c.expected);
    j.at("observed").get_to(c.observed);
    j.at("tolerance").get_to(c.tolerance);
    j.at("pass").get_to(c.pass);
}

inline void to_json(nlohmann::json& j, const ExampleReport& r) {
    j = {{"example_id", r.example_id}, {"params", r.params},       {"ledger", r.ledger},
         {"solver_runs", r.solver_runs}, {"checks", r.checks},     {"artifacts", r.artifacts},
         {"notes", r.notes},           {"overall_pass", r.overall_pass()}};
}
inline void from_json(const nlohmann::json& j, ExampleReport& r) {
    j.at("example_id").get_to(r.example_id);
    j.at("params").get_to(r.params);
    j.at("ledger").get_to(r.ledger);
    j.at("solver_runs").get_to(r.solver_runs);
    j.at("checks").get_to(r.checks);
    j.at("artifacts").get_to(r.artifacts);
    j.at("notes").get_to(r.notes);
}

inline std::string report_to_string(const ExampleReport& r) { return nlohmann::json(r).dump(2) + "\n"; }

inline ExampleReport report_from_string(const std::string& s) {
    return nlohmann::json::parse(s).get<ExampleReport>();
}

}  // namespace plateau
