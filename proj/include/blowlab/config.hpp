// JSON serialization for problems, options, and experiment configs, plus
// the canonical config hash. Parsing is strict: unknown keys are rejected
// so a typo in a config file cannot silently fall back to a default.

#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "blowlab/odi.hpp"
#include "blowlab/odi_oracle.hpp"
#include "blowlab/sweep.hpp"
#include "blowlab/wave_types.hpp"

namespace blowlab {

using nlohmann::json;

inline constexpr const char* kToolVersion = "blowlab 1.0.0";

inline void require_keys(const json& j, std::initializer_list<const char*> allowed,
                         const char* where) {
    if (!j.is_object()) throw std::invalid_argument(std::string(where) + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok)
            throw std::invalid_argument(std::string(where) + ": unknown key '" + it.key() + "'");
    }
}

template <class T>
void get_if_present(const json& j, const char* key, T& out) {
    if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->get<T>();
}

// FNV-1a over the canonical (sorted-key, fixed-precision) dump.
inline std::uint64_t config_hash(const json& j) {
    const std::string s = j.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// ---- odi -----------------------------------------------------------------

inline json to_json(const OdiProblem& prob) {
    json j{{"p", prob.p}, {"a", prob.a},   {"q", prob.q},   {"A", prob.A},  {"B", prob.B},
           {"R", prob.R}, {"T0", prob.T0}, {"F0", prob.F0}, {"F0p", prob.F0p}};
    if (prob.t0) j["t0"] = *prob.t0;
    return j;
}

inline OdiProblem odi_problem_from_json(const json& j) {
    require_keys(j, {"p", "a", "q", "A", "B", "R", "T0", "F0", "F0p", "t0"}, "odi problem");
    OdiProblem prob;
    get_if_present(j, "p", prob.p);
    get_if_present(j, "a", prob.a);
    get_if_present(j, "q", prob.q);
    get_if_present(j, "A", prob.A);
    get_if_present(j, "B", prob.B);
    get_if_present(j, "R", prob.R);
    get_if_present(j, "T0", prob.T0);
    get_if_present(j, "F0", prob.F0);
    get_if_present(j, "F0p", prob.F0p);
    if (auto it = j.find("t0"); it != j.end() && !it->is_null()) prob.t0 = it->get<double>();
    return prob;
}

inline json to_json(const KatoCertificate& c) {
    return json{{"lemma", c.lemma},       {"M", c.M},
                {"delta", c.delta},       {"C0", c.C0},
                {"T_ref", c.T_ref},       {"threshold_A", c.threshold_A},
                {"hypothesis_ok", c.hypothesis_ok}, {"bound", c.bound},
                {"problem_id", c.problem_id}};
}

inline json to_json(const VerificationReport& r) {
    return json{{"verdict", verdict_name(r.verdict)},
                {"hypothesis_ok", r.hypothesis_ok},
                {"growth_hypothesis_ok", r.growth_hypothesis_ok},
                {"blown_up", r.blown_up},
                {"bound", r.bound},
                {"T_blow_lo", r.T_blow_lo},
                {"T_blow_hi", r.T_blow_hi},
                {"slack", r.slack}};
}

// ---- wave ----------------------------------------------------------------

inline json to_json(const RadialProfile& prof) {
    return json{{"kind", prof.kind == RadialProfile::Kind::zero ? "zero" : "bump"},
                {"R", prof.R},
                {"c", prof.c}};
}

inline RadialProfile profile_from_json(const json& j) {
    require_keys(j, {"kind", "R", "c"}, "profile");
    RadialProfile prof;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero")
        prof.kind = RadialProfile::Kind::zero;
    else if (kind == "bump")
        prof.kind = RadialProfile::Kind::bump;
    else
        throw std::invalid_argument("profile: unknown kind '" + kind + "'");
    get_if_present(j, "R", prof.R);
    get_if_present(j, "c", prof.c);
    return prof;
}

inline json to_json(const WaveProblem& prob) {
    return json{{"n", prob.n},
                {"p", prob.p},
                {"eps", prob.eps},
                {"source", prob.source},
                {"f", to_json(prob.f)},
                {"g", to_json(prob.g)},
                {"grid", json{{"dx", prob.grid.dx},
                              {"cfl", prob.grid.cfl},
                              {"t_horizon", prob.grid.t_horizon},
                              {"L", prob.grid.L}}},
                {"caps", json{{"U_max", prob.caps.U_max}, {"stop_factor", prob.caps.stop_factor}}}};
}

inline WaveProblem wave_problem_from_json(const json& j) {
    require_keys(j, {"n", "p", "eps", "source", "f", "g", "grid", "caps"}, "wave problem");
    WaveProblem prob;
    get_if_present(j, "n", prob.n);
    get_if_present(j, "p", prob.p);
    get_if_present(j, "eps", prob.eps);
    get_if_present(j, "source", prob.source);
    if (j.contains("f")) prob.f = profile_from_json(j.at("f"));
    if (j.contains("g")) prob.g = profile_from_json(j.at("g"));
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        require_keys(g, {"dx", "cfl", "t_horizon", "L"}, "grid");
        get_if_present(g, "dx", prob.grid.dx);
        get_if_present(g, "cfl", prob.grid.cfl);
        get_if_present(g, "t_horizon", prob.grid.t_horizon);
        get_if_present(g, "L", prob.grid.L);
    }
    if (j.contains("caps")) {
        const json& c = j.at("caps");
        require_keys(c, {"U_max", "stop_factor"}, "caps");
        get_if_present(c, "U_max", prob.caps.U_max);
        get_if_present(c, "stop_factor", prob.caps.stop_factor);
    }
    return prob;
}

// ---- sweep ---------------------------------------------------------------

inline json to_json(const BlowupEstimate& est) {
    json levels = json::array();
    for (const auto& [dx, T] : est.refinement) levels.push_back(json{{"dx", dx}, {"T", T}});
    json j{{"T_lo", est.T_lo},
           {"T_hi", est.T_hi},
           {"refinement", levels},
           {"extrapolated", est.extrapolated},
           {"converged", est.converged},
           {"all_blew_up", est.all_blew_up},
           {"total_steps", est.total_steps}};
    if (std::isfinite(est.p_obs)) j["p_obs"] = est.p_obs;
    return j;
}

inline BlowupEstimate blowup_estimate_from_json(const json& j) {
    require_keys(j,
                 {"T_lo", "T_hi", "refinement", "extrapolated", "converged", "all_blew_up",
                  "total_steps", "p_obs"},
                 "blow-up estimate");
    BlowupEstimate est;
    get_if_present(j, "T_lo", est.T_lo);
    get_if_present(j, "T_hi", est.T_hi);
    get_if_present(j, "extrapolated", est.extrapolated);
    get_if_present(j, "converged", est.converged);
    get_if_present(j, "all_blew_up", est.all_blew_up);
    get_if_present(j, "total_steps", est.total_steps);
    get_if_present(j, "p_obs", est.p_obs);
    if (j.contains("refinement"))
        for (const json& lv : j.at("refinement"))
            est.refinement.emplace_back(lv.at("dx").get<double>(), lv.at("T").get<double>());
    return est;
}

inline json to_json(const SweepPointRecord& rec) {
    return json{{"eps", rec.eps},
                {"estimate", to_json(rec.est)},
                {"horizon_used", rec.horizon_used},
                {"a_of_eps", rec.a_eps}};
}

inline SweepPointRecord sweep_point_from_json(const json& j) {
    require_keys(j, {"eps", "estimate", "horizon_used", "a_of_eps", "config_hash", "scenario"},
                 "sweep point");
    SweepPointRecord rec;
    get_if_present(j, "eps", rec.eps);
    get_if_present(j, "horizon_used", rec.horizon_used);
    get_if_present(j, "a_of_eps", rec.a_eps);
    if (j.contains("estimate")) rec.est = blowup_estimate_from_json(j.at("estimate"));
    return rec;
}

inline json to_json(const FitResult& f) {
    return json{{"slope", f.slope},       {"intercept", f.intercept},
                {"r2", f.r2},             {"ci_lo", f.ci_lo},
                {"ci_hi", f.ci_hi},       {"theory_slope", f.theory_slope},
                {"tol", f.tol},           {"passed", f.passed},
                {"points_used", f.points_used}};
}

inline json to_json(const RatioReport& r) {
    return json{{"eps", r.eps},
                {"ratios", r.ratios},
                {"max_over_min", r.max_over_min},
                {"strictly_monotone", r.strictly_monotone},
                {"bound", r.bound},
                {"drift_floor", r.drift_floor},
                {"passed", r.passed}};
}

// Sweep experiment definition as configured from file or flags. The grid
// policy (dx, levels, caps) applies identically to every amplitude.
struct SweepConfig {
    Scenario scenario = Scenario::one_d_g_positive;
    int n = 1;
    double p = 2.0;
    double R = 1.0;
    double eps_hi = 0.2;
    double eps_lo = 0.02;
    int eps_count = 8;
    double dx = 0.02;
    double cfl = 0.0;
    int levels = 3;
    double U_max = 1e6;
    double horizon_base = 0.0;
    double tol_slope = 0.15;
    int bootstrap = 1000;
    std::uint64_t seed = 0x5eed5eedULL;

    SweepPlan plan() const {
        SweepPlan pl;
        pl.scenario = scenario;
        pl.eps_list = log_spaced_descending(eps_hi, eps_lo, eps_count);
        pl.base = scenario_problem(scenario, n, p, R);
        pl.base.grid.dx = dx;
        pl.base.grid.cfl = cfl;
        pl.base.caps.U_max = U_max;
        pl.refine.levels = levels;
        pl.horizon_base = horizon_base;
        pl.validate();
        return pl;
    }
};

inline json to_json(const SweepConfig& c) {
    return json{{"scenario", scenario_name(c.scenario)},
                {"n", c.n},
                {"p", c.p},
                {"R", c.R},
                {"eps_hi", c.eps_hi},
                {"eps_lo", c.eps_lo},
                {"eps_count", c.eps_count},
                {"dx", c.dx},
                {"cfl", c.cfl},
                {"levels", c.levels},
                {"U_max", c.U_max},
                {"horizon_base", c.horizon_base},
                {"tol_slope", c.tol_slope},
                {"bootstrap", c.bootstrap},
                {"seed", c.seed}};
}

inline SweepConfig sweep_config_from_json(const json& j) {
    require_keys(j,
                 {"scenario", "n", "p", "R", "eps_hi", "eps_lo", "eps_count", "dx", "cfl",
                  "levels", "U_max", "horizon_base", "tol_slope", "bootstrap", "seed"},
                 "sweep config");
    SweepConfig c;
    if (j.contains("scenario")) c.scenario = parse_scenario(j.at("scenario").get<std::string>());
    get_if_present(j, "n", c.n);
    get_if_present(j, "p", c.p);
    get_if_present(j, "R", c.R);
    get_if_present(j, "eps_hi", c.eps_hi);
    get_if_present(j, "eps_lo", c.eps_lo);
    get_if_present(j, "eps_count", c.eps_count);
    get_if_present(j, "dx", c.dx);
    get_if_present(j, "cfl", c.cfl);
    get_if_present(j, "levels", c.levels);
    get_if_present(j, "U_max", c.U_max);
    get_if_present(j, "horizon_base", c.horizon_base);
    get_if_present(j, "tol_slope", c.tol_slope);
    get_if_present(j, "bootstrap", c.bootstrap);
    get_if_present(j, "seed", c.seed);
    return c;
}

} // namespace blowlab
