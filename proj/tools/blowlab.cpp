// blowlab command-line tool.
//
// Subcommands:
//   exponents  critical/lifespan exponent calculator (single pair or table)
//   odi        blow-up certificate for an ordinary differential inequality,
//              cross-checked against the extremal-ODE integration
//   simulate   one nonlinear wave run with trace/snapshot export and checks
//   sweep      amplitude sweep, power-law fit, scaling verdicts
//
// Exit codes: 0 all verdicts PASS/VACUOUS, 1 any FAIL, 2 usage or domain
// error. Output root: --out flag, else $BLOWLAB_OUT, else ./blowlab_out.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blowlab/checks.hpp"
#include "blowlab/config.hpp"
#include "blowlab/exponents.hpp"
#include "blowlab/io.hpp"
#include "blowlab/odi.hpp"
#include "blowlab/odi_oracle.hpp"
#include "blowlab/refine.hpp"
#include "blowlab/sweep.hpp"
#include "blowlab/wave1d.hpp"
#include "blowlab/wave_radial.hpp"

namespace fs = std::filesystem;
using blowlab::json;

namespace {

fs::path output_root(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("BLOWLAB_OUT"); env && *env) return env;
    return "blowlab_out";
}

// ---- exponents -------------------------------------------------------------

struct ExponentsArgs {
    std::string n_spec = "3";
    double p = 0.0;
    bool table = false;
    double a_of_eps_arg = 0.0;
    bool has_p = false;
    bool has_a = false;
    std::string out;
};

int run_exponents(const ExponentsArgs& args) {
    std::ostream& os = std::cout;
    json report = json::object();

    if (args.has_a) {
        const double a = blowlab::a_of_eps(args.a_of_eps_arg);
        const double resid = a * a * args.a_of_eps_arg * args.a_of_eps_arg * std::log1p(a) - 1.0;
        os << "a(" << args.a_of_eps_arg << ") = " << blowlab::fmt_g17(a)
           << "  residual = " << resid << "\n";
        report["a_of_eps"] = json{{"eps", args.a_of_eps_arg}, {"a", a}, {"residual", resid}};
    }

    auto n_range = [&]() -> std::pair<int, int> {
        const auto dots = args.n_spec.find("..");
        if (dots == std::string::npos) {
            const int n = std::stoi(args.n_spec);
            return {n, n};
        }
        return {std::stoi(args.n_spec.substr(0, dots)), std::stoi(args.n_spec.substr(dots + 2))};
    };

    if (args.table) {
        const auto [n_lo, n_hi] = n_range();
        if (n_lo < 2 || n_hi < n_lo) throw std::invalid_argument("table needs 2 <= n_lo <= n_hi");
        os << "n    p0(n)\n";
        json rows = json::array();
        for (int n = n_lo; n <= n_hi; ++n) {
            const double p0 = blowlab::strauss_exponent(n);
            os << n << "    " << blowlab::fmt_g17(p0) << "\n";
            rows.push_back(json{{"n", n}, {"p0", p0}});
        }
        report["table"] = rows;
    } else if (args.has_p) {
        const auto [n_lo, n_hi] = n_range();
        if (n_lo != n_hi) throw std::invalid_argument("a single n is required with --p");
        const blowlab::ExponentReport rep = blowlab::describe(args.p, n_lo);
        os << "n = " << rep.n << ", p = " << rep.p << "\n";
        os << "gamma(p,n) = " << blowlab::fmt_g17(rep.gamma) << "\n";
        if (rep.p0) os << "p0(n) = " << blowlab::fmt_g17(*rep.p0) << "\n";
        os << "regime: " << blowlab::regime_name(rep.regime) << "\n";
        json jr{{"n", rep.n},
                {"p", rep.p},
                {"gamma", rep.gamma},
                {"regime", blowlab::regime_name(rep.regime)}};
        if (rep.p0) jr["p0"] = *rep.p0;
        if (rep.lifespan_exp) {
            os << "lifespan exponent kappa = " << blowlab::fmt_g17(*rep.lifespan_exp) << "\n";
            jr["kappa"] = *rep.lifespan_exp;
        }
        for (auto [name, lc] :
             std::initializer_list<std::pair<const char*, blowlab::LifespanCase>>{
                 {"one_d_g_positive", blowlab::LifespanCase::one_d_g_positive},
                 {"one_d_f_only", blowlab::LifespanCase::one_d_f_only},
                 {"two_d_sub2", blowlab::LifespanCase::two_d_sub2}}) {
            try {
                const double k = blowlab::lifespan_exponent(args.p, n_lo, lc);
                os << "  kappa[" << name << "] = " << blowlab::fmt_g17(k) << "\n";
                jr["kappa_" + std::string(name)] = k;
            } catch (const std::invalid_argument&) {
                // case not applicable to this (p, n)
            }
        }
        report["describe"] = jr;
    } else if (!args.has_a) {
        throw std::invalid_argument("nothing to do: pass --p, --table, or --a-of-eps");
    }

    if (!args.out.empty() || std::getenv("BLOWLAB_OUT")) {
        const fs::path dir = output_root(args.out) / "exponents";
        auto rec = blowlab::start_run_record(
            json{{"command", "exponents"}, {"n", args.n_spec}, {"p", args.p},
                 {"table", args.table}});
        blowlab::write_text(dir / "report.json", report.dump(2) + "\n");
        rec.outputs.push_back((dir / "report.json").string());
        blowlab::finish_run_record(rec, dir);
    }
    return 0;
}

// ---- odi -------------------------------------------------------------------

struct OdiArgs {
    blowlab::OdiProblem prob;
    int lemma = 0; // 0 = infer from data
    bool verify = true;
    double t0 = -1.0;
    blowlab::OracleOptions oracle;
    std::string out;
};

int run_odi(const OdiArgs& args_in) {
    OdiArgs args = args_in;
    if (args.t0 >= 0) args.prob.t0 = args.t0;

    if (args.lemma == 1 && !(args.prob.F0p > 0))
        throw std::invalid_argument("first-lemma mode needs F'(0) > 0");
    if (args.lemma == 2 && args.prob.F0p != 0)
        throw std::invalid_argument("second-lemma mode needs F'(0) = 0");
    const bool wants_lemma2 = args.lemma == 2 || (args.lemma == 0 && args.prob.F0p == 0.0);
    if (wants_lemma2 && !args.prob.t0) {
        // instantiate the doubling-time hypothesis from the extremal run
        args.prob.t0 = blowlab::find_doubling_time(args.prob, args.oracle);
    }

    const blowlab::KatoCertificate cert =
        args.lemma == 1   ? blowlab::certify_lemma1(args.prob)
        : args.lemma == 2 ? blowlab::certify_lemma2(args.prob)
                          : blowlab::certify(args.prob);

    std::cout << "lemma " << cert.lemma << ": M = " << cert.M << ", delta = " << cert.delta
              << ", C0 = " << cert.C0 << "\n";
    std::cout << "T_ref = " << cert.T_ref << ", threshold A = " << cert.threshold_A
              << ", hypothesis " << (cert.hypothesis_ok ? "holds" : "fails") << "\n";
    std::cout << "bound: T < " << cert.bound << "\n";

    json record{{"problem", blowlab::to_json(args.prob)}, {"certificate", blowlab::to_json(cert)}};
    int exit_code = 0;
    if (args.verify) {
        const blowlab::OdeBlowupResult oracle = blowlab::integrate_extremal(args.prob, args.oracle);
        const blowlab::VerificationReport rep =
            blowlab::verify_certificate(cert, args.prob, oracle);
        std::cout << "oracle: " << blowlab::ode_status_name(oracle.status);
        if (oracle.status == blowlab::OdeStatus::blown_up)
            std::cout << ", escape bracket [" << oracle.T_blow_lo << ", " << oracle.T_blow_hi
                      << "]";
        std::cout << "\nverdict: " << blowlab::verdict_name(rep.verdict) << "\n";
        record["verification"] = blowlab::to_json(rep);
        if (rep.verdict == blowlab::Verdict::fail) exit_code = 1;
    }

    const fs::path dir = output_root(args.out) / "odi";
    auto rec = blowlab::start_run_record(json{{"command", "odi"}, {"problem", blowlab::to_json(args.prob)},
                                              {"lemma", args.lemma}, {"verify", args.verify}});
    record["config_hash"] = rec.hash;
    blowlab::write_text(dir / "record.json", record.dump(2) + "\n");
    rec.outputs.push_back((dir / "record.json").string());
    if (record.contains("verification"))
        rec.verdicts["odi"] = record["verification"]["verdict"];
    blowlab::finish_run_record(rec, dir);
    return exit_code;
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
    int n = 1;
    double p = 2.0;
    double eps = 0.1;
    double R = 1.0;
    std::string f_kind = "zero";
    std::string g_kind = "bump";
    double f_mass = 1.0;
    double g_mass = 1.0;
    double dx = 0.02;
    double cfl = 0.0;
    double horizon = 50.0;
    double L = 0.0;
    double u_max = 1e6;
    bool source = true;
    std::vector<double> snapshots;
    long stride = 1;
    std::vector<std::string> checks;
    std::string out;
};

blowlab::RadialProfile make_profile(const std::string& kind, int n, double R, double mass) {
    if (kind == "zero") return blowlab::RadialProfile::zero(R);
    if (kind == "bump") return blowlab::RadialProfile::bump(n, R, mass);
    throw std::invalid_argument("unknown profile kind: " + kind);
}

int run_simulate(const SimulateArgs& args) {
    blowlab::WaveProblem prob;
    prob.n = args.n;
    prob.p = args.p;
    prob.eps = args.eps;
    prob.f = make_profile(args.f_kind, args.n, args.R, args.f_mass);
    prob.g = make_profile(args.g_kind, args.n, args.R, args.g_mass);
    prob.source = args.source;
    prob.grid = {args.dx, args.cfl, args.horizon, args.L};
    prob.caps.U_max = args.u_max;

    blowlab::SimOptions opts;
    opts.snapshot_times = args.snapshots;
    opts.record_stride = args.stride;

    const json config{{"command", "simulate"}, {"problem", blowlab::to_json(prob)},
                      {"snapshots", args.snapshots}, {"stride", args.stride},
                      {"checks", args.checks}};
    auto rec = blowlab::start_run_record(config);
    const fs::path dir = output_root(args.out) / "simulate";

    const blowlab::SimResult res = blowlab::solve_wave(prob, opts);
    std::cout << "status: " << blowlab::sim_status_name(res.status) << " after " << res.steps
              << " steps, sup|u| = " << res.sup_final << "\n";
    if (res.status == blowlab::SimStatus::blown_up)
        std::cout << "escape bracket [" << res.cross_cap.t_lo << ", " << res.cross_cap.t_hi
                  << "]\n";

    blowlab::write_text(dir / "trace.csv", blowlab::trace_csv(res.trace));
    rec.outputs.push_back((dir / "trace.csv").string());
    for (const auto& snap : res.snapshots) {
        std::ostringstream name;
        name << "snapshot_t" << snap.t << ".csv";
        blowlab::write_text(dir / name.str(), blowlab::snapshot_csv(snap));
        rec.outputs.push_back((dir / name.str()).string());
    }

    json checks_out = json::object();
    bool any_fail = false;
    auto note = [&](const char* name, bool passed, json detail) {
        detail["passed"] = passed;
        checks_out[name] = detail;
        rec.verdicts[name] = passed ? "PASS" : "FAIL";
        if (!passed) any_fail = true;
        std::cout << "check " << name << ": " << (passed ? "PASS" : "FAIL") << "\n";
    };

    for (const std::string& c : args.checks) {
        if (c == "convexity") {
            const auto r = blowlab::check_convexity_and_positivity(res.trace);
            note("convexity", r.passed,
                 json{{"checked", r.checked}, {"violations", r.violations}, {"worst", r.worst}});
        } else if (c == "step0") {
            const auto r = blowlab::check_step0(res.trace, prob);
            note("step0", r.passed,
                 json{{"C1_star", r.C_star}, {"samples", r.samples}, {"t_at_inf", r.t_at_inf}});
        } else if (c == "conditionF") {
            const auto r = blowlab::check_condition_F(res.trace, prob);
            note("conditionF", r.passed,
                 json{{"C2_star", r.C_star}, {"samples", r.samples}, {"t_at_inf", r.t_at_inf}});
        } else if (c == "identity") {
            const auto r = blowlab::check_F_second_identity(res.trace);
            note("identity", r.passed,
                 json{{"worst_rel", r.worst_rel}, {"samples", r.samples}});
        } else if (c == "odi") {
            const auto r = blowlab::check_odi_consistency(res.trace, prob);
            note("odi", r.passed,
                 json{{"checked", r.checked},
                      {"violations", r.violations},
                      {"worst_factor", r.worst_factor},
                      {"B", r.B},
                      {"q", r.q}});
        } else if (c == "pointwise") {
            if (args.snapshots.empty())
                throw std::invalid_argument("pointwise check needs --snapshots");
            blowlab::WaveProblem coarse_prob = prob;
            coarse_prob.grid.dx = 2.0 * prob.grid.dx;
            const blowlab::SimResult coarse = blowlab::solve_wave(coarse_prob, opts);
            json per_time = json::array();
            bool all = true;
            for (std::size_t i = 0; i < res.snapshots.size(); ++i) {
                const auto r = blowlab::check_pointwise_2d(res.snapshots[i], coarse.snapshots[i],
                                                           prob);
                all = all && r.passed;
                per_time.push_back(json{{"t", r.t},
                                        {"checked", r.checked},
                                        {"violations", r.violations},
                                        {"worst_margin", r.worst_margin},
                                        {"disc_tol", r.disc_tol}});
            }
            note("pointwise", all, json{{"per_time", per_time}});
        } else {
            throw std::invalid_argument("unknown check: " + c);
        }
    }

    blowlab::write_text(dir / "checks.json", checks_out.dump(2) + "\n");
    rec.outputs.push_back((dir / "checks.json").string());
    blowlab::finish_run_record(rec, dir);
    return any_fail ? 1 : 0;
}

// ---- sweep -------------------------------------------------------------------

struct SweepArgs {
    std::string config_file;
    blowlab::SweepConfig cfg;
    double synthetic_C = 0.0;
    double synthetic_kappa = 0.0;
    bool synthetic_a = false;
    std::string out;
};

blowlab::SweepResult synthetic_sweep(const blowlab::SweepPlan& plan, double C, double kappa,
                                     bool a_law) {
    blowlab::SweepResult result;
    result.scenario = plan.scenario;
    result.n = plan.base.n;
    result.p = plan.base.p;
    for (double eps : plan.eps_list) {
        blowlab::SweepPointRecord rec;
        rec.eps = eps;
        rec.a_eps = blowlab::a_of_eps(eps);
        const double T = a_law ? C * rec.a_eps : C * std::pow(eps, -kappa);
        rec.est.T_lo = rec.est.T_hi = rec.est.extrapolated = T;
        rec.est.converged = true;
        rec.est.all_blew_up = true;
        result.points.push_back(rec);
    }
    return result;
}

int run_sweep_cmd(const SweepArgs& args) {
    blowlab::SweepConfig cfg = args.cfg;
    if (!args.config_file.empty()) {
        std::ifstream in(args.config_file);
        if (!in) throw std::invalid_argument("cannot read config: " + args.config_file);
        json j = json::parse(in);
        cfg = blowlab::sweep_config_from_json(j);
    }
    const blowlab::SweepPlan plan = cfg.plan();
    const blowlab::TheoryPrediction th =
        blowlab::theory_for(plan.scenario, plan.base.n, plan.base.p);

    const json config = json{{"command", "sweep"}, {"sweep", blowlab::to_json(cfg)}};
    auto rec = blowlab::start_run_record(config);
    const std::uint64_t hash = rec.hash;
    const fs::path dir =
        output_root(args.out) / "sweep" / blowlab::scenario_name(plan.scenario);
    const fs::path points_path = dir / "points.jsonl";

    const bool synthetic = args.synthetic_C > 0;
    blowlab::SweepResult result;
    if (synthetic) {
        result = synthetic_sweep(plan, args.synthetic_C, args.synthetic_kappa, args.synthetic_a);
    } else {
        // resume from any earlier records with the same config hash
        std::map<double, blowlab::SweepPointRecord> done;
        for (const json& line : blowlab::read_jsonl(points_path)) {
            if (!line.contains("config_hash") || line["config_hash"].get<std::uint64_t>() != hash)
                continue;
            blowlab::SweepPointRecord pt = blowlab::sweep_point_from_json(line);
            done[pt.eps] = pt;
        }
        auto resume = [&](double eps, blowlab::SweepPointRecord& out) {
            auto it = done.find(eps);
            if (it == done.end()) return false;
            out = it->second;
            return true;
        };
        auto sink = [&](const blowlab::SweepPointRecord& pt) {
            if (pt.reused) return; // already on disk
            json j = blowlab::to_json(pt);
            j["config_hash"] = hash;
            j["scenario"] = blowlab::scenario_name(plan.scenario);
            blowlab::append_jsonl(points_path, j);
        };
        result = blowlab::run_sweep(plan, resume, sink, &std::cout);
    }

    json summary{{"config_hash", hash},
                 {"scenario", blowlab::scenario_name(plan.scenario)},
                 {"n", plan.base.n},
                 {"p", plan.base.p},
                 {"theory", json{{"law", th.law},
                                 {"kappa", th.kappa},
                                 {"log_corrected", th.log_corrected}}}};
    bool any_fail = false;

    if (th.log_corrected) {
        const auto ra = blowlab::check_a_scaling(result);
        const auto rp = blowlab::check_scaling_ratio(
            result, [](double e) { return 1.0 / e; });
        summary["a_scaling"] = blowlab::to_json(ra);
        summary["pure_power_scaling"] = blowlab::to_json(rp);
        rec.verdicts["a_scaling"] = ra.passed ? "PASS" : "FAIL";
        any_fail = any_fail || !ra.passed;
        std::cout << "a-scaling ratio spread " << ra.max_over_min << ": "
                  << (ra.passed ? "PASS" : "FAIL") << "\n";
        std::cout << "pure-power comparison spread " << rp.max_over_min
                  << (rp.strictly_monotone ? " (monotone drift)" : "") << ": "
                  << (rp.passed ? "bounded" : "rejected") << "\n";
    } else {
        const auto fit = blowlab::fit_power_law(result, -th.kappa, cfg.tol_slope, cfg.bootstrap,
                                                cfg.seed);
        summary["fit"] = blowlab::to_json(fit);
        rec.verdicts["slope"] = fit.passed ? "PASS" : "FAIL";
        any_fail = any_fail || !fit.passed;
        std::cout << "slope " << fit.slope << " vs theory " << fit.theory_slope << " (tol "
                  << fit.tol << "): " << (fit.passed ? "PASS" : "FAIL") << "\n";
        if (th.kappa_alt > 0) {
            const auto fit_alt = blowlab::fit_power_law(result, -th.kappa_alt, cfg.tol_slope,
                                                        cfg.bootstrap, cfg.seed);
            summary["fit_against_general_law"] = blowlab::to_json(fit_alt);
        }
    }

    blowlab::write_text(dir / "summary.json", summary.dump(2) + "\n");
    blowlab::write_text(dir / "plot.csv", blowlab::sweep_plot_csv(result, th));
    rec.outputs.push_back((dir / "summary.json").string());
    rec.outputs.push_back((dir / "plot.csv").string());
    blowlab::finish_run_record(rec, dir);
    return any_fail ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"blowlab: blow-up laboratory for semilinear wave equations"};
    app.require_subcommand(1);

    ExponentsArgs ex;
    auto* cmd_ex = app.add_subcommand("exponents", "critical and lifespan exponents");
    cmd_ex->add_option("--n", ex.n_spec, "dimension, or range lo..hi with --table");
    auto* ex_p = cmd_ex->add_option("--p", ex.p, "power");
    cmd_ex->add_flag("--table", ex.table, "print a p0(n) table over the n range");
    auto* ex_a = cmd_ex->add_option("--a-of-eps", ex.a_of_eps_arg,
                                    "solve the log-corrected scale equation at this amplitude");
    cmd_ex->add_option("--out", ex.out, "output root directory");

    OdiArgs od;
    auto* cmd_od = app.add_subcommand("odi", "certify blow-up for F'' >= B(t+R)^-q |F|^p");
    cmd_od->add_option("--p", od.prob.p, "power p > 1");
    cmd_od->add_option("--a", od.prob.a, "growth exponent a > 0");
    cmd_od->add_option("--q", od.prob.q, "decay exponent q");
    cmd_od->add_option("--A", od.prob.A, "growth constant A > 0");
    cmd_od->add_option("--B", od.prob.B, "comparison constant B > 0");
    cmd_od->add_option("--R", od.prob.R, "shift R > 0");
    cmd_od->add_option("--T0", od.prob.T0, "growth hypothesis onset T0 > 0");
    cmd_od->add_option("--F0", od.prob.F0, "F(0)");
    cmd_od->add_option("--F0p", od.prob.F0p, "F'(0)");
    cmd_od->add_option("--t0", od.t0, "doubling time hypothesis for the second lemma");
    cmd_od->add_option("--lemma", od.lemma, "force lemma 1 or 2 (default: infer)")
        ->check(CLI::IsMember({0, 1, 2}));
    cmd_od->add_flag("!--no-verify", od.verify, "skip the extremal-ODE verification");
    cmd_od->add_option("--f-lo", od.oracle.F_lo, "first escape threshold");
    cmd_od->add_option("--f-hi", od.oracle.F_hi, "second escape threshold");
    cmd_od->add_option("--t-max", od.oracle.t_horizon, "oracle horizon");
    cmd_od->add_option("--out", od.out, "output root directory");

    SimulateArgs si;
    auto* cmd_si = app.add_subcommand("simulate", "one nonlinear wave run");
    cmd_si->add_option("--n", si.n, "dimension (1 = line, >= 2 radial)");
    cmd_si->add_option("--p", si.p, "power p > 1");
    cmd_si->add_option("--eps", si.eps, "data amplitude");
    cmd_si->add_option("--R", si.R, "data support radius");
    cmd_si->add_option("--f", si.f_kind, "displacement profile: zero|bump");
    cmd_si->add_option("--g", si.g_kind, "velocity profile: zero|bump");
    cmd_si->add_option("--f-mass", si.f_mass, "displacement profile mass");
    cmd_si->add_option("--g-mass", si.g_mass, "velocity profile mass");
    cmd_si->add_option("--dx", si.dx, "grid spacing");
    cmd_si->add_option("--cfl", si.cfl, "Courant ratio (0 = solver default)");
    cmd_si->add_option("--horizon", si.horizon, "stop time");
    cmd_si->add_option("--L", si.L, "domain half-length (0 = auto)");
    cmd_si->add_option("--u-max", si.u_max, "escape threshold");
    cmd_si->add_flag("!--linear", si.source, "drop the |u|^p source (linear run)");
    cmd_si->add_option("--snapshots", si.snapshots, "snapshot times")->delimiter(',');
    cmd_si->add_option("--stride", si.stride, "trace recording stride");
    cmd_si->add_option("--checks", si.checks,
                       "checks: convexity,step0,conditionF,identity,odi,pointwise")
        ->delimiter(',');
    cmd_si->add_option("--out", si.out, "output root directory");

    SweepArgs sw;
    auto* cmd_sw = app.add_subcommand("sweep", "amplitude sweep and scaling fit");
    cmd_sw->add_option("--config", sw.config_file, "sweep config JSON (overrides flags)");
    std::string scenario_name_arg = "one_d_g_positive";
    cmd_sw->add_option("--scenario", scenario_name_arg, "scenario name");
    cmd_sw->add_option("--n", sw.cfg.n, "dimension");
    cmd_sw->add_option("--p", sw.cfg.p, "power");
    cmd_sw->add_option("--R", sw.cfg.R, "data support radius");
    cmd_sw->add_option("--eps-hi", sw.cfg.eps_hi, "largest amplitude");
    cmd_sw->add_option("--eps-lo", sw.cfg.eps_lo, "smallest amplitude");
    cmd_sw->add_option("--eps-count", sw.cfg.eps_count, "number of amplitudes");
    cmd_sw->add_option("--dx", sw.cfg.dx, "coarsest grid spacing");
    cmd_sw->add_option("--cfl", sw.cfg.cfl, "Courant ratio (0 = solver default)");
    cmd_sw->add_option("--levels", sw.cfg.levels, "refinement levels");
    cmd_sw->add_option("--u-max", sw.cfg.U_max, "escape threshold");
    cmd_sw->add_option("--horizon-base", sw.cfg.horizon_base, "initial horizon guess");
    cmd_sw->add_option("--tol", sw.cfg.tol_slope, "slope tolerance (relative)");
    cmd_sw->add_option("--bootstrap", sw.cfg.bootstrap, "bootstrap resamples");
    cmd_sw->add_option("--seed", sw.cfg.seed, "bootstrap seed");
    cmd_sw->add_option("--synthetic-C", sw.synthetic_C, "synthetic mode: prefactor");
    cmd_sw->add_option("--synthetic-kappa", sw.synthetic_kappa, "synthetic mode: exponent");
    cmd_sw->add_flag("--synthetic-a", sw.synthetic_a, "synthetic mode: T = C a(eps)");
    cmd_sw->add_option("--out", sw.out, "output root directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_ex->parsed()) {
            ex.has_p = ex_p->count() > 0;
            ex.has_a = ex_a->count() > 0;
            return run_exponents(ex);
        }
        if (cmd_od->parsed()) return run_odi(od);
        if (cmd_si->parsed()) return run_simulate(si);
        if (cmd_sw->parsed()) {
            sw.cfg.scenario = blowlab::parse_scenario(scenario_name_arg);
            return run_sweep_cmd(sw);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
