// Acceptance harness: one printed line per criterion, exit 0 only when
// every criterion passes. Each criterion is a pinned scenario; grid steps,
// amplitudes, and horizons are the smallest that keep the measured margins
// stable under refinement (ratios shift < 0.1% when dx is halved).

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <exception>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "blowlab/checks.hpp"
#include "blowlab/exponents.hpp"
#include "blowlab/odi.hpp"
#include "blowlab/odi_oracle.hpp"
#include "blowlab/refine.hpp"
#include "blowlab/sweep.hpp"
#include "blowlab/wave1d.hpp"
#include "blowlab/wave_radial.hpp"
#include "odi_sampling.hpp"

using namespace blowlab;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

// Traces with nonnegative data collected along the way; criterion 9 checks
// the integral inequality on every one of them.
struct TracedRun {
    std::string label;
    WaveProblem prob;
    FunctionalTrace trace;
};
std::vector<TracedRun> g_traces;

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// --- criterion 1: closed-form exponents ---------------------------------

Outcome criterion_exponents() {
    const double p3 = strauss_exponent(3);
    const double p2 = strauss_exponent(2);
    const double e3 = std::abs(p3 - (1.0 + std::numbers::sqrt2));
    const double e2 = std::abs(p2 - 0.5 * (3.0 + std::sqrt(17.0)));
    double worst_root = 0.0;
    bool decreasing = true;
    double prev = std::numeric_limits<double>::infinity();
    for (int n = 2; n <= 10; ++n) {
        const double p0 = strauss_exponent(n);
        worst_root = std::max(worst_root, std::abs(gamma(p0, n)));
        decreasing = decreasing && p0 < prev;
        prev = p0;
    }
    const bool ok = e3 <= 1e-12 && e2 <= 1e-12 && worst_root <= 1e-10 && decreasing;
    return {ok, fmt("closed-form errors %.1e (n=3), %.1e (n=2); worst root residual %.1e; "
                    "critical power %sdecreasing over n=2..10",
                    e3, e2, worst_root, decreasing ? "" : "NOT ")};
}

// --- criterion 2: randomized certificate suite --------------------------

Outcome criterion_certificates() {
    testing::ShapeSampler sampler(0x0dd1cafe);
    const int wanted = 100;
    int accepted = 0, attempts = 0, fails = 0;
    double worst_bracket = 0.0, min_slack = std::numeric_limits<double>::infinity();
    while (accepted < wanted && attempts < 20000) {
        ++attempts;
        auto shape = sampler.draw_shape();
        if (!shape) continue;
        auto prob = testing::instantiate_admissible(*shape);
        if (!prob) continue;
        const KatoCertificate cert = certify(*prob);
        const OdeBlowupResult ode = integrate_extremal(*prob);
        if (!cert.hypothesis_ok || !ode.growth_hypothesis_ok) continue;
        const VerificationReport rep = verify_certificate(cert, *prob, ode);
        if (rep.verdict == Verdict::fail) ++fails;
        min_slack = std::min(min_slack, rep.slack);
        worst_bracket =
            std::max(worst_bracket, (ode.T_blow_hi - ode.T_blow_lo) / ode.T_blow_lo);
        ++accepted;
    }
    const bool ok = accepted >= wanted && fails == 0 && worst_bracket < 1e-3;
    return {ok, fmt("%d problems from %d draws, %d FAIL verdicts, worst bracket %.1e, "
                    "min slack %.3f",
                    accepted, attempts, fails, worst_bracket, min_slack)};
}

// --- criterion 3: solver convergence order ------------------------------

double dalembert(double x, double t, double eps, const RadialProfile& f, const RadialProfile& g) {
    auto G = [&](double s) { return s >= 0 ? g.primitive(s) : -g.primitive(-s); };
    return 0.5 * eps * (f.value(std::abs(x + t)) + f.value(std::abs(x - t))) +
           0.5 * eps * (G(x + t) - G(x - t));
}

double exact_3d(double r, double t, double eps, const RadialProfile& f, const RadialProfile& g) {
    const double sp = r + t;
    const double sm = r - t;
    const double disp = (sp * eps * f.value(sp) + sm * eps * f.value(std::abs(sm))) / (2.0 * r);
    const double vel = eps * (g.moment1(sp) - g.moment1(std::abs(sm))) / (2.0 * r);
    return disp + vel;
}

double linear_error(WaveProblem prob, double dx, double t_snap) {
    prob.grid.dx = dx;
    SimOptions opts;
    opts.snapshot_times = {t_snap};
    opts.record_trace = false;
    const SimResult res = solve_wave(prob, opts);
    const Snapshot& s = res.snapshots.at(0);
    double err = 0.0;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        double exact;
        if (prob.n == 1) {
            exact = dalembert(s.x[i], t_snap, prob.eps, prob.f, prob.g);
        } else {
            if (s.x[i] < 0.75 * dx) continue; // reduction is 0/0 at the origin
            exact = exact_3d(s.x[i], t_snap, prob.eps, prob.f, prob.g);
        }
        err = std::max(err, std::abs(s.u[i] - exact));
    }
    return err;
}

Outcome criterion_solver_order() {
    const double lo = std::pow(2.0, 1.5), hi = std::pow(2.0, 2.5);
    std::string detail;
    bool ok = true;
    for (int n : {1, 3}) {
        for (bool velocity : {false, true}) {
            WaveProblem prob;
            prob.n = n;
            prob.eps = 1.0;
            prob.source = false;
            prob.grid.t_horizon = 3.0;
            prob.f = velocity ? RadialProfile::zero() : RadialProfile::bump(n, 1.0);
            prob.g = velocity ? RadialProfile::bump(n, 1.0) : RadialProfile::zero();
            const double e1 = linear_error(prob, 0.02, 2.5);
            const double e2 = linear_error(prob, 0.01, 2.5);
            const double ratio = e1 / e2;
            ok = ok && ratio > lo && ratio < hi;
            detail += fmt("%s n=%d order %.2f; ", velocity ? "velocity" : "displacement", n,
                          std::log2(ratio));
        }
    }
    return {ok, detail + fmt("window [%.2f, %.2f] on the error ratio", lo, hi)};
}

// --- criterion 4: second-derivative identity ----------------------------

Outcome criterion_identity() {
    WaveProblem line;
    line.n = 1;
    line.p = 2.0;
    line.eps = 0.2;
    line.grid.dx = 0.02;
    line.grid.t_horizon = 10.0;
    const SimResult r1 = solve_1d(line);
    const IdentityReport id1 = check_F_second_identity(r1.trace);
    g_traces.push_back({"line p=2 eps=0.2", line, r1.trace});

    WaveProblem ball;
    ball.n = 3;
    ball.p = 2.0;
    ball.eps = 2.0;
    ball.grid.dx = 0.05;
    ball.grid.t_horizon = 150.0;
    const SimResult r3 = solve_radial(ball);
    const IdentityReport id3 = check_F_second_identity(r3.trace);
    g_traces.push_back({"ball n=3 p=2 eps=2", ball, r3.trace});

    const bool ok = id1.passed && id3.passed;
    return {ok, fmt("worst relative gap %.1e (line), %.1e (radial); tolerance 1e-2",
                    id1.worst_rel, id3.worst_rel)};
}

// --- criterion 5: growth-constant stability across amplitude doubling ---

struct GrowthPair {
    BoundFitReport step0, cond;
};

GrowthPair growth_constants(int n, double p, double eps, double dx, double horizon,
                            const char* label) {
    WaveProblem prob = scenario_problem(Scenario::general_nd, n, p);
    prob.eps = eps;
    prob.grid.dx = dx;
    prob.grid.t_horizon = horizon;
    const SimResult res = solve_wave(prob);
    g_traces.push_back({fmt("%s eps=%g", label, eps), prob, res.trace});
    return {check_step0(res.trace, prob), check_condition_F(res.trace, prob)};
}

Outcome criterion_growth_constants() {
    // The quadratic-in-t regime in 3D opens only past t ~ 1/(0.04 eps):
    // small amplitudes would need horizons in the thousands, so the doubling
    // pair sits at 0.3/0.6 where t_max = 600 is already deep inside it.
    // In 2D, p = 1.5 escapes near t = 23 at eps = 0.1, which forces the
    // opposite choice: small amplitudes and a short window.
    const GrowthPair b1 = growth_constants(3, 2.0, 0.3, 0.05, 600.0, "ball n=3 p=2");
    const GrowthPair b2 = growth_constants(3, 2.0, 0.6, 0.05, 600.0, "ball n=3 p=2");
    const GrowthPair p1 = growth_constants(2, 1.5, 0.05, 0.05, 20.0, "plane n=2 p=1.5");
    const GrowthPair p2 = growth_constants(2, 1.5, 0.10, 0.05, 20.0, "plane n=2 p=1.5");

    bool positive = b1.step0.passed && b1.cond.passed && b2.step0.passed && b2.cond.passed &&
                    p1.step0.passed && p1.cond.passed && p2.step0.passed && p2.cond.passed;
    const StabilityReport s3a = stability_across_eps(b1.step0.C_star, b2.step0.C_star);
    const StabilityReport s3b = stability_across_eps(b1.cond.C_star, b2.cond.C_star);
    const StabilityReport s2a = stability_across_eps(p1.step0.C_star, p2.step0.C_star);
    const StabilityReport s2b = stability_across_eps(p1.cond.C_star, p2.cond.C_star);
    const bool ok =
        positive && s3a.passed && s3b.passed && s2a.passed && s2b.passed;
    return {ok, fmt("doubling ratios n=3: %.3f (early), %.3f (late); n=2: %.3f, %.3f; "
                    "all constants positive: %s; window [0.8, 1.25]",
                    s3a.ratio, s3b.ratio, s2a.ratio, s2b.ratio, positive ? "yes" : "NO")};
}

// --- criterion 6: planar kernel lower bound -----------------------------

Outcome criterion_planar_bound() {
    WaveProblem prob = scenario_problem(Scenario::two_d_p2_f_zero, 2, 2.0);
    prob.eps = 0.05;
    prob.grid.t_horizon = 8.5;
    SimOptions opts;
    opts.snapshot_times = {4.0, 6.0, 8.0};

    WaveProblem fine = prob;
    fine.grid.dx = 0.02;
    const SimResult rf = solve_radial(fine, opts);
    WaveProblem coarse = prob;
    coarse.grid.dx = 0.04;
    SimOptions copts = opts;
    copts.record_trace = false;
    const SimResult rc = solve_radial(coarse, copts);
    g_traces.push_back({"plane n=2 p=2 eps=0.05", fine, rf.trace});

    bool ok = true;
    long total_checked = 0, total_viol = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < rf.snapshots.size(); ++k) {
        const PointwiseReport rep =
            check_pointwise_2d(rf.snapshots[k], rc.snapshots[k], fine);
        ok = ok && rep.passed;
        total_checked += rep.checked;
        total_viol += rep.violations;
        worst = std::min(worst, rep.worst_margin);
    }
    return {ok, fmt("%ld samples over t in {4, 6, 8}, %ld below the bound, "
                    "worst margin %.2e",
                    total_checked, total_viol, worst)};
}

// --- criterion 7: lifespan scaling fits ---------------------------------

struct SweepSpec {
    Scenario scenario;
    int n;
    double p;
    double eps_hi, eps_lo;
    double dx;
};

Outcome criterion_lifespan_fits() {
    const std::vector<SweepSpec> specs = {
        {Scenario::one_d_g_positive, 1, 2.0, 0.5, 0.05, 0.04},
        {Scenario::one_d_g_positive, 1, 3.0, 0.5, 0.05, 0.04},
        {Scenario::one_d_f_only, 1, 2.0, 0.5, 0.05, 0.04},
        {Scenario::general_nd, 3, 2.0, 12.0, 1.2, 0.05},
        {Scenario::two_d_sub2_f_zero, 2, 1.5, 0.5, 0.05, 0.04},
    };
    bool ok = true;
    std::string detail;
    for (const SweepSpec& sp : specs) {
        SweepPlan plan;
        plan.scenario = sp.scenario;
        plan.base = scenario_problem(sp.scenario, sp.n, sp.p);
        plan.base.grid.dx = sp.dx;
        plan.refine.levels = 2;
        plan.eps_list = log_spaced_descending(sp.eps_hi, sp.eps_lo, 8);
        const SweepResult res = run_sweep(plan);
        const TheoryPrediction th = theory_for(sp.scenario, sp.n, sp.p);
        const FitResult fit = fit_power_law(res, -th.kappa, 0.15);
        ok = ok && fit.passed;
        detail += fmt("%s p=%g: %.3f vs %.3f%s; ", scenario_name(sp.scenario), sp.p, fit.slope,
                      -th.kappa, fit.passed ? "" : " MISS");
    }
    return {ok, detail + "tolerance 15%"};
}

// --- criterion 8: log-corrected planar scale ----------------------------

Outcome criterion_log_corrected_scale() {
    SweepPlan plan;
    plan.scenario = Scenario::two_d_p2_f_zero;
    plan.base = scenario_problem(Scenario::two_d_p2_f_zero, 2, 2.0);
    plan.base.grid.dx = 0.05;
    plan.refine.levels = 2;
    plan.eps_list = log_spaced_descending(1.0, 0.1, 8);
    const SweepResult res = run_sweep(plan);
    const RatioReport a_rep = check_a_scaling(res);
    const RatioReport pw_rep = check_scaling_ratio(res, [](double e) { return 1.0 / e; });
    const bool ok = a_rep.passed && !pw_rep.passed;
    return {ok, fmt("T/a(eps) spread %.3f (bounded, accepted); T*eps spread %.3f, "
                    "monotone drift (rejected as a pure power)",
                    a_rep.max_over_min, pw_rep.max_over_min)};
}

// --- criterion 9: integral inequality on every collected trace ----------

Outcome criterion_trace_consistency() {
    bool ok = !g_traces.empty();
    long total_viol = 0;
    double worst = std::numeric_limits<double>::infinity();
    std::string where = "none";
    for (const TracedRun& run : g_traces) {
        const OdiConsistencyReport rep = check_odi_consistency(run.trace, run.prob);
        ok = ok && rep.passed;
        total_viol += rep.violations;
        if (rep.worst_factor < worst) {
            worst = rep.worst_factor;
            where = run.label;
        }
    }
    return {ok, fmt("%zu traces, %ld violations, worst factor %.3f (%s)", g_traces.size(),
                    total_viol, worst, where.c_str())};
}

} // namespace

int main() {
    struct Row {
        const char* name;
        Outcome (*fn)();
    };
    const Row rows[] = {
        {"closed-form exponents", criterion_exponents},
        {"certificate suite", criterion_certificates},
        {"solver convergence order", criterion_solver_order},
        {"second-derivative identity", criterion_identity},
        {"growth-constant stability", criterion_growth_constants},
        {"planar kernel lower bound", criterion_planar_bound},
        {"lifespan scaling fits", criterion_lifespan_fits},
        {"log-corrected planar scale", criterion_log_corrected_scale},
        {"trace integral inequality", criterion_trace_consistency},
    };
    int failed = 0;
    int idx = 0;
    for (const Row& row : rows) {
        ++idx;
        Outcome out;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            out = row.fn();
        } catch (const std::exception& ex) {
            out = {false, std::string("exception: ") + ex.what()};
        }
        const double sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!out.passed) ++failed;
        std::printf("criterion %d (%s): %s  [%.1f s]  %s\n", idx, row.name,
                    out.passed ? "PASS" : "FAIL", sec, out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("acceptance: %d/9 criteria passed\n", 9 - failed);
    return failed == 0 ? 0 : 1;
}
