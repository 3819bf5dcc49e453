// Amplitude sweeps: measure the numerical lifespan T(eps) over a decade of
// amplitudes, fit the power law, and compare against the predicted scaling
// for the scenario. The planar p=2 case gets a ratio test against the
// log-corrected scale a(eps) instead of a pure power.

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "blowlab/exponents.hpp"
#include "blowlab/refine.hpp"
#include "blowlab/stats.hpp"
#include "blowlab/wave_types.hpp"

namespace blowlab {

enum class Scenario {
    general_nd,        // n >= 2 radial, subcritical power, velocity data
    one_d_g_positive,  // line, g > 0
    one_d_f_only,      // line, displacement-only data
    two_d_p2_f_zero,   // plane, p = 2, velocity data: log-corrected scale
    two_d_sub2_f_zero, // plane, 1 < p < 2, velocity data
};

inline const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::general_nd: return "general_nd";
        case Scenario::one_d_g_positive: return "one_d_g_positive";
        case Scenario::one_d_f_only: return "one_d_f_only";
        case Scenario::two_d_p2_f_zero: return "two_d_p2_f_zero";
        case Scenario::two_d_sub2_f_zero: return "two_d_sub2_f_zero";
    }
    return "?";
}

inline Scenario parse_scenario(const std::string& name) {
    for (Scenario s : {Scenario::general_nd, Scenario::one_d_g_positive, Scenario::one_d_f_only,
                       Scenario::two_d_p2_f_zero, Scenario::two_d_sub2_f_zero})
        if (name == scenario_name(s)) return s;
    throw std::invalid_argument("unknown scenario: " + name);
}

// Predicted lifespan scaling for a scenario. kappa is the power-law
// exponent in T <= C eps^{-kappa}; log_corrected marks the planar p=2 case
// where the scale is a(eps) instead. kappa_alt carries the unimproved
// general-dimension exponent where a sharper planar one exists.
struct TheoryPrediction {
    Scenario scenario{};
    const char* law = "";
    double kappa = 0.0;
    bool log_corrected = false;
    double kappa_alt = 0.0; // 0 when no alternative law applies
};

inline TheoryPrediction theory_for(Scenario sc, int n, double p) {
    TheoryPrediction th;
    th.scenario = sc;
    switch (sc) {
        case Scenario::general_nd:
            th.law = "subcritical power law";
            th.kappa = lifespan_exponent(p, n, LifespanCase::general);
            break;
        case Scenario::one_d_g_positive:
            th.law = "line, velocity data";
            th.kappa = lifespan_exponent(p, 1, LifespanCase::one_d_g_positive);
            break;
        case Scenario::one_d_f_only:
            th.law = "line, displacement-only data";
            th.kappa = lifespan_exponent(p, 1, LifespanCase::one_d_f_only);
            break;
        case Scenario::two_d_p2_f_zero:
            th.law = "plane, log-corrected scale";
            th.kappa = 1.0; // nominal power part; the scale is a(eps)
            th.log_corrected = true;
            break;
        case Scenario::two_d_sub2_f_zero:
            th.law = "plane, improved power law";
            th.kappa = lifespan_exponent(p, 2, LifespanCase::two_d_sub2);
            th.kappa_alt = lifespan_exponent(p, 2, LifespanCase::general);
            break;
    }
    return th;
}

struct SweepPlan {
    Scenario scenario = Scenario::one_d_g_positive;
    std::vector<double> eps_list; // strictly decreasing, >= 5 values, >= 1 decade
    WaveProblem base{};           // eps and t_horizon are set per point
    RefineOptions refine{};
    double horizon_base = 0.0; // starting horizon guess; 0 = auto (30 R)
    int max_horizon_doublings = 8;

    void validate() const {
        base.validate();
        if (eps_list.size() < 5) throw std::invalid_argument("sweep needs at least 5 amplitudes");
        for (std::size_t i = 0; i + 1 < eps_list.size(); ++i)
            if (!(eps_list[i] > eps_list[i + 1]))
                throw std::invalid_argument("amplitudes must be strictly decreasing");
        if (!(eps_list.back() > 0)) throw std::invalid_argument("amplitudes must be positive");
        if (eps_list.front() / eps_list.back() < 10.0 * (1.0 - 1e-12))
            throw std::invalid_argument("amplitudes must span at least one decade");
        const bool f_zero = base.f.kind == RadialProfile::Kind::zero;
        const bool g_zero = base.g.kind == RadialProfile::Kind::zero;
        switch (scenario) {
            case Scenario::general_nd:
                if (base.n < 2) throw std::invalid_argument("general_nd requires n >= 2");
                if (gamma(base.p, base.n) <= 0)
                    throw std::invalid_argument("general_nd requires a subcritical power");
                if (g_zero) throw std::invalid_argument("general_nd requires velocity data");
                break;
            case Scenario::one_d_g_positive:
                if (base.n != 1 || g_zero)
                    throw std::invalid_argument("one_d_g_positive requires n=1 and velocity data");
                break;
            case Scenario::one_d_f_only:
                if (base.n != 1 || !g_zero || f_zero)
                    throw std::invalid_argument(
                        "one_d_f_only requires n=1, displacement data only");
                break;
            case Scenario::two_d_p2_f_zero:
                if (base.n != 2 || base.p != 2.0 || !f_zero || g_zero)
                    throw std::invalid_argument(
                        "two_d_p2_f_zero requires n=2, p=2, velocity data only");
                break;
            case Scenario::two_d_sub2_f_zero:
                if (base.n != 2 || !(base.p > 1.0 && base.p < 2.0) || !f_zero || g_zero)
                    throw std::invalid_argument(
                        "two_d_sub2_f_zero requires n=2, 1<p<2, velocity data only");
                break;
        }
    }
};

// Scenario-default data: mass-one velocity bump, plus a displacement bump
// only where the scenario calls for it.
inline WaveProblem scenario_problem(Scenario sc, int n, double p, double R = 1.0) {
    WaveProblem prob;
    prob.n = n;
    prob.p = p;
    prob.f = RadialProfile::zero(R);
    prob.g = RadialProfile::bump(n, R);
    if (sc == Scenario::one_d_f_only) {
        prob.f = RadialProfile::bump(1, R);
        prob.g = RadialProfile::zero(R);
    }
    return prob;
}

inline std::vector<double> log_spaced_descending(double eps_hi, double eps_lo, int count) {
    if (!(eps_hi > eps_lo) || !(eps_lo > 0)) throw std::invalid_argument("bad amplitude range");
    if (count < 2) throw std::invalid_argument("need at least two amplitudes");
    std::vector<double> eps(count);
    for (int i = 0; i < count; ++i)
        eps[i] = eps_hi * std::pow(eps_lo / eps_hi, static_cast<double>(i) / (count - 1));
    return eps;
}

struct SweepPointRecord {
    double eps = 0.0;
    BlowupEstimate est{};
    double horizon_used = 0.0;
    double a_eps = 0.0; // log-corrected scale at this amplitude
    bool reused = false;
};

struct SweepResult {
    Scenario scenario{};
    int n = 0;
    double p = 0.0;
    std::vector<SweepPointRecord> points; // in plan order (decreasing eps)

    long converged_count() const {
        long c = 0;
        for (const auto& pt : points)
            if (pt.est.converged) ++c;
        return c;
    }
};

// Hook for sweep resumption: return true and fill `out` when a finished
// record for this amplitude already exists.
using ResumeLookup = std::function<bool(double eps, SweepPointRecord& out)>;
// Sink invoked once per finished point, in plan order.
using PointSink = std::function<void(const SweepPointRecord&)>;

// Run the per-amplitude refinements in plan order. The stop horizon for
// each amplitude is guessed from the previous point via the predicted
// scaling and doubled until the run actually escapes; doubling the horizon
// never changes an escape time, so the guess only affects cost.
inline SweepResult run_sweep(const SweepPlan& plan, const ResumeLookup& resume = {},
                             const PointSink& sink = {}, std::ostream* log = nullptr) {
    plan.validate();
    const TheoryPrediction th = theory_for(plan.scenario, plan.base.n, plan.base.p);

    SweepResult result;
    result.scenario = plan.scenario;
    result.n = plan.base.n;
    result.p = plan.base.p;

    const double R = plan.base.R();
    double horizon_floor = plan.horizon_base > 0 ? plan.horizon_base : 30.0 * R;
    double prev_eps = 0.0, prev_T = 0.0;

    for (double eps : plan.eps_list) {
        SweepPointRecord rec;
        rec.eps = eps;
        rec.a_eps = a_of_eps(eps);
        if (resume && resume(eps, rec)) {
            rec.reused = true;
            if (log) *log << "eps=" << eps << " reused: T=" << rec.est.extrapolated << "\n";
            if (rec.est.converged && rec.est.extrapolated > 0) {
                prev_eps = eps;
                prev_T = rec.est.extrapolated;
            }
            result.points.push_back(rec);
            if (sink) sink(result.points.back());
            continue;
        }

        double horizon = horizon_floor;
        if (prev_T > 0) {
            const double growth = th.log_corrected
                                      ? a_of_eps(eps) / a_of_eps(prev_eps)
                                      : std::pow(prev_eps / eps, th.kappa);
            horizon = std::max(horizon, 2.0 * prev_T * growth);
        }

        WaveProblem prob = plan.base;
        prob.eps = eps;
        for (int attempt = 0;; ++attempt) {
            prob.grid.t_horizon = horizon;
            rec.est = solve_with_refinement(prob, plan.refine);
            rec.horizon_used = horizon;
            if (rec.est.all_blew_up) break;
            if (attempt >= plan.max_horizon_doublings)
                throw std::runtime_error("no escape before the horizon after repeated doubling");
            horizon *= 2.0;
            if (log) *log << "eps=" << eps << " horizon -> " << horizon << "\n";
        }
        if (rec.est.converged && rec.est.extrapolated > 0) {
            prev_eps = eps;
            prev_T = rec.est.extrapolated;
        }
        if (log)
            *log << "eps=" << eps << " T=" << rec.est.extrapolated
                 << (rec.est.converged ? "" : " (unconverged)") << " steps=" << rec.est.total_steps
                 << "\n";
        result.points.push_back(rec);
        if (sink) sink(result.points.back());
    }

    if (result.converged_count() < 5)
        throw std::runtime_error("fewer than 5 amplitudes converged; sweep cannot support a fit");
    return result;
}

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double theory_slope = 0.0;
    double tol = 0.0;
    bool passed = false;
    int points_used = 0;
};

// Log-log OLS of T against eps over the converged points, with a
// fixed-seed bootstrap interval, judged against the predicted slope at a
// relative tolerance.
inline FitResult fit_power_law(const SweepResult& result, double theory_slope, double tol = 0.15,
                               int resamples = 1000, std::uint64_t seed = 0x5eed5eedULL) {
    std::vector<double> lx, ly;
    for (const auto& pt : result.points) {
        if (!pt.est.converged || !(pt.est.extrapolated > 0)) continue;
        lx.push_back(std::log(pt.eps));
        ly.push_back(std::log(pt.est.extrapolated));
    }
    if (lx.size() < 5) throw std::invalid_argument("fewer than 5 converged points to fit");
    const OlsFit f = ols(lx, ly);
    const BootstrapCI ci = bootstrap_slope_ci(lx, ly, resamples, seed);
    FitResult out;
    out.slope = f.slope;
    out.intercept = f.intercept;
    out.r2 = f.r2;
    out.ci_lo = ci.lo;
    out.ci_hi = ci.hi;
    out.theory_slope = theory_slope;
    out.tol = tol;
    out.points_used = static_cast<int>(lx.size());
    out.passed = std::abs(f.slope - theory_slope) <= tol * std::abs(theory_slope);
    return out;
}

struct RatioReport {
    std::vector<double> eps;    // converged points, in plan order
    std::vector<double> ratios; // T / law(eps)
    double max_over_min = 0.0;
    bool strictly_monotone = false;
    double bound = 0.0;
    double drift_floor = 0.0;
    bool passed = false;
};

// Bounded-ratio test of T against a candidate scale law. A correct law
// keeps the ratio within a modest factor; a wrong one shows a systematic
// monotone drift across the sweep. Both symptoms are checked: the ratio
// spread must stay under `bound`, and a strictly monotone drift larger
// than `drift_floor` is rejected even when it stays under the bound (a
// decade of amplitudes only drifts a slowly-varying correction so far).
template <class Law>
RatioReport check_scaling_ratio(const SweepResult& result, Law law, double bound = 2.5,
                                double drift_floor = 1.25) {
    RatioReport rep;
    rep.bound = bound;
    rep.drift_floor = drift_floor;
    for (const auto& pt : result.points) {
        if (!pt.est.converged || !(pt.est.extrapolated > 0)) continue;
        rep.eps.push_back(pt.eps);
        rep.ratios.push_back(pt.est.extrapolated / law(pt.eps));
    }
    if (rep.ratios.size() < 3) throw std::invalid_argument("too few converged points for ratios");
    double lo = rep.ratios[0], hi = rep.ratios[0];
    bool inc = true, dec = true;
    for (std::size_t i = 0; i < rep.ratios.size(); ++i) {
        lo = std::min(lo, rep.ratios[i]);
        hi = std::max(hi, rep.ratios[i]);
        if (i > 0) {
            inc = inc && rep.ratios[i] > rep.ratios[i - 1];
            dec = dec && rep.ratios[i] < rep.ratios[i - 1];
        }
    }
    rep.max_over_min = hi / lo;
    rep.strictly_monotone = inc || dec;
    rep.passed =
        rep.max_over_min <= bound && !(rep.strictly_monotone && rep.max_over_min >= drift_floor);
    return rep;
}

// Ratio test against the log-corrected planar scale a(eps). The drift floor
// is wider than the generic default: T/a converges only like 1/log(1/eps),
// so even the correct law drifts monotonically by ~1.3x over a decade of
// amplitudes. 1.4 sits above that residual but below the ~1.45 drift a
// plain power law shows against a(eps) on the same decade.
inline RatioReport check_a_scaling(const SweepResult& result, double bound = 2.5,
                                   double drift_floor = 1.4) {
    return check_scaling_ratio(result, [](double e) { return a_of_eps(e); }, bound, drift_floor);
}

} // namespace blowlab
