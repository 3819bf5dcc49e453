#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "blowlab/sweep.hpp"

using namespace blowlab;

namespace {

SweepResult synthetic_sweep(double C, double kappa, int count = 8) {
    SweepResult res;
    res.scenario = Scenario::one_d_g_positive;
    res.n = 1;
    res.p = 2.0;
    for (double eps : log_spaced_descending(0.5, 0.05, count)) {
        SweepPointRecord rec;
        rec.eps = eps;
        rec.a_eps = a_of_eps(eps);
        rec.est.converged = true;
        rec.est.all_blew_up = true;
        rec.est.extrapolated = C * std::pow(eps, -kappa);
        res.points.push_back(rec);
    }
    return res;
}

} // namespace

TEST_CASE("scenario predictions") {
    const TheoryPrediction gen = theory_for(Scenario::general_nd, 3, 2.0);
    CHECK(gen.kappa == Catch::Approx(2.0));
    CHECK_FALSE(gen.log_corrected);
    CHECK(gen.kappa_alt == 0.0);

    CHECK(theory_for(Scenario::one_d_g_positive, 1, 2.0).kappa == Catch::Approx(0.5));
    CHECK(theory_for(Scenario::one_d_g_positive, 1, 3.0).kappa == Catch::Approx(1.0));
    CHECK(theory_for(Scenario::one_d_f_only, 1, 2.0).kappa == Catch::Approx(2.0 / 3.0));

    const TheoryPrediction log2d = theory_for(Scenario::two_d_p2_f_zero, 2, 2.0);
    CHECK(log2d.kappa == Catch::Approx(1.0));
    CHECK(log2d.log_corrected);

    const TheoryPrediction sub2 = theory_for(Scenario::two_d_sub2_f_zero, 2, 1.5);
    CHECK(sub2.kappa == Catch::Approx(1.0 / 3.0));
    CHECK(sub2.kappa_alt == Catch::Approx(6.0 / 17.0));
    CHECK_FALSE(sub2.log_corrected);
}

TEST_CASE("scenario names round-trip") {
    for (Scenario sc : {Scenario::general_nd, Scenario::one_d_g_positive, Scenario::one_d_f_only,
                        Scenario::two_d_p2_f_zero, Scenario::two_d_sub2_f_zero}) {
        CHECK(parse_scenario(scenario_name(sc)) == sc);
    }
    CHECK_THROWS_AS(parse_scenario("no_such_scenario"), std::invalid_argument);
}

TEST_CASE("amplitude ladder generation") {
    const std::vector<double> eps = log_spaced_descending(0.5, 0.05, 8);
    REQUIRE(eps.size() == 8);
    CHECK(eps.front() == Catch::Approx(0.5));
    CHECK(eps.back() == Catch::Approx(0.05));
    for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
        CHECK(eps[i] > eps[i + 1]);
        // log-uniform: constant ratio between neighbors
        CHECK(eps[i + 1] / eps[i] == Catch::Approx(std::pow(0.1, 1.0 / 7.0)));
    }
    CHECK_THROWS_AS(log_spaced_descending(0.05, 0.5, 8), std::invalid_argument);
    CHECK_THROWS_AS(log_spaced_descending(0.5, 0.05, 1), std::invalid_argument);
}

TEST_CASE("power-law fit recovers an exact law") {
    const SweepResult res = synthetic_sweep(7.0, 2.0);
    const FitResult fit = fit_power_law(res, -2.0);
    CHECK(fit.slope == Catch::Approx(-2.0).epsilon(1e-12));
    CHECK(fit.intercept == Catch::Approx(std::log(7.0)).epsilon(1e-12));
    CHECK(fit.r2 == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(fit.passed);
    CHECK(fit.points_used == 8);
    CHECK(fit.ci_lo <= -2.0);
    CHECK(fit.ci_hi >= -2.0);
    CHECK(fit.ci_hi - fit.ci_lo < 1e-9);

    // same data judged against the wrong exponent
    const FitResult wrong = fit_power_law(res, -1.0);
    CHECK_FALSE(wrong.passed);
}

TEST_CASE("fit survives mild multiplicative noise") {
    SweepResult res = synthetic_sweep(3.0, 0.5);
    for (std::size_t i = 0; i < res.points.size(); ++i)
        res.points[i].est.extrapolated *= (i % 2 == 0) ? 1.03 : 0.97;
    const FitResult fit = fit_power_law(res, -0.5);
    CHECK(fit.passed);
    CHECK(std::abs(fit.slope + 0.5) < 0.075);
}

TEST_CASE("fit requires five converged points") {
    SweepResult res = synthetic_sweep(7.0, 2.0, 6);
    res.points[0].est.converged = false;
    res.points[1].est.converged = false;
    CHECK_THROWS_AS(fit_power_law(res, -2.0), std::invalid_argument);
}

TEST_CASE("bounded-ratio law check") {
    const SweepResult res = synthetic_sweep(7.0, 2.0);
    const RatioReport ok =
        check_scaling_ratio(res, [](double e) { return std::pow(e, -2.0); });
    CHECK(ok.passed);
    CHECK(ok.max_over_min == Catch::Approx(1.0).epsilon(1e-12));
    for (double r : ok.ratios) CHECK(r == Catch::Approx(7.0).epsilon(1e-12));

    // ratios against a badly wrong law blow past the bound
    const RatioReport far = check_scaling_ratio(res, [](double e) { return std::pow(e, -0.5); });
    CHECK_FALSE(far.passed);
    CHECK(far.max_over_min > 2.5);
}

TEST_CASE("monotone drift is rejected even inside the bound") {
    SweepResult res = synthetic_sweep(1.0, 0.0, 8);
    for (std::size_t i = 0; i < res.points.size(); ++i)
        res.points[i].est.extrapolated =
            a_of_eps(res.points[i].eps) * (1.0 + 0.5 * static_cast<double>(i) / 7.0);
    const RatioReport drift = check_a_scaling(res);
    CHECK_FALSE(drift.passed);
    CHECK(drift.strictly_monotone);
    CHECK(drift.max_over_min > 1.4);
    CHECK(drift.max_over_min <= 2.5);

    // the same spread without the trend is accepted
    for (std::size_t i = 0; i < res.points.size(); ++i)
        res.points[i].est.extrapolated =
            a_of_eps(res.points[i].eps) * ((i % 2 == 0) ? 1.0 : 1.5);
    const RatioReport wobble = check_a_scaling(res);
    CHECK(wobble.passed);
    CHECK_FALSE(wobble.strictly_monotone);
}

TEST_CASE("a-scale check tolerates the residual drift a power law cannot") {
    // a drift of 1.3x across the sweep: the log-corrected check accepts it
    // (slow-convergence residual), the plain power-law check rejects it.
    SweepResult res = synthetic_sweep(1.0, 0.0, 8);
    for (std::size_t i = 0; i < res.points.size(); ++i) {
        const double trend = 1.0 + 0.3 * static_cast<double>(i) / 7.0;
        res.points[i].est.extrapolated = a_of_eps(res.points[i].eps) * trend;
    }
    CHECK(check_a_scaling(res).passed);

    SweepResult pw = synthetic_sweep(1.0, 0.0, 8);
    for (std::size_t i = 0; i < pw.points.size(); ++i) {
        const double trend = 1.0 + 0.3 * static_cast<double>(i) / 7.0;
        pw.points[i].est.extrapolated = std::pow(pw.points[i].eps, -1.0) * trend;
    }
    const RatioReport gen = check_scaling_ratio(pw, [](double e) { return 1.0 / e; });
    CHECK_FALSE(gen.passed);
    CHECK(gen.strictly_monotone);
}

TEST_CASE("plan validation") {
    SweepPlan plan;
    plan.scenario = Scenario::one_d_g_positive;
    plan.base = scenario_problem(Scenario::one_d_g_positive, 1, 2.0);
    plan.eps_list = log_spaced_descending(0.5, 0.05, 5);
    CHECK_NOTHROW(plan.validate());

    SweepPlan few = plan;
    few.eps_list = {0.5, 0.3, 0.1, 0.05};
    CHECK_THROWS_AS(few.validate(), std::invalid_argument);

    SweepPlan rising = plan;
    rising.eps_list = {0.05, 0.1, 0.2, 0.3, 0.5};
    CHECK_THROWS_AS(rising.validate(), std::invalid_argument);

    SweepPlan narrow = plan;
    narrow.eps_list = log_spaced_descending(0.5, 0.1, 5);
    CHECK_THROWS_AS(narrow.validate(), std::invalid_argument);

    SweepPlan wrongdim = plan;
    wrongdim.base = scenario_problem(Scenario::one_d_g_positive, 1, 2.0);
    wrongdim.base.n = 2;
    wrongdim.base.g = RadialProfile::bump(2, 1.0);
    CHECK_THROWS_AS(wrongdim.validate(), std::invalid_argument);

    SweepPlan nog = plan;
    nog.scenario = Scenario::general_nd;
    nog.base = scenario_problem(Scenario::general_nd, 3, 2.0);
    nog.base.g = RadialProfile::zero();
    nog.base.f = RadialProfile::bump(3, 1.0);
    CHECK_THROWS_AS(nog.validate(), std::invalid_argument);

    SweepPlan super = plan;
    super.scenario = Scenario::general_nd;
    super.base = scenario_problem(Scenario::general_nd, 3, 4.0); // gamma < 0
    CHECK_THROWS_AS(super.validate(), std::invalid_argument);

    SweepPlan p2only = plan;
    p2only.scenario = Scenario::two_d_p2_f_zero;
    p2only.base = scenario_problem(Scenario::two_d_p2_f_zero, 2, 2.5);
    CHECK_THROWS_AS(p2only.validate(), std::invalid_argument);

    SweepPlan sub2 = plan;
    sub2.scenario = Scenario::two_d_sub2_f_zero;
    sub2.base = scenario_problem(Scenario::two_d_sub2_f_zero, 2, 2.0);
    CHECK_THROWS_AS(sub2.validate(), std::invalid_argument);

    SweepPlan fonly = plan;
    fonly.scenario = Scenario::one_d_f_only;
    fonly.base = scenario_problem(Scenario::one_d_f_only, 1, 2.0);
    CHECK_NOTHROW(fonly.validate());
    fonly.base.g = RadialProfile::bump(1, 1.0);
    CHECK_THROWS_AS(fonly.validate(), std::invalid_argument);
}

TEST_CASE("scenario default data") {
    const WaveProblem a = scenario_problem(Scenario::one_d_f_only, 1, 2.0);
    CHECK(a.f.kind == RadialProfile::Kind::bump);
    CHECK(a.g.kind == RadialProfile::Kind::zero);
    const WaveProblem b = scenario_problem(Scenario::general_nd, 3, 2.0, 1.5);
    CHECK(b.f.kind == RadialProfile::Kind::zero);
    CHECK(b.g.kind == RadialProfile::Kind::bump);
    CHECK(b.R() == Catch::Approx(1.5));
    CHECK(b.g.mass(3) == Catch::Approx(1.0));
}

TEST_CASE("small line sweep runs, resumes, and repeats exactly") {
    SweepPlan plan;
    plan.scenario = Scenario::one_d_g_positive;
    plan.base = scenario_problem(Scenario::one_d_g_positive, 1, 3.0);
    plan.base.grid.dx = 0.1;
    plan.eps_list = log_spaced_descending(0.6, 0.06, 5);
    plan.refine.levels = 3;
    plan.refine.rel_tol = 0.05;

    std::ostringstream log;
    const SweepResult first = run_sweep(plan, {}, {}, &log);
    REQUIRE(first.points.size() == 5);
    CHECK(first.converged_count() == 5);
    CHECK(log.str().find("eps=") != std::string::npos);
    for (const auto& pt : first.points) {
        CHECK(pt.est.all_blew_up);
        CHECK(pt.horizon_used > 0.0);
        CHECK(pt.a_eps == Catch::Approx(a_of_eps(pt.eps)));
        CHECK_FALSE(pt.reused);
    }
    // escape time grows as the amplitude shrinks
    for (std::size_t i = 0; i + 1 < first.points.size(); ++i)
        CHECK(first.points[i].est.extrapolated < first.points[i + 1].est.extrapolated);

    // bitwise repeatability
    const SweepResult again = run_sweep(plan);
    for (std::size_t i = 0; i < first.points.size(); ++i) {
        CHECK(again.points[i].est.extrapolated == first.points[i].est.extrapolated);
        CHECK(again.points[i].est.T_hi == first.points[i].est.T_hi);
    }

    // resume: two precomputed points are reused verbatim, the rest recomputed
    std::map<double, SweepPointRecord> cache;
    cache[first.points[1].eps] = first.points[1];
    cache[first.points[3].eps] = first.points[3];
    std::vector<double> sunk;
    const SweepResult resumed = run_sweep(
        plan,
        [&](double eps, SweepPointRecord& out) {
            auto it = cache.find(eps);
            if (it == cache.end()) return false;
            out = it->second;
            return true;
        },
        [&](const SweepPointRecord& rec) { sunk.push_back(rec.eps); });
    REQUIRE(resumed.points.size() == 5);
    CHECK(resumed.points[1].reused);
    CHECK(resumed.points[3].reused);
    CHECK_FALSE(resumed.points[0].reused);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(resumed.points[i].est.extrapolated ==
              first.points[i].est.extrapolated);
        CHECK(sunk[i] == plan.eps_list[i]);
    }

    // the machinery feeds the fit end to end
    const FitResult fit = fit_power_law(first, -1.0, 0.35);
    CHECK(fit.points_used == 5);
    CHECK(fit.slope < -0.5);
}
