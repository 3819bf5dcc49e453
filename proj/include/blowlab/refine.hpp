// Grid-refinement harness for the numerical lifespan.
//
// The escape time T(dx) is recomputed on dx, dx/2, dx/4, ... The pairwise
// differences expose the observed convergence order
//     p_obs = log2((T1 - T2) / (T2 - T3)),
// and the last two levels agreeing within a relative tolerance marks the
// estimate converged. The extrapolated value removes the leading error
// term using the observed order when it is credible, and falls back to the
// finest level otherwise.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "blowlab/wave1d.hpp"
#include "blowlab/wave_radial.hpp"
#include "blowlab/wave_types.hpp"

namespace blowlab {

struct BlowupEstimate {
    double T_lo = 0.0; // escape bracket on the finest grid
    double T_hi = 0.0;
    std::vector<std::pair<double, double>> refinement; // (dx, T(dx)) for completed levels
    double extrapolated = 0.0;
    bool converged = false;
    double p_obs = std::numeric_limits<double>::quiet_NaN();
    bool all_blew_up = false;
    long total_steps = 0;
};

struct RefineOptions {
    int levels = 3;
    double rel_tol = 0.02; // last two levels must agree to this
};

inline BlowupEstimate solve_with_refinement(WaveProblem prob, const RefineOptions& opts = {}) {
    if (opts.levels < 2) throw std::invalid_argument("refinement needs at least two levels");
    SimOptions sim;
    sim.record_trace = false;

    BlowupEstimate est;
    est.all_blew_up = true;
    std::vector<double> T;
    for (int lvl = 0; lvl < opts.levels; ++lvl) {
        SimResult res = solve_wave(prob, sim);
        est.total_steps += res.steps;
        if (res.status != SimStatus::blown_up) {
            est.all_blew_up = false;
            break;
        }
        T.push_back(res.T_escape());
        est.refinement.emplace_back(prob.grid.dx, res.T_escape());
        est.T_lo = res.cross_cap.t_lo;
        est.T_hi = res.cross_cap.t_hi;
        prob.grid.dx *= 0.5;
    }
    if (!est.all_blew_up || T.size() < 2) {
        est.extrapolated = T.empty() ? 0.0 : T.back();
        return est;
    }

    const std::size_t k = T.size();
    const double d_last = T[k - 1] - T[k - 2];
    est.converged = std::abs(d_last) / std::abs(T[k - 1]) < opts.rel_tol;
    est.extrapolated = T[k - 1];
    if (k >= 3) {
        const double d_prev = T[k - 2] - T[k - 3];
        if (d_last != 0.0 && d_prev / d_last > 0.0) {
            est.p_obs = std::log2(d_prev / d_last);
            if (est.p_obs > 0.2 && est.p_obs < 5.0)
                est.extrapolated = T[k - 1] + d_last / (std::pow(2.0, est.p_obs) - 1.0);
        } else if (d_last == 0.0) {
            est.p_obs = std::numeric_limits<double>::infinity();
        }
    }
    return est;
}

} // namespace blowlab
