// Randomized admissible problems for the certificate pipeline.
//
// A raw parameter draw almost never satisfies both certificate hypotheses,
// so the sampler works backwards from the extremal trajectory: draw the
// shape (p, a, q, B, R, data), integrate once, then pick (T0, A) so that
// the growth lower bound holds with a 10% margin on [T0, T_blow_lo] and
// the amplitude threshold condition holds at that T0. Shapes that admit no
// such pair are discarded.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "blowlab/odi.hpp"
#include "blowlab/odi_oracle.hpp"

namespace blowlab::testing {

class ShapeSampler {
  public:
    explicit ShapeSampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    bool coin(double prob_true) { return uniform(0.0, 1.0) < prob_true; }

    // One shape draw with M >= 0.1; (A, T0) are placeholders.
    std::optional<OdiProblem> draw_shape() {
        OdiProblem prob;
        prob.p = uniform(1.3, 3.0);
        prob.a = uniform(0.4, 2.5);
        const double q_max = std::min(3.0, (prob.p - 1.0) * prob.a + 2.0 - 0.2);
        if (q_max < 0.1) return std::nullopt;
        prob.q = uniform(0.1, q_max);
        prob.B = log_uniform(0.05, 5.0);
        prob.R = uniform(0.3, 3.0);
        prob.T0 = 1.0;
        prob.A = 1.0;
        if (coin(0.3)) {
            prob.F0 = uniform(0.2, 2.0);
            prob.F0p = 0.0; // second-lemma mode; t0 instantiated later
        } else {
            prob.F0 = coin(0.4) ? 0.0 : uniform(0.0, 2.0);
            prob.F0p = uniform(0.1, 3.0);
        }
        return prob;
    }

    std::mt19937_64& rng() { return rng_; }

  private:
    std::mt19937_64 rng_;
};

// Complete a shape into a problem whose certificate hypotheses both hold,
// or report that the shape admits none.
inline std::optional<OdiProblem> instantiate_admissible(OdiProblem prob,
                                                        const OracleOptions& opts_in = {}) {
    OracleOptions opts = opts_in;
    opts.t_horizon = std::min(opts.t_horizon, 1e4);

    if (!(odi_exponent_M(prob.p, prob.a, prob.q) > 0.05)) return std::nullopt;
    if (prob.F0p == 0.0) {
        if (!(prob.F0 > 0)) return std::nullopt;
        prob.t0 = 1.0; // placeholder so validate() accepts the mode
        try {
            prob.t0 = find_doubling_time(prob, opts);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    const OdeBlowupResult ode = integrate_extremal(prob, opts);
    if (ode.status != OdeStatus::blown_up) return std::nullopt;
    const double T_lo = ode.T_blow_lo;

    const double C0 = c0_of_delta(
        choose_delta(prob.p, prob.a, prob.q, prob.B,
                     odi_exponent_M(prob.p, prob.a, prob.q)),
        prob.p, prob.a, prob.q, prob.B, odi_exponent_M(prob.p, prob.a, prob.q));
    const double M = odi_exponent_M(prob.p, prob.a, prob.q);
    const double ref_base =
        prob.lemma2_mode() ? std::max(*prob.t0, prob.R)
                           : std::max(prob.F0 > 0 ? prob.F0 / prob.F0p : 0.0, prob.R);

    // ratio samples and suffix infimum of F(t)/t^a over candidate windows
    const int K = 600;
    const double scan_lo = std::min(0.1, 0.05 * T_lo);
    const double scan_hi = 0.8 * T_lo;
    if (!(scan_hi > scan_lo)) return std::nullopt;
    std::vector<double> ts(K), suffix(K);
    for (int k = 0; k < K; ++k) {
        ts[k] = scan_lo * std::pow(scan_hi / scan_lo, static_cast<double>(k) / (K - 1));
        suffix[k] = ode.trajectory.eval_F(ts[k]) / std::pow(ts[k], prob.a);
    }
    // extend the window tail up to T_lo so the infimum covers [T0, T_lo]
    double tail = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 60; ++k) {
        const double t = scan_hi * std::pow(T_lo / scan_hi, static_cast<double>(k) / 59.0);
        tail = std::min(tail, ode.trajectory.eval_F(t) / std::pow(t, prob.a));
    }
    for (int k = K - 1; k >= 0; --k) {
        tail = std::min(tail, suffix[k]);
        suffix[k] = tail;
    }

    for (int k = 0; k < K; ++k) {
        const double A = 0.9 * suffix[k];
        if (!(A > 0) || !std::isfinite(A)) continue;
        const double T_ref = std::max(ts[k], ref_base);
        if (T_ref >= C0 * std::pow(A, -(prob.p - 1.0) / (2.0 * M))) {
            prob.T0 = ts[k];
            prob.A = A;
            return prob;
        }
    }
    return std::nullopt;
}

} // namespace blowlab::testing
