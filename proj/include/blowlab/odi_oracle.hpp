// Numerical oracle for ordinary differential inequalities of the form
//
//     F'' >= B (t+R)^{-q} |F|^p.
//
// The extremal trajectory (inequality replaced by equality) is integrated
// with an adaptive embedded Runge-Kutta pair. Any admissible F majorizes
// the extremal solution pointwise, so the extremal blow-up time brackets
// the worst case: a certificate whose bound beats the extremal escape time
// beats every admissible trajectory's escape time.
//
// "Blow-up" is witnessed operationally: the time at which F crosses a very
// large threshold. Two thresholds a decade apart give a bracket
// [T_blow_lo, T_blow_hi]; for genuinely singular trajectories the bracket
// is tight because F covers the last decade in a vanishing sliver of time.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "blowlab/ode_integrator.hpp"
#include "blowlab/odi.hpp"

namespace blowlab {

// Piecewise cubic Hermite record of an accepted-step trajectory.
// State component 0 is F, component 1 is F'.
class OdiTrajectory {
  public:
    struct Sample {
        double t;
        double F;
        double Fp;
        double Fpp;
    };

    void push(double t, double F, double Fp, double Fpp) { nodes_.push_back({t, F, Fp, Fpp}); }
    bool empty() const { return nodes_.empty(); }
    std::size_t size() const { return nodes_.size(); }
    const Sample& front() const { return nodes_.front(); }
    const Sample& back() const { return nodes_.back(); }
    const std::vector<Sample>& nodes() const { return nodes_; }

    // F(t) by cubic Hermite interpolation between the bracketing nodes.
    double eval_F(double t) const {
        if (nodes_.size() < 2 || t <= nodes_.front().t) return nodes_.front().F;
        if (t >= nodes_.back().t) return nodes_.back().F;
        std::size_t lo = 0, hi = nodes_.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (nodes_[mid].t <= t) lo = mid; else hi = mid;
        }
        const Sample& s0 = nodes_[lo];
        const Sample& s1 = nodes_[hi];
        const double h = s1.t - s0.t;
        const double th = (t - s0.t) / h;
        const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
        const double h10 = th * (1 - th) * (1 - th);
        const double h01 = th * th * (3 - 2 * th);
        const double h11 = th * th * (th - 1);
        return h00 * s0.F + h10 * h * s0.Fp + h01 * s1.F + h11 * h * s1.Fp;
    }

  private:
    std::vector<Sample> nodes_;
};

enum class OdeStatus { blown_up, horizon_reached, step_collapsed };

inline const char* ode_status_name(OdeStatus s) {
    switch (s) {
        case OdeStatus::blown_up: return "blown_up";
        case OdeStatus::horizon_reached: return "horizon_reached";
        case OdeStatus::step_collapsed: return "step_collapsed";
    }
    return "?";
}

struct OracleOptions {
    double F_lo = 1e8;       // first escape threshold
    double F_hi = 1e9;       // second escape threshold
    double t_horizon = 1e6;  // give up beyond this time
    // The escape thresholds are raised (keeping their ratio) until the
    // bracket is this tight relative to T_blow_lo. Near p = 1 the tail
    // time above a fixed threshold scales like F^{-(p-1)/2}, so fixed
    // thresholds alone cannot promise a uniform relative width.
    double bracket_rel_tol = 1e-3;
    std::size_t growth_samples = 1000;
    StepControl control{};
};

struct OdeBlowupResult {
    OdeStatus status = OdeStatus::horizon_reached;
    double T_blow_lo = 0.0; // time F first reaches F_lo
    double T_blow_hi = 0.0; // time F first reaches F_hi
    bool growth_hypothesis_ok = false;
    double growth_margin = 0.0; // min over samples of F(t)/(A t^a), 0 if unchecked
    OdiTrajectory trajectory;
};

// Integrate F'' = B (t+R)^{-q} |F|^p from (F(0), F'(0)) until F crosses
// opts.F_hi, recording the trajectory and the two threshold crossings.
// Along the way, check the lemma growth hypothesis F(t) >= A t^a on
// log-uniform samples of [T0, T_blow_lo].
inline OdeBlowupResult integrate_extremal(const OdiProblem& prob, const OracleOptions& opts = {}) {
    prob.validate();
    if (!(opts.F_lo > 0) || !(opts.F_hi > opts.F_lo))
        throw std::invalid_argument("oracle thresholds must satisfy 0 < F_lo < F_hi");

    const double p = prob.p, q = prob.q, B = prob.B, R = prob.R;
    auto rhs = [p, q, B, R](double t, const StateVec<2>& y) {
        return StateVec<2>{y[1], B * std::pow(t + R, -q) * std::pow(std::abs(y[0]), p)};
    };

    DormandPrince5<2, decltype(rhs)> integ(rhs, opts.control);
    using Node = typename DormandPrince5<2, decltype(rhs)>::Node;

    Node node;
    node.t = 0.0;
    node.y = {prob.F0, prob.F0p};
    node.f = rhs(node.t, node.y);

    std::vector<Node> path;
    path.push_back(node);

    OdeBlowupResult out;
    auto record = [&path, &out](std::size_t from) {
        for (std::size_t i = from; i < path.size(); ++i)
            out.trajectory.push(path[i].t, path[i].y[0], path[i].y[1], path[i].f[1]);
    };

    DriveOutcome d1 = integ.drive_to_threshold(node, opts.t_horizon, 0, opts.F_lo, &path);
    if (d1 != DriveOutcome::event) {
        record(0);
        out.status = (d1 == DriveOutcome::horizon) ? OdeStatus::horizon_reached : OdeStatus::step_collapsed;
        return out;
    }
    out.T_blow_lo = node.t;

    DriveOutcome d2 = integ.drive_to_threshold(node, opts.t_horizon, 0, opts.F_hi, &path);
    if (d2 != DriveOutcome::event) {
        record(0);
        out.status = (d2 == DriveOutcome::horizon) ? OdeStatus::horizon_reached : OdeStatus::step_collapsed;
        return out;
    }
    out.T_blow_hi = node.t;
    out.status = OdeStatus::blown_up;

    // Escalate the thresholds until the bracket is tight. Raising them only
    // moves both reach times toward the blow-up time (the certificate check
    // against T_blow_hi gets harder, never easier). Stop before |F|^p can
    // overflow; if a drive fails the last complete bracket stands.
    const double level_cap = std::pow(10.0, 280.0 / prob.p);
    double level_lo = opts.F_lo, level_hi = opts.F_hi;
    while (out.T_blow_hi - out.T_blow_lo > opts.bracket_rel_tol * out.T_blow_lo &&
           level_hi * 1e3 < level_cap) {
        level_lo *= 1e3;
        level_hi *= 1e3;
        Node save = node;
        if (integ.drive_to_threshold(node, opts.t_horizon, 0, level_lo, &path) !=
            DriveOutcome::event) {
            node = save;
            break;
        }
        const double t_lo = node.t;
        if (integ.drive_to_threshold(node, opts.t_horizon, 0, level_hi, &path) !=
            DriveOutcome::event) {
            node = save;
            break;
        }
        out.T_blow_lo = t_lo;
        out.T_blow_hi = node.t;
    }
    record(0);

    // Growth hypothesis: F(t) >= A t^a sampled log-uniformly on [T0, T_blow_lo].
    if (prob.T0 < out.T_blow_lo) {
        const std::size_t K = std::max<std::size_t>(opts.growth_samples, 2);
        const double llo = std::log(prob.T0), lhi = std::log(out.T_blow_lo);
        double margin = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < K; ++k) {
            const double t = std::exp(llo + (lhi - llo) * static_cast<double>(k) / static_cast<double>(K - 1));
            const double need = prob.A * std::pow(t, prob.a);
            margin = std::min(margin, out.trajectory.eval_F(t) / need);
        }
        out.growth_margin = margin;
        out.growth_hypothesis_ok = margin >= 1.0;
    }
    return out;
}

// First time the extremal trajectory doubles its initial value. Used to
// instantiate the second lemma's t0 hypothesis on concrete problems.
inline double find_doubling_time(const OdiProblem& prob, const OracleOptions& opts = {}) {
    prob.validate();
    if (!(prob.F0 > 0)) throw std::invalid_argument("doubling time needs F(0) > 0");
    const double p = prob.p, q = prob.q, B = prob.B, R = prob.R;
    auto rhs = [p, q, B, R](double t, const StateVec<2>& y) {
        return StateVec<2>{y[1], B * std::pow(t + R, -q) * std::pow(std::abs(y[0]), p)};
    };
    DormandPrince5<2, decltype(rhs)> integ(rhs, opts.control);
    typename DormandPrince5<2, decltype(rhs)>::Node node;
    node.t = 0.0;
    node.y = {prob.F0, prob.F0p};
    node.f = rhs(node.t, node.y);
    DriveOutcome d = integ.drive_to_threshold(node, opts.t_horizon, 0, 2.0 * prob.F0, nullptr);
    if (d != DriveOutcome::event) throw std::runtime_error("doubling not reached before horizon");
    return node.t;
}

enum class Verdict { pass, fail, vacuous };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "PASS";
        case Verdict::fail: return "FAIL";
        case Verdict::vacuous: return "VACUOUS";
    }
    return "?";
}

struct VerificationReport {
    Verdict verdict = Verdict::vacuous;
    bool hypothesis_ok = false;        // certificate-side threshold condition
    bool growth_hypothesis_ok = false; // oracle-side lower-bound condition
    bool blown_up = false;
    double bound = 0.0;
    double T_blow_lo = 0.0;
    double T_blow_hi = 0.0;
    double slack = 0.0; // bound - T_blow_hi when both defined
};

// Compare a certificate against the oracle result for the same problem.
// The certificate promises: IF the hypotheses hold THEN blow-up occurs
// before `bound`. Hypotheses failing on either side makes the promise
// vacuous, not wrong.
inline VerificationReport verify_certificate(const KatoCertificate& cert, const OdiProblem& prob,
                                             const OdeBlowupResult& oracle) {
    if (cert.problem_id != prob.fingerprint())
        throw std::invalid_argument("certificate was issued for a different problem");

    VerificationReport rep;
    rep.hypothesis_ok = cert.hypothesis_ok;
    rep.growth_hypothesis_ok = oracle.growth_hypothesis_ok;
    rep.blown_up = oracle.status == OdeStatus::blown_up;
    rep.bound = cert.bound;
    rep.T_blow_lo = oracle.T_blow_lo;
    rep.T_blow_hi = oracle.T_blow_hi;

    if (!cert.hypothesis_ok || !oracle.growth_hypothesis_ok) {
        rep.verdict = Verdict::vacuous;
        return rep;
    }
    if (rep.blown_up && oracle.T_blow_hi < cert.bound) {
        rep.verdict = Verdict::pass;
        rep.slack = cert.bound - oracle.T_blow_hi;
        return rep;
    }
    rep.verdict = Verdict::fail;
    if (rep.blown_up) rep.slack = cert.bound - oracle.T_blow_hi;
    return rep;
}

} // namespace blowlab
