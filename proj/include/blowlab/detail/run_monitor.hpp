// Per-step bookkeeping shared by the wave solvers: trace recording and
// escape-level crossing detection. Kept separate so the two solvers cannot
// drift apart in how they report results.

#pragma once

#include <cmath>

#include "blowlab/wave_types.hpp"

namespace blowlab::detail {

class RunMonitor {
  public:
    RunMonitor(const Caps& caps, const SimOptions& opts) : opts_(opts) {
        cap_.level = caps.U_max;
        cap2_.level = 2.0 * caps.U_max;
        stop_.level = caps.stop_factor * caps.U_max;
    }

    // Feed diagnostics of one completed time level. Returns true when the
    // run must stop (escape past the stop level, or non-finite values).
    bool on_level(long m, double t, double F, double Q, double sup) {
        if (opts_.record_trace && (m % opts_.record_stride == 0)) {
            trace_.times.push_back(t);
            trace_.F.push_back(F);
            trace_.Fpp.push_back(Q);
            trace_.sup_u.push_back(sup);
        }
        const bool finite = std::isfinite(sup);
        mark(cap_, t, sup, finite);
        mark(cap2_, t, sup, finite);
        mark(stop_, t, sup, finite);
        prev_t_ = t;
        last_sup_ = sup;
        return stop_.hit;
    }

    void finalize(SimResult& out, long steps, double dt, double dx) {
        out.status = cap_.hit ? SimStatus::blown_up : SimStatus::horizon_reached;
        out.cross_cap = cap_;
        out.cross_2cap = cap2_;
        out.cross_stop = stop_;
        out.sup_final = last_sup_;
        out.steps = steps;
        out.dt = dt;
        out.dx = dx;
        trace_.dt = dt;
        trace_.dx = dx;
        out.trace = std::move(trace_);
    }

    FunctionalTrace& trace() { return trace_; }

  private:
    void mark(CrossingBracket& b, double t, double sup, bool finite) {
        if (b.hit) return;
        if (sup > b.level || !finite) {
            b.hit = true;
            b.t_lo = prev_t_;
            b.t_hi = t;
        }
    }

    SimOptions opts_;
    FunctionalTrace trace_;
    CrossingBracket cap_, cap2_, stop_;
    double prev_t_ = 0.0;
    double last_sup_ = 0.0;
};

} // namespace blowlab::detail
