// Adaptive Dormand-Prince 5(4) integrator for small fixed-size systems.
//
// Classic embedded pair with elementary step-size control. Geared toward
// trajectories that reach a finite-time singularity: the controller keeps
// shrinking the step as the solution stiffens, and the driver exposes an
// upward threshold event on one component, localized inside the step by
// cubic Hermite interpolation.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace blowlab {

template <std::size_t N>
using StateVec = std::array<double, N>;

struct StepControl {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_init = 1e-4;
    double h_min_rel = 1e-15; // floor relative to |t| + 1
    double safety = 0.9;
    double shrink_limit = 0.2;
    double grow_limit = 5.0;
    long max_steps = 5'000'000;
};

enum class DriveOutcome { event, horizon, step_collapse, max_steps };

template <std::size_t N, typename Rhs>
class DormandPrince5 {
  public:
    explicit DormandPrince5(Rhs rhs, StepControl ctl = {}) : rhs_(std::move(rhs)), ctl_(ctl) {}

    struct StepResult {
        bool accepted = false;
        double error = 0.0;
        double h_next = 0.0;
        StateVec<N> y_new{};
        StateVec<N> f_new{}; // FSAL derivative at the new point
    };

    // One trial step of size h from (t, y) with derivative f = rhs(t, y).
    StepResult try_step(double t, const StateVec<N>& y, const StateVec<N>& f, double h) const {
        std::array<StateVec<N>, 7> k;
        k[0] = f;
        StateVec<N> tmp;
        for (int stage = 1; stage < 7; ++stage) {
            for (std::size_t i = 0; i < N; ++i) {
                double acc = 0.0;
                for (int j = 0; j < stage; ++j) acc += A[stage][j] * k[j][i];
                tmp[i] = y[i] + h * acc;
            }
            k[stage] = rhs_(t + C[stage] * h, tmp);
        }
        StepResult out;
        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double y5 = 0.0, ed = 0.0;
            for (int j = 0; j < 7; ++j) {
                y5 += B5[j] * k[j][i];
                ed += E[j] * k[j][i];
            }
            out.y_new[i] = y[i] + h * y5;
            const double sc = ctl_.atol + ctl_.rtol * std::max(std::abs(y[i]), std::abs(out.y_new[i]));
            err = std::max(err, std::abs(h * ed) / sc);
        }
        out.error = err;
        out.accepted = err <= 1.0 && std::isfinite(err);
        double fac = ctl_.safety * std::pow(std::max(err, 1e-30), -0.2);
        fac = std::clamp(fac, ctl_.shrink_limit, ctl_.grow_limit);
        if (!std::isfinite(err)) fac = ctl_.shrink_limit;
        out.h_next = h * fac;
        out.f_new = k[6]; // stage 7 is evaluated at (t+h, y_new)
        return out;
    }

    struct Node {
        double t;
        StateVec<N> y;
        StateVec<N> f;
    };

    // Advance until component `comp` first reaches `threshold` from below,
    // t reaches `t_end`, or the step collapses. Appends accepted nodes to
    // `path` (which must contain the initial node already if a contiguous
    // record is wanted).
    DriveOutcome drive_to_threshold(Node& node, double t_end, std::size_t comp, double threshold,
                                    std::vector<Node>* path) {
        double h = ctl_.h_init;
        for (long step = 0; step < ctl_.max_steps; ++step) {
            if (node.y[comp] >= threshold) return DriveOutcome::event;
            if (node.t >= t_end) return DriveOutcome::horizon;
            const double h_floor = ctl_.h_min_rel * (std::abs(node.t) + 1.0);
            if (h < h_floor) return DriveOutcome::step_collapse;
            h = std::min(h, t_end - node.t);
            h = std::max(h, h_floor);
            StepResult r = try_step(node.t, node.y, node.f, h);
            if (!r.accepted) {
                h = r.h_next;
                continue;
            }
            if (r.y_new[comp] >= threshold && std::isfinite(r.y_new[comp])) {
                // localize the upward crossing inside [t, t+h]
                const double tc = locate_crossing(node, h, r, comp, threshold);
                Node hit;
                hit.t = tc;
                hit.y = hermite(node, h, r, tc);
                hit.f = rhs_(tc, hit.y);
                node = hit;
                if (path) path->push_back(node);
                return DriveOutcome::event;
            }
            if (!std::isfinite(r.y_new[comp])) { // overshoot past representable range
                h *= 0.25;
                continue;
            }
            node.t += h;
            node.y = r.y_new;
            node.f = r.f_new;
            if (path) path->push_back(node);
            h = r.h_next;
        }
        return DriveOutcome::max_steps;
    }

    // Cubic Hermite value of the solution inside an accepted step.
    StateVec<N> hermite(const Node& from, double h, const StepResult& r, double t) const {
        const double th = (t - from.t) / h;
        const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
        const double h10 = th * (1 - th) * (1 - th);
        const double h01 = th * th * (3 - 2 * th);
        const double h11 = th * th * (th - 1);
        StateVec<N> y;
        for (std::size_t i = 0; i < N; ++i)
            y[i] = h00 * from.y[i] + h10 * h * from.f[i] + h01 * r.y_new[i] + h11 * h * r.f_new[i];
        return y;
    }

  private:
    double locate_crossing(const Node& from, double h, const StepResult& r, std::size_t comp,
                           double threshold) const {
        double lo = from.t, hi = from.t + h;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (hermite(from, h, r, mid)[comp] >= threshold) hi = mid; else lo = mid;
        }
        return hi;
    }

    Rhs rhs_;
    StepControl ctl_;

    // Dormand-Prince 5(4) tableau
    static constexpr double C[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
    static constexpr double A[7][6] = {
        {0, 0, 0, 0, 0, 0},
        {1.0 / 5, 0, 0, 0, 0, 0},
        {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
        {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
        {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
    static constexpr double B5[7] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0};
    static constexpr double B4[7] = {5179.0 / 57600, 0,           7571.0 / 16695, 393.0 / 640,
                                     -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
    static constexpr double E[7] = {B5[0] - B4[0], B5[1] - B4[1], B5[2] - B4[2], B5[3] - B4[3],
                                    B5[4] - B4[4], B5[5] - B4[5], B5[6] - B4[6]};
};

} // namespace blowlab
