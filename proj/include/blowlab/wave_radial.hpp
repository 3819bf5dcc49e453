// Explicit leapfrog solver for radially symmetric u_tt = Lap(u) + |u|^p in
// R^n, n >= 2, discretized in finite-volume form.
//
// Cells are centered at r_j = j dx with face areas r^{n-1} evaluated at the
// half-integer radii and cell volumes V_j = (r_{j+1/2}^n - r_{j-1/2}^n)/n.
// The flux form makes the volume-weighted sum of the discrete Laplacian
// telescope to the outermost face, which is zero beyond the support: the
// discrete second difference of F(t) = int u dx then equals the |u|^p
// quadrature identically. The origin cell has no inner face; its update
// reduces to 2n (u_1 - u_0)/dx^2, consistent with the r -> 0 limit n*u_rr.
//
// Gershgorin bounds the spectral radius of the discrete Laplacian by
// 4n/dx^2 (the origin row), giving the stability limit dt <= dx/sqrt(n).

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "blowlab/detail/run_monitor.hpp"
#include "blowlab/wave1d.hpp"
#include "blowlab/wave_types.hpp"

namespace blowlab {

namespace detail {

template <class PowFn>
SimResult solve_radial_impl(const WaveProblem& prob, const SimOptions& opts, PowFn pw) {
    const int n = prob.n;
    const double R = prob.R();
    const double dx = prob.grid.dx;
    const double cfl_limit = 1.0 / std::sqrt(static_cast<double>(n));
    const double cfl = prob.grid.cfl > 0 ? prob.grid.cfl : 0.85 * cfl_limit;
    if (cfl > cfl_limit + 1e-12)
        throw std::invalid_argument("radial scheme is unstable for cfl > 1/sqrt(n)");
    const double dt = cfl * dx;
    const double horizon = prob.grid.t_horizon;

    // sized for the worst case (window growing every step); the monitored
    // window normally stalls near the light cone well inside this
    const double L_needed = R + (horizon / cfl) + 16.0 * dx;
    const double L = std::max(prob.grid.L, L_needed);
    const long J = static_cast<long>(std::ceil(L / dx)) + 1;

    // face / volume geometry
    std::vector<double> c_in(J, 0.0), c_out(J, 0.0), w(J, 0.0);
    const double omega = unit_sphere_area(n);
    {
        auto face = [&](double r) { return std::pow(r, n - 1); };
        auto halfvol = [&](double r) { return std::pow(r, n) / n; };
        for (long j = 0; j < J; ++j) {
            const double r_in = (j == 0) ? 0.0 : (j - 0.5) * dx;
            const double r_out = (j + 0.5) * dx;
            const double V = halfvol(r_out) - halfvol(r_in);
            c_out[j] = face(r_out) / (V * dx);
            c_in[j] = (j == 0) ? 0.0 : face(r_in) / (V * dx);
            w[j] = omega * V;
        }
    }

    std::vector<double> up(J, 0.0), uc(J, 0.0), un(J, 0.0);
    // active window [0, hi]; grows at most one cell per step and stalls
    // where the frontier stays below kTailClip (see wave1d.hpp)
    long hi = std::min(static_cast<long>(std::floor(R / dx)) + 2, J - 2);

    const double dt2 = dt * dt;
    auto lap = [&](const std::vector<double>& u, long j) {
        const double inner = (j == 0) ? 0.0 : c_in[j] * (u[j] - u[j - 1]);
        return c_out[j] * (u[j + 1] - u[j]) - inner;
    };

    // level 0
    for (long j = 0; j <= hi; ++j) up[j] = prob.eps * prob.f.value(j * dx);
    // level 1 by second-order Taylor start
    double F1 = 0, Q1 = 0, S1 = 0;
    for (long j = 0; j <= hi; ++j) {
        const double v =
            up[j] + dt * prob.eps * prob.g.value(j * dx) + 0.5 * dt2 * (lap(up, j) + pw(up[j]));
        uc[j] = v;
        F1 += w[j] * v;
        Q1 += w[j] * pw(v);
        S1 = std::max(S1, std::abs(v));
    }

    RunMonitor mon(prob.caps, opts);
    mon.trace().G = 0.5 * prob.g.mass(n);
    {
        double F0 = 0, Q0 = 0, S0 = 0;
        for (long j = 0; j <= hi; ++j) {
            F0 += w[j] * up[j];
            Q0 += w[j] * pw(up[j]);
            S0 = std::max(S0, std::abs(up[j]));
        }
        mon.trace().F0 = F0;
        mon.trace().Fp0 = prob.eps * prob.g.mass(n);
        mon.on_level(0, 0.0, F0, Q0, S0);
    }

    std::vector<double> snap_times = opts.snapshot_times;
    std::sort(snap_times.begin(), snap_times.end());
    for (double ts : snap_times)
        if (!(ts >= 0) || ts >= horizon)
            throw std::invalid_argument("snapshot times must lie in [0, horizon)");
    std::size_t next_snap = 0;
    std::vector<Snapshot> snaps;
    auto capture = [&](double t_req, double t_level, const std::vector<double>& a,
                       const std::vector<double>& b) {
        const double th = (t_req - t_level) / dt;
        Snapshot s;
        s.t = t_req;
        s.x.reserve(hi + 1);
        s.u.reserve(hi + 1);
        for (long j = 0; j <= hi; ++j) {
            s.x.push_back(j * dx);
            s.u.push_back(a[j] + th * (b[j] - a[j]));
        }
        snaps.push_back(std::move(s));
    };
    while (next_snap < snap_times.size() && snap_times[next_snap] < dt) {
        capture(snap_times[next_snap], 0.0, up, uc);
        ++next_snap;
    }

    SimResult out;
    long m = 1;
    double t = dt;
    bool stop = mon.on_level(1, t, F1, Q1, S1);

    while (!stop && t + dt <= horizon + 0.5 * dt) {
        const long hi_try = std::min(hi + 1, J - 2);
        double F = 0, Q = 0, S = 0;
        for (long j = 0; j <= hi_try; ++j) {
            const double inner = (j == 0) ? 0.0 : c_in[j] * (uc[j] - uc[j - 1]);
            const double v = 2.0 * uc[j] - up[j] +
                             dt2 * (c_out[j] * (uc[j + 1] - uc[j]) - inner + pw(uc[j]));
            un[j] = v;
            F += w[j] * v;
            Q += w[j] * pw(v);
            S = std::max(S, std::abs(v));
        }
        // keep the frontier cell only once it carries weight
        if (hi_try > hi) {
            if (std::abs(un[hi_try]) > kTailClip) {
                hi = hi_try;
            } else {
                F -= w[hi_try] * un[hi_try];
                Q -= w[hi_try] * pw(un[hi_try]);
                un[hi_try] = 0.0;
            }
        }
        while (next_snap < snap_times.size() && snap_times[next_snap] < t + dt) {
            if (snap_times[next_snap] >= t) capture(snap_times[next_snap], t, uc, un);
            ++next_snap;
        }
        up.swap(uc);
        uc.swap(un);
        t += dt;
        ++m;
        stop = mon.on_level(m, t, F, Q, S);
    }
    while (!stop && next_snap < snap_times.size()) {
        // requested time within the trailing half-step: extrapolate
        capture(snap_times[next_snap], t - dt, up, uc);
        ++next_snap;
    }

    mon.finalize(out, m, dt, dx);
    out.snapshots = std::move(snaps);
    return out;
}

} // namespace detail

inline SimResult solve_radial(const WaveProblem& prob, const SimOptions& opts = {}) {
    prob.validate();
    if (prob.n < 2) throw std::invalid_argument("radial solver requires n >= 2");
    if (!prob.source)
        return detail::solve_radial_impl(prob, opts, [](double) { return 0.0; });
    return with_power(prob.p,
                      [&](auto pw) { return detail::solve_radial_impl(prob, opts, pw); });
}

// Dimension-dispatching front end.
inline SimResult solve_wave(const WaveProblem& prob, const SimOptions& opts = {}) {
    return prob.n == 1 ? solve_1d(prob, opts) : solve_radial(prob, opts);
}

} // namespace blowlab
