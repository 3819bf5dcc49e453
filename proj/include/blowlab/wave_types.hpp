// Shared types for the nonlinear wave solvers.
//
// The solvers integrate u_tt = Lap(u) + |u|^p with compactly supported data
// u(0) = eps*f, u_t(0) = eps*g. Both follow the same protocol: explicit
// leapfrog stepping, per-step scalar diagnostics (the functional F = int u,
// its source quadrature, the sup norm), escape-level crossings of sup|u|,
// and optional full-field snapshots at requested times.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "blowlab/profiles.hpp"

namespace blowlab {

struct Grid {
    double dx = 0.05;
    double cfl = 0.0;       // Courant ratio dt/dx; 0 = solver default
    double t_horizon = 50;  // inconclusive-stop time
    double L = 0.0;         // domain half-length / radius; 0 = auto from horizon
};

struct Caps {
    double U_max = 1e6;        // escape threshold on sup|u|
    double stop_factor = 10.0; // integrate on until sup|u| >= stop_factor * U_max
};

struct WaveProblem {
    int n = 1;
    double p = 2.0;
    double eps = 0.1;
    bool source = true; // false: drop |u|^p and solve the linear wave equation
    RadialProfile f = RadialProfile::zero();
    RadialProfile g = RadialProfile::bump(1, 1.0);
    Grid grid{};
    Caps caps{};

    double R() const { return std::max(f.R, g.R); }

    void validate() const {
        if (n < 1) throw std::invalid_argument("dimension must be >= 1");
        if (!(p > 1.0)) throw std::invalid_argument("power must exceed 1");
        if (!(eps >= 0.0)) throw std::invalid_argument("amplitude must be nonnegative");
        if (!(grid.dx > 0)) throw std::invalid_argument("dx must be positive");
        if (!(grid.t_horizon > 0)) throw std::invalid_argument("horizon must be positive");
        if (!(caps.U_max > 0)) throw std::invalid_argument("escape threshold must be positive");
        if (!(caps.stop_factor >= 1.0)) throw std::invalid_argument("stop factor must be >= 1");
        if (grid.L > 0 && grid.L < grid.t_horizon + R())
            throw std::invalid_argument("domain must contain the light cone of the data");
    }
};

// Per-step scalar diagnostics. Fpp holds the quadrature of int |u|^p dx,
// which the scheme makes identically equal to the discrete second
// difference of F (both sides telescope over the same stencil).
struct FunctionalTrace {
    std::vector<double> times;
    std::vector<double> F;
    std::vector<double> Fpp;
    std::vector<double> sup_u;
    double G = 0.0;   // (1/2) * int g dx of the unscaled velocity profile
    double F0 = 0.0;  // quadrature of eps * f at t = 0
    double Fp0 = 0.0; // quadrature of eps * g at t = 0
    double dt = 0.0;
    double dx = 0.0;
};

// Bracket around an upward crossing of sup|u| through `level`:
// t_lo = last step at or below, t_hi = first step above.
struct CrossingBracket {
    double level = 0.0;
    bool hit = false;
    double t_lo = 0.0;
    double t_hi = 0.0;
};

struct Snapshot {
    double t = 0.0;
    std::vector<double> x; // grid coordinates (radii for radial runs)
    std::vector<double> u;
};

enum class SimStatus { blown_up, horizon_reached };

inline const char* sim_status_name(SimStatus s) {
    return s == SimStatus::blown_up ? "blown_up" : "horizon_reached";
}

struct SimOptions {
    std::vector<double> snapshot_times; // must be < t_horizon
    bool record_trace = true;
    long record_stride = 1; // record every k-th step (crossings still per-step)
};

struct SimResult {
    SimStatus status = SimStatus::horizon_reached;
    FunctionalTrace trace;
    CrossingBracket cross_cap;    // U_max
    CrossingBracket cross_2cap;   // 2 * U_max
    CrossingBracket cross_stop;   // stop_factor * U_max
    double sup_final = 0.0;
    long steps = 0;
    double dt = 0.0;
    double dx = 0.0;
    std::vector<Snapshot> snapshots;

    // Numerical lifespan proxy: first step beyond the escape threshold.
    double T_escape() const {
        if (!cross_cap.hit) throw std::logic_error("no escape: run ended at the horizon");
        return cross_cap.t_hi;
    }
};

// Dispatch |.|^p evaluation to a specialized functor. The nonlinearity sits
// in the innermost loop of every solver; the common exponents get closed
// forms instead of std::pow.
template <class Fn>
decltype(auto) with_power(double p, Fn&& fn) {
    if (p == 2.0) return fn([](double v) { return v * v; });
    if (p == 3.0) return fn([](double v) { const double a = std::abs(v); return a * a * a; });
    if (p == 1.5) return fn([](double v) { const double a = std::abs(v); return a * std::sqrt(a); });
    if (p == 2.5) return fn([](double v) { const double a = std::abs(v); return a * a * std::sqrt(a); });
    return fn([p](double v) { return std::pow(std::abs(v), p); });
}

} // namespace blowlab
