// Closed-form exponents and critical constants for the semilinear wave
// equation u_tt - Laplace(u) = |u|^p with small data of size eps.
//
// gamma(p, n)        quadratic whose sign separates blow-up from global
//                    existence; positive in the subcritical regime
// strauss_exponent   positive root of gamma(., n) = 0, n >= 2
// lifespan_exponent  magnitude kappa of the predicted law T(eps) ~ eps^-kappa
// a_of_eps           root of a^2 eps^2 log(1+a) = 1, the log-corrected
//                    lifespan scale for (n, p) = (2, 2)

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace blowlab {

enum class Regime { subcritical, critical, supercritical, one_dim };

enum class LifespanCase {
    general,          // n >= 1, gamma(p, n) > 0
    one_d_g_positive, // n = 1, data with positive mean velocity
    one_d_f_only,     // n = 1, displacement-only data
    two_d_sub2        // n = 2, 1 < p < 2, velocity-only data
};

inline void require_pn(double p, int n, const char* who) {
    if (!(p > 1.0))
        throw std::invalid_argument(std::string(who) + ": requires p > 1, got p=" + std::to_string(p));
    if (n < 1)
        throw std::invalid_argument(std::string(who) + ": requires n >= 1, got n=" + std::to_string(n));
}

/// gamma(p, n) = 2 + (n+1)p - (n-1)p^2
inline double gamma(double p, int n) {
    require_pn(p, n, "gamma");
    return 2.0 + (n + 1) * p - (n - 1) * p * p;
}

/// Positive root of gamma(., n) = 0. Defined for n >= 2 only; for n = 1
/// every p > 1 blows up and there is no critical power.
inline double strauss_exponent(int n) {
    if (n < 2)
        throw std::invalid_argument("strauss_exponent: undefined for n < 2 (n = 1 blows up for all p > 1)");
    const double nn = static_cast<double>(n);
    return (nn + 1.0 + std::sqrt(nn * nn + 10.0 * nn - 7.0)) / (2.0 * (nn - 1.0));
}

/// Magnitude of the negative eps-power in the predicted lifespan law.
inline double lifespan_exponent(double p, int n, LifespanCase c) {
    require_pn(p, n, "lifespan_exponent");
    switch (c) {
    case LifespanCase::general: {
        const double g = gamma(p, n);
        if (!(g > 0.0))
            throw std::invalid_argument("lifespan_exponent: general case needs gamma(p,n) > 0");
        return 2.0 * p * (p - 1.0) / g;
    }
    case LifespanCase::one_d_g_positive:
        if (n != 1) throw std::invalid_argument("lifespan_exponent: one_d_g_positive needs n = 1");
        return (p - 1.0) / 2.0;
    case LifespanCase::one_d_f_only:
        if (n != 1) throw std::invalid_argument("lifespan_exponent: one_d_f_only needs n = 1");
        return p * (p - 1.0) / (p + 1.0);
    case LifespanCase::two_d_sub2:
        if (n != 2 || !(p < 2.0))
            throw std::invalid_argument("lifespan_exponent: two_d_sub2 needs n = 2 and 1 < p < 2");
        return (p - 1.0) / (3.0 - p);
    }
    throw std::logic_error("lifespan_exponent: unreachable");
}

struct ExponentReport {
    double p = 0.0;
    int n = 0;
    double gamma = 0.0;
    std::optional<double> p0;           // absent for n = 1
    Regime regime = Regime::one_dim;
    std::optional<double> lifespan_exp; // general-case kappa, present iff gamma > 0
};

inline ExponentReport describe(double p, int n) {
    require_pn(p, n, "describe");
    ExponentReport rep;
    rep.p = p;
    rep.n = n;
    rep.gamma = gamma(p, n);
    if (n == 1) {
        rep.regime = Regime::one_dim;
    } else {
        rep.p0 = strauss_exponent(n);
        if (std::abs(p - *rep.p0) < 1e-12 * *rep.p0)
            rep.regime = Regime::critical;
        else if (rep.gamma > 0.0)
            rep.regime = Regime::subcritical;
        else
            rep.regime = Regime::supercritical;
    }
    if (rep.gamma > 0.0)
        rep.lifespan_exp = 2.0 * p * (p - 1.0) / rep.gamma;
    return rep;
}

inline const char* regime_name(Regime r) {
    switch (r) {
    case Regime::subcritical:   return "subcritical";
    case Regime::critical:      return "critical";
    case Regime::supercritical: return "supercritical";
    case Regime::one_dim:       return "one_dim";
    }
    return "?";
}

/// Solve a^2 eps^2 log(1+a) = 1 for the unique a > 0.
///
/// The map a -> a^2 eps^2 log(1+a) is strictly increasing from 0 to
/// infinity, so a doubling bracket plus a Newton/bisection hybrid always
/// converges. Residual is driven below 1e-12.
inline double a_of_eps(double eps) {
    if (!(eps > 0.0))
        throw std::invalid_argument("a_of_eps: requires eps > 0");
    const double e2 = eps * eps;
    auto h = [e2](double a) { return a * a * e2 * std::log1p(a) - 1.0; };
    auto hp = [e2](double a) { return e2 * (2.0 * a * std::log1p(a) + a * a / (1.0 + a)); };

    double lo = 1e-12, hi = 1.0;
    while (h(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw std::runtime_error("a_of_eps: bracket overflow");
    }
    double a = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double r = h(a);
        if (std::abs(r) < 1e-14) break;
        if (r > 0.0) hi = a; else lo = a;
        const double step = r / hp(a);
        double next = a - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        a = next;
    }
    return a;
}

/// Inverse of a_of_eps: the eps for which a solves the defining equation.
inline double eps_of_a(double a) {
    if (!(a > 0.0))
        throw std::invalid_argument("eps_of_a: requires a > 0");
    return 1.0 / (a * std::sqrt(std::log1p(a)));
}

} // namespace blowlab
