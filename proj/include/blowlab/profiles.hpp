// Compactly supported radial data profiles.
//
// The default profile is the polynomial bump c (1 - (r/R)^2)^4 on r <= R.
// It is C^3 at the support boundary, cheap to evaluate, and has closed-form
// radial primitives, which the exact linear-wave reference solutions need.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blowlab {

// Surface measure of the unit sphere S^{n-1} in R^n.
inline double unit_sphere_area(int n) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    return 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
}

// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

struct RadialProfile {
    enum class Kind { zero, bump };

    Kind kind = Kind::zero;
    double R = 1.0; // support radius
    double c = 0.0; // amplitude

    double value(double r) const {
        if (kind == Kind::zero) return 0.0;
        const double s = std::abs(r) / R;
        if (s >= 1.0) return 0.0;
        const double w = 1.0 - s * s;
        const double w2 = w * w;
        return c * w2 * w2;
    }

    // primitive(r) = integral of the profile over [0, r], r >= 0.
    double primitive(double r) const {
        if (kind == Kind::zero) return 0.0;
        const double s = std::min(std::abs(r) / R, 1.0);
        const double s2 = s * s;
        const double poly =
            s * (1.0 + s2 * (-4.0 / 3 + s2 * (6.0 / 5 + s2 * (-4.0 / 7 + s2 / 9))));
        return c * R * poly;
    }

    // moment1(r) = integral of t * profile(t) over [0, r], r >= 0.
    double moment1(double r) const {
        if (kind == Kind::zero) return 0.0;
        const double s = std::min(std::abs(r) / R, 1.0);
        const double w = 1.0 - s * s;
        const double w5 = w * w * w * w * w;
        return c * R * R * (1.0 - w5) / 10.0;
    }

    // L^1(R^n) mass of the radial extension, n >= 1.
    double mass(int n) const {
        if (kind == Kind::zero) return 0.0;
        return c * unit_sphere_area(n) * std::pow(R, n) * 0.5 * std::beta(n / 2.0, 5.0);
    }

    static RadialProfile zero(double R = 1.0) { return {Kind::zero, R, 0.0}; }

    // Bump with prescribed L^1(R^n) mass.
    static RadialProfile bump(int n, double R, double mass_target = 1.0) {
        if (!(R > 0)) throw std::invalid_argument("support radius must be positive");
        if (!(mass_target > 0)) throw std::invalid_argument("profile mass must be positive");
        RadialProfile g;
        g.kind = Kind::bump;
        g.R = R;
        g.c = mass_target / (unit_sphere_area(n) * std::pow(R, n) * 0.5 * std::beta(n / 2.0, 5.0));
        return g;
    }
};

} // namespace blowlab
