// Least-squares fitting and bootstrap confidence intervals for the
// power-law analysis. Everything is deterministic: the bootstrap draws its
// indices from a fixed-seed mt19937_64 via modulo (avoiding the
// implementation-defined distribution adapters).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace blowlab {

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

inline OlsFit ols(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("mismatched sample sizes");
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("need at least two points to fit");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0) throw std::invalid_argument("degenerate fit: no variance in abscissae");
    OlsFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

struct BootstrapCI {
    double lo = 0.0;
    double hi = 0.0;
    int resamples = 0;
    std::uint64_t seed = 0;
};

// Percentile bootstrap interval for the OLS slope, resampling pairs with
// replacement. Resamples that collapse to zero x-variance are skipped.
inline BootstrapCI bootstrap_slope_ci(const std::vector<double>& x, const std::vector<double>& y,
                                      int resamples = 1000, std::uint64_t seed = 0x5eed5eedULL,
                                      double level = 0.95) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("bootstrap needs at least three pairs");
    if (!(level > 0 && level < 1)) throw std::invalid_argument("level must lie in (0,1)");
    const std::size_t n = x.size();
    std::mt19937_64 rng(seed);
    std::vector<double> slopes;
    slopes.reserve(resamples);
    std::vector<double> rx(n), ry(n);
    for (int b = 0; b < resamples; ++b) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t k = static_cast<std::size_t>(rng() % n);
            rx[i] = x[k];
            ry[i] = y[k];
        }
        try {
            slopes.push_back(ols(rx, ry).slope);
        } catch (const std::invalid_argument&) {
            // degenerate resample; draw again on the next iteration
        }
    }
    if (slopes.size() < 2) throw std::runtime_error("all bootstrap resamples degenerate");
    std::sort(slopes.begin(), slopes.end());
    auto pct = [&](double q) {
        const double pos = q * static_cast<double>(slopes.size() - 1);
        const std::size_t k = static_cast<std::size_t>(pos);
        const double th = pos - static_cast<double>(k);
        if (k + 1 >= slopes.size()) return slopes.back();
        return slopes[k] + th * (slopes[k + 1] - slopes[k]);
    };
    BootstrapCI ci;
    ci.lo = pct(0.5 * (1.0 - level));
    ci.hi = pct(1.0 - 0.5 * (1.0 - level));
    ci.resamples = resamples;
    ci.seed = seed;
    return ci;
}

} // namespace blowlab
