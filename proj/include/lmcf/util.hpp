#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>

namespace lmcf {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wrap an angle difference into (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a <= -kPi) a += kTwoPi;
    if (a > kPi) a -= kTwoPi;
    return a;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;  // coefficient of determination
};

/// Ordinary least squares y ~ slope*x + intercept.
inline LineFit linfit(std::span<const double> x, std::span<const double> y) {
    const std::size_t m = x.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / static_cast<double>(m);
    const double my = sy / static_cast<double>(m);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = (syy > 0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

/// Estimated convergence order from errors at h and h/2.
inline double refinement_order(double err_h, double err_h2) {
    if (err_h2 <= 0) return 16.0;  // clean to round-off
    return std::log2(err_h / err_h2);
}

}  // namespace lmcf
