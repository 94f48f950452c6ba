#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slcap {

/// Gamma function via the Lanczos approximation (g = 7, 9 coefficients),
/// accurate to ~1e-15 relative for the arguments used here (x > 0).
inline double gamma_fn(double x) {
    static constexpr double coeff[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be positive");
    if (x < 0.5) {
        // reflection formula
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    }
    const double z = x - 1.0;
    double a = coeff[0];
    for (int i = 1; i < 9; ++i) a += coeff[i] / (z + i);
    const double t = z + 7.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

/// Lebesgue measure of the n-dimensional unit ball, pi^{n/2} / Gamma(n/2 + 1).
inline double unit_ball_volume(int n) {
    if (n < 1 || n > 12) {
        throw std::invalid_argument("unit_ball_volume: n must lie in [1, 12]");
    }
    return std::pow(std::numbers::pi, 0.5 * n) / gamma_fn(0.5 * n + 1.0);
}

/// Per-dimension constants used throughout the radial computations.
struct DimensionConstants {
    int n;
    double ball_volume;    // |B(0,1)|
    double sphere_measure; // surface measure of the unit sphere, n * ball_volume
    double conjugate;      // n' = n / (n - 1)

    explicit DimensionConstants(int n_) : n(n_) {
        if (n < 2) throw std::invalid_argument("DimensionConstants: n must be >= 2");
        ball_volume = unit_ball_volume(n);
        sphere_measure = n * ball_volume;
        conjugate = static_cast<double>(n) / (n - 1.0);
    }
};

} // namespace slcap
