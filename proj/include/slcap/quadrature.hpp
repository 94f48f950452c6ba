#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slcap {

namespace detail {

/// Gauss-Legendre nodes and weights on [-1, 1], computed once by Newton
/// iteration on the Legendre recurrence.
template <int N>
struct GaussRule {
    std::array<double, N> nodes{};
    std::array<double, N> weights{};

    GaussRule() {
        for (int k = 0; k < N; ++k) {
            double x = std::cos(std::numbers::pi * (k + 0.75) / (N + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= N; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-16) break;
            }
            nodes[k] = x;
            weights[k] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }

    template <typename F>
    double apply(F&& f, double a, double b) const {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        double s = 0.0;
        for (int k = 0; k < N; ++k) s += weights[k] * f(mid + half * nodes[k]);
        return s * half;
    }
};

} // namespace detail

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0; // accumulated error estimate
};

/// Adaptive quadrature with an embedded 7/15-point Gauss pair: each panel is
/// accepted when the two estimates agree within the panel's share of the
/// tolerance, otherwise bisected.
template <typename F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol = 1e-12,
                                    double rel_tol = 1e-10, int max_depth = 48) {
    static const detail::GaussRule<7> g7;
    static const detail::GaussRule<15> g15;
    if (!(b >= a)) throw std::invalid_argument("integrate_adaptive: need b >= a");
    if (a == b) return {};

    struct Worker {
        const detail::GaussRule<7>& g7;
        const detail::GaussRule<15>& g15;
        F& fn;
        double rel_tol;
        QuadratureResult out{};

        void run(double lo, double hi, double tol, int depth) {
            const double coarse = g7.apply(fn, lo, hi);
            const double fine = g15.apply(fn, lo, hi);
            const double err = std::fabs(fine - coarse);
            if (depth <= 0 || err <= std::max(tol, rel_tol * std::fabs(fine))) {
                out.value += fine;
                out.abs_error += err;
                return;
            }
            const double mid = 0.5 * (lo + hi);
            run(lo, mid, 0.5 * tol, depth - 1);
            run(mid, hi, 0.5 * tol, depth - 1);
        }
    };

    Worker w{g7, g15, f, rel_tol};
    w.run(a, b, abs_tol, max_depth);
    return w.out;
}

} // namespace slcap
