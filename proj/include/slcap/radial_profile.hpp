#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "slcap/exponents.hpp"
#include "slcap/lorentz_norms.hpp"
#include "slcap/special.hpp"
#include "slcap/step_function.hpp"

namespace slcap {

/// Piecewise-linear radial profile f on [r, 1] with f(r) = 1 and f(1) = 0.
/// The associated radial function is u(x) = f(|x|) on the annulus, extended
/// by 1 on the inner ball B(0, r).
struct RadialProfile {
    std::vector<double> knots;  // r = t_0 < t_1 < ... < t_M = 1
    std::vector<double> values; // f_0 = 1, ..., f_M = 0, all in [0, 1]

    RadialProfile(std::vector<double> knots_, std::vector<double> values_)
        : knots(std::move(knots_)), values(std::move(values_)) {
        validate();
    }

    static RadialProfile cone(double r) {
        return RadialProfile({r, 1.0}, {1.0, 0.0});
    }

    /// Cone of support radius rho in (0, 1]: 1 - t/rho, truncated at 0.
    static RadialProfile scaled_cone(double rho) {
        if (!(rho > 0.0) || rho > 1.0) {
            throw std::invalid_argument("scaled_cone: support radius must lie in (0, 1]");
        }
        if (rho == 1.0) return cone(0.0);
        return RadialProfile({0.0, rho, 1.0}, {1.0, 0.0, 0.0});
    }

    /// Build a nonincreasing profile on uniform knots from slope magnitudes;
    /// requires sum_j s_j dt = 1 so that the boundary values close exactly.
    static RadialProfile from_slopes(double r, const std::vector<double>& slopes) {
        const std::size_t M = slopes.size();
        if (M == 0) throw std::invalid_argument("from_slopes: need at least one interval");
        const double dt = (1.0 - r) / static_cast<double>(M);
        std::vector<double> ks(M + 1), vs(M + 1);
        double level = 1.0;
        for (std::size_t j = 0; j <= M; ++j) {
            ks[j] = (j == M) ? 1.0 : r + dt * static_cast<double>(j);
            vs[j] = std::min(1.0, std::max(0.0, level));
            if (j < M) level -= slopes[j] * dt;
        }
        vs[0] = 1.0;
        vs[M] = 0.0;
        return RadialProfile(std::move(ks), std::move(vs));
    }

    void validate() const {
        if (knots.size() < 2 || knots.size() != values.size()) {
            throw std::invalid_argument("RadialProfile: need matching knots/values, >= 2 each");
        }
        if (!(knots.front() >= 0.0) || !(knots.front() < 1.0) || knots.back() != 1.0) {
            throw std::invalid_argument("RadialProfile: knots must run from r in [0,1) to 1");
        }
        for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
            if (!(knots[j] < knots[j + 1])) {
                throw std::invalid_argument("RadialProfile: knots must be strictly increasing");
            }
        }
        if (values.front() != 1.0 || values.back() != 0.0) {
            throw std::invalid_argument("RadialProfile: boundary values must be exactly 1 and 0");
        }
        for (double v : values) {
            if (!(v >= 0.0) || !(v <= 1.0)) {
                throw std::invalid_argument("RadialProfile: values must lie in [0, 1]");
            }
        }
    }

    double inner_radius() const { return knots.front(); }
    std::size_t interval_count() const { return knots.size() - 1; }

    std::vector<double> slopes() const {
        std::vector<double> s(interval_count());
        for (std::size_t j = 0; j < s.size(); ++j) {
            s[j] = (values[j + 1] - values[j]) / (knots[j + 1] - knots[j]);
        }
        return s;
    }

    /// Total variation sum_j |slope_j| dt_j; >= 1 by the boundary values.
    double slope_l1() const {
        double acc = 0.0;
        for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
            acc += std::fabs(values[j + 1] - values[j]);
        }
        return acc;
    }

    /// Profile value at radius t (1 on [0, r], 0 beyond 1).
    double evaluate(double t) const {
        if (t <= knots.front()) return 1.0;
        if (t >= 1.0) return 0.0;
        auto it = std::upper_bound(knots.begin(), knots.end(), t);
        const std::size_t j = static_cast<std::size_t>(it - knots.begin()) - 1;
        const double w = (t - knots[j]) / (knots[j + 1] - knots[j]);
        return values[j] + w * (values[j + 1] - values[j]);
    }

    bool nonincreasing() const {
        for (std::size_t j = 0; j + 1 < values.size(); ++j) {
            if (values[j + 1] > values[j]) return false;
        }
        return true;
    }
};

/// Gradient-magnitude rearrangement of the radial function u(x) = f(|x|):
/// value |slope_j| on measure Omega_n (t_{j+1}^n - t_j^n) per knot interval.
/// Equimeasurable with |grad u| on B(0, 1).
inline StepFunction gradient_profile(const RadialProfile& f, int n) {
    const DimensionConstants dim(n);
    std::vector<Piece> raw;
    raw.reserve(f.interval_count());
    for (std::size_t j = 0; j + 1 < f.knots.size(); ++j) {
        const double slope =
            std::fabs(f.values[j + 1] - f.values[j]) / (f.knots[j + 1] - f.knots[j]);
        const double measure =
            dim.ball_volume * (std::pow(f.knots[j + 1], n) - std::pow(f.knots[j], n));
        raw.push_back(Piece{slope, measure});
    }
    return StepFunction::from_pieces(std::move(raw));
}

/// Lorentz quasinorm of a nonincreasing radial function given by a sampler
/// f(radius) on [0, 1]. The rearrangement f*(s) = f((s / Omega_n)^{1/n}) is
/// bracketed between the per-panel endpoint values on a radius-uniform grid;
/// the grid is refined until successive values agree to rel_tol.
inline NormResult radial_function_quasinorm(const std::function<double(double)>& sampler,
                                            int n, const LorentzExponents& e,
                                            double rel_tol = 1e-8) {
    const DimensionConstants dim(n);
    double prev = -1.0;
    double value = 0.0;
    for (std::size_t K = 512; K <= (std::size_t{1} << 21); K *= 2) {
        std::vector<Piece> low_pieces, high_pieces;
        low_pieces.reserve(K);
        high_pieces.reserve(K);
        double rho_prev = 0.0;
        double f_prev = std::fabs(sampler(0.0));
        for (std::size_t k = 1; k <= K; ++k) {
            const double rho = static_cast<double>(k) / static_cast<double>(K);
            const double f_cur = std::fabs(sampler(rho));
            const double measure =
                dim.ball_volume * (std::pow(rho, n) - std::pow(rho_prev, n));
            const double hi = std::max(f_prev, f_cur);
            const double lo = std::min(f_prev, f_cur);
            if (hi > 0.0) high_pieces.push_back(Piece{hi, measure});
            if (lo > 0.0) low_pieces.push_back(Piece{lo, measure});
            rho_prev = rho;
            f_prev = f_cur;
        }
        const double q_high =
            lorentz_quasinorm(StepFunction::from_pieces(std::move(high_pieces)), e).value;
        const double q_low =
            lorentz_quasinorm(StepFunction::from_pieces(std::move(low_pieces)), e).value;
        value = 0.5 * (q_high + q_low);
        bracket = 0.5 * (q_high - q_low);
        if (prev >= 0.0 && std::fabs(value - prev) <= rel_tol * std::max(value, 1e-300)) {
            break;
        }
        prev = value;
    }
    return NormResult::quadrature(value, std::fabs(value - prev));
}

inline NormResult radial_function_quasinorm(const RadialProfile& f, int n,
                                            const LorentzExponents& e,
                                            double rel_tol = 1e-8) {
    if (!f.nonincreasing()) {
        throw std::invalid_argument("radial_function_quasinorm: profile must be nonincreasing");
    }
    return radial_function_quasinorm([&f](double rho) { return f.evaluate(rho); }, n, e,
                                     rel_tol);
}

/// Concentric condenser (closed inner ball of radius r inside the unit ball)
/// together with the Lorentz exponents of the energy.
struct Condenser {
    int n = 2;
    double r = 0.0;
    LorentzExponents exponents{2.0, 1.0};

    Condenser(int n_, double r_, LorentzExponents e_) : n(n_), r(r_), exponents(e_) {
        if (n < 2) throw std::invalid_argument("Condenser: n must be >= 2");
        if (!(r >= 0.0) || !(r < 1.0)) {
            throw std::invalid_argument("Condenser: r must lie in [0, 1)");
        }
    }

    bool sharp_exponents() const {
        return !exponents.q_infinite && exponents.q == 1.0 &&
               exponents.p == static_cast<double>(n);
    }
};

/// Certified lower bound n^n Omega_n (1 - r^n)^{1-n} for the (n,1) condenser.
inline double sharp_lower_bound(const Condenser& c) {
    if (!c.sharp_exponents()) {
        throw std::invalid_argument("sharp_lower_bound: requires (p,q) = (n,1)");
    }
    const DimensionConstants dim(c.n);
    return std::pow(static_cast<double>(c.n), c.n) * dim.ball_volume *
           std::pow(1.0 - std::pow(c.r, c.n), 1.0 - c.n);
}

/// Certified upper bound n^n Omega_n (1 - r^n) / (1 - r)^n; attained by the
/// cone profile and equal to the lower bound at r = 0.
inline double sharp_upper_bound(const Condenser& c) {
    if (!c.sharp_exponents()) {
        throw std::invalid_argument("sharp_upper_bound: requires (p,q) = (n,1)");
    }
    const DimensionConstants dim(c.n);
    return std::pow(static_cast<double>(c.n), c.n) * dim.ball_volume *
           (1.0 - std::pow(c.r, c.n)) / std::pow(1.0 - c.r, c.n);
}

/// Profile-level lower inequality: the (n,1) quasinorm of the gradient
/// rearrangement dominates n Omega_n^{1/n} (1-r^n)^{-1/n'} times the slope
/// L^1 mass. Returns (lhs, rhs).
inline std::pair<double, double> profile_lower_inequality(const RadialProfile& f, int n) {
    const DimensionConstants dim(n);
    const LorentzExponents e(static_cast<double>(n), 1.0);
    const double lhs = lorentz_quasinorm(gradient_profile(f, n), e).value;
    const double r = f.inner_radius();
    const double rhs = n * std::pow(dim.ball_volume, 1.0 / n) *
                       std::pow(1.0 - std::pow(r, n), -1.0 / dim.conjugate) * f.slope_l1();
    return {lhs, rhs};
}

/// Sup-norm versus the (n,1) gradient bound: returns (sup |u|, bound) with
/// bound = ||grad u||_{n,1} / (n Omega_n^{1/n}); sup <= bound for admissible u.
inline std::pair<double, double> embedding_check(const RadialProfile& f, int n) {
    const DimensionConstants dim(n);
    const LorentzExponents e(static_cast<double>(n), 1.0);
    double sup = 0.0;
    for (double v : f.values) sup = std::max(sup, std::fabs(v));
    const double grad_norm = lorentz_quasinorm(gradient_profile(f, n), e).value;
    return {sup, grad_norm / (n * std::pow(dim.ball_volume, 1.0 / n))};
}

} // namespace slcap
