#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "slcap/exponents.hpp"
#include "slcap/quadrature.hpp"
#include "slcap/step_function.hpp"

namespace slcap {

/// Lorentz quasinorm ||f||_{p,q}: the weighted L^q norm of t^{1/p} f*(t)
/// against dt/t. Exact closed form on the piecewise-constant structure:
///   finite q:  ( sum_i v_i^q (p/q) (T_{i+1}^{q/p} - T_i^{q/p}) )^{1/q}
///   q = inf :  max_i v_i T_{i+1}^{1/p}
inline NormResult lorentz_quasinorm(const StepFunction& f, const LorentzExponents& e) {
    e.validate();
    if (f.empty()) return NormResult::exact(0.0);
    const auto& pieces = f.pieces();
    const auto& T = f.breakpoints();
    if (e.q_infinite) {
        double best = 0.0;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            best = std::max(best, pieces[i].value * std::pow(T[i + 1], 1.0 / e.p));
        }
        return NormResult::exact(best);
    }
    const double qp = e.q / e.p;
    double acc = 0.0, comp = 0.0; // Kahan summation
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const double term = std::pow(pieces[i].value, e.q) * (e.p / e.q) *
                            (std::pow(T[i + 1], qp) - std::pow(T[i], qp));
        const double y = term - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return NormResult::exact(std::pow(acc, 1.0 / e.q));
}

/// Lorentz norm ||f||_{(p,q)}: same functional with the maximal function f**
/// in place of f*. The first piece and the tail beyond the support are
/// integrated in closed form; interior pieces use adaptive quadrature.
inline NormResult lorentz_norm(const StepFunction& f, const LorentzExponents& e,
                               double abs_tol = 1e-12, double rel_tol = 1e-10) {
    e.validate();
    if (f.empty()) {
        throw std::invalid_argument("lorentz_norm: empty function rejected (f** degenerate)");
    }
    const auto& pieces = f.pieces();
    const auto& T = f.breakpoints();
    const double total = f.total_measure();
    const double full_integral = f.integral();

    if (e.q_infinite) {
        // Per piece, t^{1/p} f**(t) = t^{1/p-1} (c_i + v_i t); the single
        // stationary point t* = (p-1) c_i / v_i is a minimum, so the supremum
        // sits at a breakpoint or in the tail.
        double best = 0.0;
        const double expo = 1.0 / e.p - 1.0;
        double head = 0.0; // integral of f* up to T_i
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            const double v = pieces[i].value;
            const double c = head - v * T[i];
            auto phi = [&](double t) { return std::pow(t, expo) * (c + v * t); };
            if (T[i] > 0.0) best = std::max(best, phi(T[i]));
            best = std::max(best, phi(T[i + 1]));
            if (v > 0.0 && c > 0.0) {
                const double tstar = (e.p - 1.0) * c / v;
                if (tstar > T[i] && tstar < T[i + 1]) best = std::max(best, phi(tstar));
            }
            head += v * pieces[i].measure;
        }
        // sup_{t > T} t^{1/p} I / t, decreasing, attained at t = T
        best = std::max(best, full_integral * std::pow(total, expo));
        return NormResult::exact(best);
    }

    const double qp = e.q / e.p;
    // Head: f** is constant v_0 on (0, T_1].
    double acc = std::pow(pieces[0].value, e.q) * (e.p / e.q) * std::pow(T[1], qp);
    double err = 0.0;
    double head = pieces[0].value * pieces[0].measure;
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        const double v = pieces[i].value;
        const double c = head - v * T[i];
        auto integrand = [&](double t) {
            return std::pow(t, qp - 1.0) * std::pow((c + v * t) / t, e.q);
        };
        const auto piece_tol = abs_tol / static_cast<double>(pieces.size());
        const auto qr = integrate_adaptive(integrand, T[i], T[i + 1], piece_tol, rel_tol);
        acc += qr.value;
        err += qr.abs_error;
        head += v * pieces[i].measure;
    }
    // Tail: f**(t) = I / t for t >= T, closed form
    //   int_T^inf t^{q/p-1} (I/t)^q dt = I^q (p / (q (p-1))) T^{q/p - q}.
    acc += std::pow(full_integral, e.q) * (e.p / (e.q * (e.p - 1.0))) *
           std::pow(total, qp - e.q);

    const double value = std::pow(acc, 1.0 / e.q);
    // propagate the accumulated integrand error through the 1/q power
    const double dval = (acc > 0.0 && err > 0.0)
                            ? value * (std::pow(1.0 + err / acc, 1.0 / e.q) - 1.0)
                            : 0.0;
    if (pieces.size() == 1) return NormResult::exact(value); // head + tail only
    return NormResult::quadrature(value, dval);
}

/// Verify the equivalence sandwich  ||f||_{p,q} <= ||f||_{(p,q)} <= p' ||f||_{p,q}
/// within the combined evaluation error budgets.
inline bool equivalence_check(const StepFunction& f, const LorentzExponents& e) {
    if (f.empty()) return true;
    const NormResult quasi = lorentz_quasinorm(f, e);
    const NormResult norm = lorentz_norm(f, e);
    const double pp = e.p_conjugate();
    const double scale = std::max({1.0, quasi.value, norm.value});
    const double budget = quasi.abs_error + norm.abs_error + 1e-12 * scale;
    const bool lower_ok = quasi.value <= norm.value + budget;
    const bool upper_ok = norm.value <= pp * quasi.value + pp * budget;
    return lower_ok && upper_ok;
}

/// ||f||_{p,s} / ||f||_{p,r} for 1 <= r < s <= inf; witnesses the boundedness
/// of the inclusion L^{p,r} into L^{p,s}.
inline double inclusion_ratio(const StepFunction& f, double p, double r, double s) {
    if (f.empty()) throw std::invalid_argument("inclusion_ratio: zero function rejected");
    if (!(r >= 1.0) || !(r < s)) {
        throw std::invalid_argument("inclusion_ratio: need 1 <= r < s <= inf");
    }
    const LorentzExponents er(p, r);
    const LorentzExponents es = std::isinf(s) ? LorentzExponents::with_infinite_q(p)
                                              : LorentzExponents(p, s);
    const double denom = lorentz_quasinorm(f, er).value;
    return lorentz_quasinorm(f, es).value / denom;
}

/// Hardy-Littlewood pairing of two rearrangements. Returns
///   lhs: the co-aligned pairing summed over the common refinement of the
///        cumulative intervals,
///   rhs: int_0^inf f*(t) g*(t) dt accumulated piece-against-piece.
/// Both compute the same integral by different routes; any pairing of f and g
/// on a shared partition is bounded by rhs.
inline std::pair<double, double> pairing_bound(const StepFunction& f, const StepFunction& g) {
    // rhs: two-pointer sweep over the piece overlaps
    double rhs = 0.0;
    {
        const auto& fp = f.pieces();
        const auto& gp = g.pieces();
        const auto& Tf = f.breakpoints();
        const auto& Tg = g.breakpoints();
        std::size_t i = 0, j = 0;
        while (i < fp.size() && j < gp.size()) {
            const double lo = std::max(Tf[i], Tg[j]);
            const double hi = std::min(Tf[i + 1], Tg[j + 1]);
            if (hi > lo) rhs += fp[i].value * gp[j].value * (hi - lo);
            if (Tf[i + 1] <= Tg[j + 1]) {
                ++i;
            } else {
                ++j;
            }
        }
    }
    // lhs: merged-breakpoint refinement, midpoint sampling (exact on steps)
    double lhs = 0.0;
    {
        std::vector<double> cuts;
        cuts.insert(cuts.end(), f.breakpoints().begin(), f.breakpoints().end());
        cuts.insert(cuts.end(), g.breakpoints().begin(), g.breakpoints().end());
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
            lhs += f.value_at(mid) * g.value_at(mid) * (cuts[k + 1] - cuts[k]);
        }
    }
    return {lhs, rhs};
}

} // namespace slcap
