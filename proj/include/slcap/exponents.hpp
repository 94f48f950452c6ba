#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace slcap {

/// Lorentz exponent pair (p, q) with p in (1, inf) and q in [1, inf].
/// q = infinity is represented explicitly; Hoelder conjugates are derived.
struct LorentzExponents {
    double p = 2.0;
    double q = 1.0;
    bool q_infinite = false;

    LorentzExponents() = default;

    LorentzExponents(double p_, double q_) : p(p_), q(q_), q_infinite(std::isinf(q_)) {
        validate();
    }

    static LorentzExponents with_infinite_q(double p_) {
        LorentzExponents e;
        e.p = p_;
        e.q = std::numeric_limits<double>::infinity();
        e.q_infinite = true;
        e.validate();
        return e;
    }

    void validate() const {
        if (!(p > 1.0) || std::isinf(p)) {
            throw std::invalid_argument("LorentzExponents: p must lie in (1, inf), got " +
                                        std::to_string(p));
        }
        if (!q_infinite && !(q >= 1.0)) {
            throw std::invalid_argument("LorentzExponents: q must lie in [1, inf], got " +
                                        std::to_string(q));
        }
    }

    /// p' = p / (p - 1)
    double p_conjugate() const { return p / (p - 1.0); }

    /// q' with 1/q + 1/q' = 1 (q = 1 maps to infinity and vice versa).
    double q_conjugate() const {
        if (q_infinite) return 1.0;
        if (q == 1.0) return std::numeric_limits<double>::infinity();
        return q / (q - 1.0);
    }

    bool norm_regime() const { return !q_infinite && q <= p; }
};

/// Result of a norm evaluation together with how it was obtained.
struct NormResult {
    double value = 0.0;
    enum class Method { exact, quadrature } method = Method::exact;
    double abs_error = 0.0;

    static NormResult exact(double v) { return NormResult{v, Method::exact, 0.0}; }
    static NormResult quadrature(double v, double err) {
        return NormResult{v, Method::quadrature, err};
    }
};

inline const char* to_string(NormResult::Method m) {
    return m == NormResult::Method::exact ? "exact" : "quadrature";
}

} // namespace slcap
