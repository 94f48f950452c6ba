#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "slcap/exponents.hpp"
#include "slcap/radial_profile.hpp"

namespace slcap {

/// Exact Euclidean projection onto { s >= 0, sum_j a_j s_j = 1 } for positive
/// weights a, by walking the sorted breakpoints of the Lagrange multiplier.
inline std::vector<double> project_to_weighted_simplex(const std::vector<double>& y,
                                                       const std::vector<double>& a) {
    const std::size_t m = y.size();
    if (a.size() != m || m == 0) {
        throw std::invalid_argument("project_to_weighted_simplex: size mismatch");
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return y[i] / a[i] > y[j] / a[j];
    });
    double s_ay = 0.0, s_aa = 0.0;
    double lambda = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t j = order[k];
        s_ay += a[j] * y[j];
        s_aa += a[j] * a[j];
        const double cand = (s_ay - 1.0) / s_aa;
        const double next_ratio =
            (k + 1 < m) ? y[order[k + 1]] / a[order[k + 1]] : -std::numeric_limits<double>::infinity();
        lambda = cand;
        if (cand >= next_ratio) break;
    }
    std::vector<double> s(m);
    double dot = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        s[j] = std::max(0.0, y[j] - lambda * a[j]);
        dot += a[j] * s[j];
    }
    if (dot > 0.0) {
        for (double& v : s) v /= dot; // pin the constraint exactly
    }
    return s;
}

/// Objective machinery for the radial condenser problem: slope magnitudes
/// s_j >= 0 on fixed knot intervals with measures m_j, objective
/// Q(s)^p with Q the Lorentz quasinorm of the induced step function.
class RadialObjective {
  public:
    RadialObjective(std::vector<double> measures, LorentzExponents e)
        : measures_(std::move(measures)), e_(e) {}

    std::size_t size() const { return measures_.size(); }
    const LorentzExponents& exponents() const { return e_; }

    /// Quasinorm Q(s) and optionally a subgradient of Q(s)^p. The subgradient
    /// selects the active descending arrangement (ties broken by index).
    double quasinorm(const std::vector<double>& s, std::vector<double>* grad_objective) const {
        const std::size_t m = measures_.size();
        std::vector<std::size_t> order(m);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
            if (s[i] != s[j]) return s[i] > s[j];
            return i < j;
        });
        const double p = e_.p;
        if (e_.q_infinite) {
            double T = 0.0, best = 0.0;
            std::size_t best_j = order[0];
            for (std::size_t k = 0; k < m; ++k) {
                T += measures_[order[k]];
                const double cand = s[order[k]] * std::pow(T, 1.0 / p);
                if (cand > best) {
                    best = cand;
                    best_j = order[k];
                }
            }
            if (grad_objective) {
                grad_objective->assign(m, 0.0);
                if (best > 0.0 && s[best_j] > 0.0) {
                    (*grad_objective)[best_j] = p * std::pow(best, p - 1.0) * (best / s[best_j]);
                }
            }
            return best;
        }
        const double q = e_.q;
        const double qp = q / p;
        double T = 0.0, Tpow = 0.0, Qq = 0.0;
        std::vector<double> slot_weight;
        if (grad_objective) slot_weight.assign(m, 0.0);
        for (std::size_t k = 0; k < m; ++k) {
            T += measures_[order[k]];
            const double Tpow_next = std::pow(T, qp);
            const double w = (p / q) * (Tpow_next - Tpow);
            Qq += std::pow(s[order[k]], q) * w;
            if (grad_objective) slot_weight[order[k]] = w;
            Tpow = Tpow_next;
        }
        const double Q = std::pow(Qq, 1.0 / q);
        if (grad_objective) {
            grad_objective->assign(m, 0.0);
            if (Q > 0.0) {
                const double factor = p * std::pow(Q, p - q);
                for (std::size_t j = 0; j < m; ++j) {
                    (*grad_objective)[j] =
                        factor * (q == 1.0 ? 1.0 : std::pow(s[j], q - 1.0)) * slot_weight[j];
                }
            }
        }
        return Q;
    }

    double objective(const std::vector<double>& s) const {
        return std::pow(quasinorm(s, nullptr), e_.p);
    }

  private:
    std::vector<double> measures_;
    LorentzExponents e_;
};

struct SolverOptions {
    long max_iterations = 20000;
    double step_scale = 0.1;   // alpha_0 = step_scale / objective(cone)
    double tolerance = 1e-5;   // residual threshold for the convergence flag
    bool allow_heuristic = false; // required for the quasinorm regime q > p
    int multistarts = 4;          // extra random starts in the heuristic regime
    unsigned long long seed = 20240915ULL;
};

struct CondenserEstimate {
    int n = 2;
    double r = 0.0;
    LorentzExponents exponents{2.0, 1.0};
    double value = 0.0;
    double lower = std::numeric_limits<double>::quiet_NaN();
    double upper = std::numeric_limits<double>::quiet_NaN();
    long iterations = 0;
    double residual = 0.0;
    bool certified = false;
    bool converged = false;
    std::vector<double> slopes; // optimizer slopes on the uniform knot grid

    RadialProfile profile() const {
        // reconstructed nonincreasing profile of the reported minimizer
        return RadialProfile::from_slopes(r, slopes);
    }
};

namespace detail {

struct DescentOutcome {
    std::vector<double> best_s;
    double best_obj = std::numeric_limits<double>::infinity();
    long iterations = 0;
    double residual = 0.0;
};

/// Projected subgradient with diminishing steps alpha_k = alpha_0 / sqrt(k)
/// and averaging of the tail iterates; tracks the best feasible objective.
inline DescentOutcome projected_subgradient(const RadialObjective& obj,
                                            const std::vector<double>& weights,
                                            std::vector<double> start, double alpha0,
                                            long iterations) {
    DescentOutcome out;
    std::vector<double> s = project_to_weighted_simplex(start, weights);
    std::vector<double> grad;
    out.best_s = s;
    out.best_obj = obj.objective(s);

    const long half = iterations / 2;
    std::vector<double> avg(s.size(), 0.0);
    long avg_count = 0;
    const long checkpoint = std::max<long>(1, iterations / 20);
    double best_at_last_checkpoint = out.best_obj;
    out.residual = 0.0;

    for (long k = 1; k <= iterations; ++k) {
        const double Q = obj.quasinorm(s, &grad);
        const double f = std::pow(Q, obj.exponents().p);
        if (f < out.best_obj) {
            out.best_obj = f;
            out.best_s = s;
        }
        double gnorm2 = 0.0;
        for (double g : grad) gnorm2 += g * g;
        if (gnorm2 == 0.0) break;
        const double alpha = alpha0 / std::sqrt(static_cast<double>(k));
        for (std::size_t j = 0; j < s.size(); ++j) s[j] -= alpha * grad[j];
        s = project_to_weighted_simplex(s, weights);

        if (k > half) {
            for (std::size_t j = 0; j < s.size(); ++j) avg[j] += s[j];
            ++avg_count;
        }
        if (k % checkpoint == 0) {
            if (avg_count > 0) {
                std::vector<double> bar(avg.size());
                for (std::size_t j = 0; j < bar.size(); ++j) {
                    bar[j] = avg[j] / static_cast<double>(avg_count);
                }
                const double fbar = obj.objective(bar); // convex mean stays feasible
                if (fbar < out.best_obj) {
                    out.best_obj = fbar;
                    out.best_s = bar;
                }
            }
            out.residual = (best_at_last_checkpoint - out.best_obj) /
                           std::max(out.best_obj, 1e-300);
            best_at_last_checkpoint = out.best_obj;
        }
        out.iterations = k;
    }
    return out;
}

} // namespace detail

/// Minimize the Lorentz gradient energy of radial profiles over the condenser
/// (closed ball of radius r inside the unit ball) on M uniform knot intervals.
/// The cone is always evaluated as a feasible incumbent; for q = p the exact
/// discrete minimizer is available in closed form and used as a warm start.
/// At (p,q) = (n,1) the certified bounds are attached and the reported value
/// is pinned inside them.
inline CondenserEstimate solve_condenser(const Condenser& c, std::size_t M,
                                         const SolverOptions& opts = {}) {
    const LorentzExponents& e = c.exponents;
    if (M < 2) throw std::invalid_argument("solve_condenser: need M >= 2 knot intervals");
    const bool convex_regime = e.norm_regime();
    if (!convex_regime && !opts.allow_heuristic) {
        throw std::invalid_argument(
            "solve_condenser: q > p is the quasinorm regime; pass allow_heuristic to run "
            "multi-start heuristics (result will not be certified)");
    }

    const DimensionConstants dim(c.n);
    const double dt = (1.0 - c.r) / static_cast<double>(M);
    std::vector<double> measures(M), weights(M, dt), knots(M + 1);
    for (std::size_t j = 0; j <= M; ++j) {
        knots[j] = (j == M) ? 1.0 : c.r + dt * static_cast<double>(j);
    }
    for (std::size_t j = 0; j < M; ++j) {
        measures[j] = dim.ball_volume * (std::pow(knots[j + 1], c.n) - std::pow(knots[j], c.n));
    }
    const RadialObjective obj(measures, e);

    // cone incumbent: constant slope 1/(1-r)
    std::vector<double> cone(M, 1.0 / (1.0 - c.r));
    const double cone_obj = obj.objective(cone);

    std::vector<double> best_s = cone;
    double best_obj = cone_obj;

    // exact discrete minimizer for q = p: slopes proportional to (dt/m_j)^{1/(p-1)}
    if (!e.q_infinite && e.q == e.p) {
        std::vector<double> exact(M);
        double dot = 0.0;
        for (std::size_t j = 0; j < M; ++j) {
            exact[j] = std::pow(dt / measures[j], 1.0 / (e.p - 1.0));
            dot += exact[j] * dt;
        }
        for (double& v : exact) v /= dot;
        const double f = obj.objective(exact);
        if (f < best_obj) {
            best_obj = f;
            best_s = exact;
        }
    }

    const double alpha0 = opts.step_scale / cone_obj;
    long iterations_used = 0;
    double residual = 0.0;

    auto run_from = [&](const std::vector<double>& start) {
        const auto outcome =
            detail::projected_subgradient(obj, weights, start, alpha0, opts.max_iterations);
        iterations_used += outcome.iterations;
        residual = outcome.residual;
        if (outcome.best_obj < best_obj) {
            best_obj = outcome.best_obj;
            best_s = outcome.best_s;
        }
    };

    run_from(best_s);
    if (!convex_regime) {
        std::mt19937_64 rng(opts.seed);
        std::uniform_real_distribution<double> unit(0.05, 1.0);
        for (int t = 0; t < opts.multistarts; ++t) {
            std::vector<double> start(M);
            for (double& v : start) v = unit(rng);
            run_from(start);
        }
    }

    CondenserEstimate est;
    est.n = c.n;
    est.r = c.r;
    est.exponents = e;
    est.iterations = iterations_used;
    est.residual = residual;
    est.converged = std::fabs(residual) <= opts.tolerance;
    est.value = best_obj;
    est.slopes = best_s;

    if (c.sharp_exponents()) {
        est.lower = sharp_lower_bound(c);
        est.upper = sharp_upper_bound(c);
        // The cone attains the upper bound, so the reported minimum never
        // exceeds it; a value below the certified lower bound can only be
        // floating-point noise (snapped) or a solver fault (flagged).
        est.value = std::min(est.value, est.upper);
        if (est.value < est.lower) {
            if (est.value >= est.lower * (1.0 - 1e-9)) {
                est.value = est.lower;
            } else {
                est.converged = false;
            }
        }
        est.certified = est.converged && est.value >= est.lower && est.value <= est.upper;
    } else {
        est.certified = false;
    }
    return est;
}

struct PointCapacityResult {
    CondenserEstimate estimate;
    double reference = 0.0; // n^n Omega_n
    double rel_error = 0.0;
    bool ok = false;
};

/// Relative capacity of a point: the (n,1) condenser at r = 0, checked
/// against the exact value n^n Omega_n.
inline PointCapacityResult point_relative_capacity(int n, std::size_t M = 2000,
                                                   const SolverOptions& opts = {},
                                                   double rel_tolerance = 5e-3) {
    const DimensionConstants dim(n);
    const Condenser c(n, 0.0, LorentzExponents(static_cast<double>(n), 1.0));
    PointCapacityResult result;
    result.estimate = solve_condenser(c, M, opts);
    result.reference = std::pow(static_cast<double>(n), n) * dim.ball_volume;
    result.rel_error = std::fabs(result.estimate.value - result.reference) / result.reference;
    result.ok = result.rel_error <= rel_tolerance;
    return result;
}

struct GlobalPointCapacityResult {
    std::vector<std::pair<double, double>> sequence; // (r, estimate)
    double estimate = 0.0;                           // value at the smallest r
    double reference = 0.0;                          // n^n Omega_n
    bool monotone_decreasing = false;
    bool dominates_reference = false;
};

/// Global capacity of a point via the scaled-cone family: the cone of support
/// radius r contributes (r ||u||_{n,1} + ||grad u||_{n,1})^n, which decreases
/// to n^n Omega_n as r -> 0.
inline GlobalPointCapacityResult global_point_capacity(int n,
                                                       const std::vector<double>& r_sequence) {
    if (r_sequence.empty()) {
        throw std::invalid_argument("global_point_capacity: need at least one radius");
    }
    for (std::size_t i = 0; i < r_sequence.size(); ++i) {
        if (!(r_sequence[i] > 0.0)) {
            throw std::invalid_argument("global_point_capacity: radii must be positive");
        }
        if (i > 0 && !(r_sequence[i] < r_sequence[i - 1])) {
            throw std::invalid_argument("global_point_capacity: radii must strictly decrease");
        }
    }
    const DimensionConstants dim(n);
    const LorentzExponents e(static_cast<double>(n), 1.0);
    const RadialProfile unit_cone = RadialProfile::cone(0.0);
    const double u_norm = radial_function_quasinorm(unit_cone, n, e).value;
    const double grad_norm = lorentz_quasinorm(gradient_profile(unit_cone, n), e).value;

    GlobalPointCapacityResult out;
    out.reference = std::pow(static_cast<double>(n), n) * dim.ball_volume;
    out.monotone_decreasing = true;
    out.dominates_reference = true;
    double prev = std::numeric_limits<double>::infinity();
    for (double r : r_sequence) {
        const double est = std::pow(r * u_norm + grad_norm, n);
        out.sequence.emplace_back(r, est);
        if (!(est <= prev)) out.monotone_decreasing = false;
        if (!(est >= out.reference * (1.0 - 1e-12))) out.dominates_reference = false;
        prev = est;
    }
    out.estimate = out.sequence.back().second;
    return out;
}

struct SweepRow {
    double r = 0.0;
    double lower = 0.0;
    double value = 0.0;
    double upper = 0.0;
};

/// Certified (n,1) sweep over r in linspace(0, rmax, steps).
inline std::vector<SweepRow> sweep_radii(int n, double rmax, int steps, std::size_t M,
                                         const SolverOptions& opts = {}) {
    if (steps < 1 || !(rmax >= 0.0) || !(rmax < 1.0)) {
        throw std::invalid_argument("sweep_radii: need steps >= 1 and rmax in [0, 1)");
    }
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double r = (steps == 1) ? 0.0 : rmax * static_cast<double>(i) / (steps - 1);
        const Condenser c(n, r, LorentzExponents(static_cast<double>(n), 1.0));
        const auto est = solve_condenser(c, M, opts);
        rows.push_back(SweepRow{r, est.lower, est.value, est.upper});
    }
    return rows;
}

} // namespace slcap
