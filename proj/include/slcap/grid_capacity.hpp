#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "slcap/condenser_solver.hpp"
#include "slcap/exponents.hpp"
#include "slcap/grid_domain.hpp"
#include "slcap/lorentz_norms.hpp"
#include "slcap/step_function.hpp"

namespace slcap {

/// Which Lorentz flavor the discrete capacity minimizes: the quasinorm
/// ||grad u||_{p,q}^p or the maximal-function norm ||grad u||_{(p,q)}^p.
enum class CapacityFlavor { quasinorm, norm };

struct GridSolveOptions {
    long max_iterations = 20000; // overall first-order budget per solve
    double tolerance = 1e-8;     // residual target
    unsigned long long seed = 7ULL;
};

struct GridCapacityResult {
    double value = 0.0;
    long iterations = 0;
    double residual = 0.0;
    bool converged = false;
    std::vector<double> u; // full cell field of the reported minimizer
};

namespace grid_detail {

/// Forward-difference operator on a domain with fixed boundary/target cells.
/// z is stored cell-major with `dim` components per cell; components whose
/// forward neighbour leaves the grid are identically zero.
class GridOperator {
  public:
    GridOperator(const GridDomain& d, const CellSet& target) : d_(d) {
        d_.validate();
        target.check_interior(d_);
        const std::size_t C = d_.cell_count();
        fixed_value_.assign(C, 0.0);
        is_free_.assign(C, 1);
        for (std::size_t c = 0; c < C; ++c) {
            if (d_.is_boundary(static_cast<int>(c))) is_free_[c] = 0;
        }
        for (int c : target.cells) {
            is_free_[static_cast<std::size_t>(c)] = 0;
            fixed_value_[static_cast<std::size_t>(c)] = 1.0;
        }
        for (std::size_t c = 0; c < C; ++c) {
            if (is_free_[c]) free_cells_.push_back(static_cast<int>(c));
        }
    }

    const GridDomain& domain() const { return d_; }
    std::size_t cell_count() const { return d_.cell_count(); }
    std::size_t free_count() const { return free_cells_.size(); }
    int dim() const { return d_.dimension; }

    std::vector<double> full_field(const std::vector<double>& ufree) const {
        std::vector<double> full = fixed_value_;
        for (std::size_t k = 0; k < free_cells_.size(); ++k) {
            full[static_cast<std::size_t>(free_cells_[k])] = ufree[k];
        }
        return full;
    }

    std::vector<double> restrict_free(const std::vector<double>& full) const {
        std::vector<double> out(free_cells_.size());
        for (std::size_t k = 0; k < free_cells_.size(); ++k) {
            out[k] = full[static_cast<std::size_t>(free_cells_[k])];
        }
        return out;
    }

    void apply_D(const std::vector<double>& full, std::vector<double>& z) const {
        const int dim = d_.dimension;
        z.assign(cell_count() * static_cast<std::size_t>(dim), 0.0);
        const double inv_h = 1.0 / d_.h;
        if (dim == 1) {
            const int nx = d_.shape[0];
            for (int i = 0; i + 1 < nx; ++i) {
                z[static_cast<std::size_t>(i)] = (full[i + 1] - full[i]) * inv_h;
            }
        } else {
            const int nx = d_.shape[0], ny = d_.shape[1];
            for (int i = 0; i < nx; ++i) {
                for (int j = 0; j < ny; ++j) {
                    const std::size_t c = static_cast<std::size_t>(i * ny + j);
                    if (i + 1 < nx) z[2 * c] = (full[c + ny] - full[c]) * inv_h;
                    if (j + 1 < ny) z[2 * c + 1] = (full[c + 1] - full[c]) * inv_h;
                }
            }
        }
    }

    void apply_Dt(const std::vector<double>& z, std::vector<double>& out_full) const {
        const int dim = d_.dimension;
        out_full.assign(cell_count(), 0.0);
        const double inv_h = 1.0 / d_.h;
        if (dim == 1) {
            const int nx = d_.shape[0];
            for (int i = 0; i + 1 < nx; ++i) {
                const double v = z[static_cast<std::size_t>(i)] * inv_h;
                out_full[i] -= v;
                out_full[i + 1] += v;
            }
        } else {
            const int nx = d_.shape[0], ny = d_.shape[1];
            for (int i = 0; i < nx; ++i) {
                for (int j = 0; j < ny; ++j) {
                    const std::size_t c = static_cast<std::size_t>(i * ny + j);
                    if (i + 1 < nx) {
                        const double v = z[2 * c] * inv_h;
                        out_full[c] -= v;
                        out_full[c + ny] += v;
                    }
                    if (j + 1 < ny) {
                        const double v = z[2 * c + 1] * inv_h;
                        out_full[c] -= v;
                        out_full[c + 1] += v;
                    }
                }
            }
        }
    }

    std::vector<double> magnitudes(const std::vector<double>& z) const {
        const int dim = d_.dimension;
        std::vector<double> g(cell_count());
        for (std::size_t c = 0; c < cell_count(); ++c) {
            double s = 0.0;
            for (int k = 0; k < dim; ++k) {
                const double v = z[c * static_cast<std::size_t>(dim) + k];
                s += v * v;
            }
            g[c] = std::sqrt(s);
        }
        return g;
    }

    double quasinorm_power_p(const std::vector<double>& full, const LorentzExponents& e) const {
        std::vector<double> z;
        apply_D(full, z);
        const StepFunction f = rearrange_values(magnitudes(z), d_.cell_measure());
        return std::pow(lorentz_quasinorm(f, e).value, e.p);
    }

    std::vector<double> clamped(const std::vector<double>& full) const {
        std::vector<double> out = full;
        for (std::size_t c = 0; c < out.size(); ++c) {
            if (is_free_[c]) out[c] = std::min(1.0, std::max(0.0, out[c]));
        }
        return out;
    }

    /// CG on (D^T D)|free x = b with matrix-free products.
    long conjugate_gradient(const std::vector<double>& b, std::vector<double>& x,
                            double rel_tol, long max_iter) const {
        std::vector<double> z, full, r(b.size()), p(b.size()), Ap(b.size());
        auto apply_A = [&](const std::vector<double>& v, std::vector<double>& out) {
            std::vector<double> emb(cell_count(), 0.0);
            for (std::size_t k = 0; k < free_cells_.size(); ++k) {
                emb[static_cast<std::size_t>(free_cells_[k])] = v[k];
            }
            apply_D(emb, z);
            apply_Dt(z, full);
            out = restrict_free(full);
        };
        apply_A(x, Ap);
        double rr = 0.0;
        for (std::size_t k = 0; k < b.size(); ++k) {
            r[k] = b[k] - Ap[k];
            p[k] = r[k];
            rr += r[k] * r[k];
        }
        double b2 = std::inner_product(b.begin(), b.end(), b.begin(), 0.0);
        const double stop = rel_tol * rel_tol * std::max(b2, 1e-300);
        long it = 0;
        while (it < max_iter && rr > stop) {
            apply_A(p, Ap);
            const double pAp = std::inner_product(p.begin(), p.end(), Ap.begin(), 0.0);
            if (pAp <= 0.0) break;
            const double alpha = rr / pAp;
            double rr_new = 0.0;
            for (std::size_t k = 0; k < b.size(); ++k) {
                x[k] += alpha * p[k];
                r[k] -= alpha * Ap[k];
                rr_new += r[k] * r[k];
            }
            const double beta = rr_new / rr;
            for (std::size_t k = 0; k < b.size(); ++k) p[k] = r[k] + beta * p[k];
            rr = rr_new;
            ++it;
        }
        return it;
    }

    /// Right-hand side of the normal equations for target ||Du - v||^2.
    std::vector<double> normal_rhs(const std::vector<double>& v) const {
        std::vector<double> z, full;
        std::vector<double> fixed_only = fixed_value_;
        apply_D(fixed_only, z);
        for (std::size_t k = 0; k < z.size(); ++k) z[k] = v[k] - z[k];
        apply_Dt(z, full);
        return restrict_free(full);
    }

    const std::vector<double>& fixed_values() const { return fixed_value_; }
    const std::vector<char>& free_mask() const { return is_free_; }

  private:
    GridDomain d_;
    std::vector<double> fixed_value_;
    std::vector<char> is_free_;
    std::vector<int> free_cells_;
};

/// Prox of x -> sum_i tau_i x_(i) over nonnegative vectors: sort, subtract the
/// slot thresholds, pool adjacent violators to restore the nonincreasing
/// order, clamp at zero, unsort.
inline std::vector<double> prox_sorted_weighted_l1(const std::vector<double>& gamma,
                                                   const std::vector<double>& tau) {
    const std::size_t m = gamma.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return gamma[a] > gamma[b]; });
    struct Block {
        double sum;
        std::size_t count;
        double mean() const { return sum / static_cast<double>(count); }
    };
    std::vector<Block> stack;
    stack.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        Block blk{gamma[order[i]] - tau[i], 1};
        while (!stack.empty() && blk.mean() > stack.back().mean()) {
            blk.sum += stack.back().sum;
            blk.count += stack.back().count;
            stack.pop_back();
        }
        stack.push_back(blk);
    }
    std::vector<double> out(m, 0.0);
    std::size_t pos = 0;
    for (const Block& blk : stack) {
        const double v = std::max(0.0, blk.mean());
        for (std::size_t k = 0; k < blk.count; ++k) out[order[pos++]] = v;
    }
    return out;
}

/// Slot weights of the (p,q) quasinorm on equal cell measures: the i-th
/// largest magnitude carries (p/q) ((i+1)^{q/p} - i^{q/p}) h^{n q / p}.
inline std::vector<double> slot_weights(std::size_t count, const LorentzExponents& e,
                                        double cell_measure) {
    std::vector<double> w(count);
    const double qp = e.q / e.p;
    double prev = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double next = std::pow(static_cast<double>(i + 1) * cell_measure, qp);
        w[i] = (e.p / e.q) * (next - prev);
        prev = next;
    }
    return w;
}

/// Exact solve of the q = p = 2 case: the objective is the Dirichlet energy,
/// so the normal equations are the discrete Laplace problem.
inline GridCapacityResult solve_p2(const GridOperator& op, const LorentzExponents& e,
                                   const GridSolveOptions& opts) {
    GridCapacityResult res;
    std::vector<double> x(op.free_count(), 0.0);
    const std::vector<double> zero(op.cell_count() * static_cast<std::size_t>(op.dim()), 0.0);
    const auto b = op.normal_rhs(zero);
    const long iters = op.conjugate_gradient(
        b, x, 1e-13, std::min<long>(opts.max_iterations, 20L * static_cast<long>(b.size()) + 200));
    const auto full = op.clamped(op.full_field(x));
    res.value = op.quasinorm_power_p(full, e);
    res.iterations = iters;
    res.residual = 0.0;
    res.converged = true;
    res.u = full;
    return res;
}

/// Smooth q = p != 2 case: spectral-step projected gradient on the energy
/// sum_c gamma_c^p h^n with box truncation.
inline GridCapacityResult solve_smooth(const GridOperator& op, const LorentzExponents& e,
                                       const GridSolveOptions& opts) {
    const double p = e.p;
    const double hmeas = op.domain().cell_measure();
    const std::size_t F = op.free_count();
    std::vector<double> x(F, 0.0), g(F), x_prev, g_prev;

    auto eval = [&](const std::vector<double>& xf, std::vector<double>& grad) {
        const auto full = op.full_field(xf);
        std::vector<double> z;
        op.apply_D(full, z);
        const auto gamma = op.magnitudes(z);
        double energy = 0.0;
        std::vector<double> wz(z.size(), 0.0);
        const int dim = op.dim();
        for (std::size_t c = 0; c < gamma.size(); ++c) {
            if (gamma[c] > 0.0) {
                energy += std::pow(gamma[c], p) * hmeas;
                const double coeff = p * std::pow(gamma[c], p - 2.0) * hmeas;
                for (int k = 0; k < dim; ++k) {
                    wz[c * static_cast<std::size_t>(dim) + k] =
                        coeff * z[c * static_cast<std::size_t>(dim) + k];
                }
            }
        }
        std::vector<double> full_grad;
        op.apply_Dt(wz, full_grad);
        grad = op.restrict_free(full_grad);
        return energy;
    };

    double f = eval(x, g);
    double best = f;
    std::vector<double> best_x = x;
    double alpha = 1e-3 * op.domain().h * op.domain().h;
    long k = 0;
    const long maxit = std::min<long>(opts.max_iterations, 5000);
    for (; k < maxit; ++k) {
        x_prev = x;
        g_prev = g;
        for (std::size_t i = 0; i < F; ++i) {
            x[i] = std::min(1.0, std::max(0.0, x[i] - alpha * g[i]));
        }
        f = eval(x, g);
        if (f < best) {
            best = f;
            best_x = x;
        }
        double sy = 0.0, ss = 0.0, step = 0.0;
        for (std::size_t i = 0; i < F; ++i) {
            const double s = x[i] - x_prev[i];
            const double y = g[i] - g_prev[i];
            ss += s * s;
            sy += s * y;
            step = std::max(step, std::fabs(s));
        }
        if (step < 1e-14) break;
        alpha = (sy > 1e-300) ? ss / sy : alpha * 2.0;
        alpha = std::min(std::max(alpha, 1e-12), 1e8);
    }
    GridCapacityResult res;
    const auto full = op.clamped(op.full_field(best_x));
    res.value = op.quasinorm_power_p(full, e);
    res.iterations = k;
    res.residual = 0.0;
    res.converged = k < maxit;
    res.u = full;
    return res;
}

/// q = 1 case: ADMM splitting z = Du with the exact prox of the sorted
/// weighted-l1 functional on the gradient magnitudes.
inline GridCapacityResult solve_q1_admm(const GridOperator& op, const LorentzExponents& e,
                                        const GridSolveOptions& opts) {
    const std::size_t C = op.cell_count();
    const int dim = op.dim();
    const std::size_t Z = C * static_cast<std::size_t>(dim);
    const auto w = slot_weights(C, e, op.domain().cell_measure());

    // warm start from the Dirichlet solution
    std::vector<double> x(op.free_count(), 0.0);
    {
        const std::vector<double> zero(Z, 0.0);
        const auto b = op.normal_rhs(zero);
        op.conjugate_gradient(b, x, 1e-10, 4L * static_cast<long>(b.size()) + 100);
    }

    std::vector<double> full = op.full_field(x);
    std::vector<double> z, lam(Z, 0.0), v(Z), z_prev;
    op.apply_D(full, z);

    double rho = 0.0;
    {
        const auto gamma = op.magnitudes(z);
        const double gmax = *std::max_element(gamma.begin(), gamma.end());
        rho = (gmax > 0.0) ? 4.0 * w[0] / gmax : 1.0;
    }

    double best = op.quasinorm_power_p(op.clamped(full), e);
    std::vector<double> best_full = op.clamped(full);

    const long max_admm = std::min<long>(1500, std::max<long>(50, opts.max_iterations));
    long it = 0;
    long last_improvement = 0;
    bool stop = false;
    double rp = 0.0, rd = 0.0;
    std::vector<double> tau(C);
    for (; it < max_admm; ++it) {
        // u-step: least squares against z - lam
        for (std::size_t k = 0; k < Z; ++k) v[k] = z[k] - lam[k];
        const auto b = op.normal_rhs(v);
        op.conjugate_gradient(b, x, 1e-11, 2L * static_cast<long>(b.size()) + 50);
        full = op.full_field(x);
        std::vector<double> Du;
        op.apply_D(full, Du);

        // z-step: prox on the row magnitudes
        for (std::size_t k = 0; k < Z; ++k) v[k] = Du[k] + lam[k];
        auto gamma = op.magnitudes(v);
        for (std::size_t c = 0; c < C; ++c) tau[c] = w[c] / rho;
        const auto gnew = prox_sorted_weighted_l1(gamma, tau);
        z_prev = z;
        for (std::size_t c = 0; c < C; ++c) {
            const double scale = (gamma[c] > 0.0) ? gnew[c] / gamma[c] : 0.0;
            for (int k = 0; k < dim; ++k) {
                z[c * static_cast<std::size_t>(dim) + k] =
                    scale * v[c * static_cast<std::size_t>(dim) + k];
            }
        }

        // dual update and residuals
        rp = 0.0;
        for (std::size_t k = 0; k < Z; ++k) {
            const double r = Du[k] - z[k];
            lam[k] += r;
            rp += r * r;
        }
        rd = 0.0;
        for (std::size_t k = 0; k < Z; ++k) {
            const double dzk = z[k] - z_prev[k];
            rd += dzk * dzk;
        }
        rp = std::sqrt(rp);
        rd = rho * std::sqrt(rd);

        if (it % 10 == 0 || it == max_admm - 1) {
            const auto cand = op.clamped(full);
            const double val = op.quasinorm_power_p(cand, e);
            if (val < best * (1.0 - 1e-12)) {
                last_improvement = it;
            }
            if (val < best) {
                best = val;
                best_full = cand;
            }
        }
        double scale_z = 0.0;
        for (std::size_t k = 0; k < Z; ++k) scale_z = std::max(scale_z, std::fabs(z[k]));
        if (rp <= opts.tolerance * std::max(1.0, scale_z) &&
            rd <= opts.tolerance * std::max(1.0, scale_z)) {
            stop = true;
        }
        // the reported value stagnated while the splitting is already tight
        if (it - last_improvement >= 200 && rp <= 1e-6 * std::max(1.0, scale_z)) {
            stop = true;
        }
        if (stop) {
            ++it;
            break;
        }
        if ((it + 1) % 25 == 0) {
            if (rp > 10.0 * rd) {
                rho *= 2.0;
                for (double& l : lam) l *= 0.5;
            } else if (rd > 10.0 * rp) {
                rho *= 0.5;
                for (double& l : lam) l *= 2.0;
            }
        }
    }
    {
        const auto cand = op.clamped(full);
        const double val = op.quasinorm_power_p(cand, e);
        if (val < best) {
            best = val;
            best_full = cand;
        }
    }
    GridCapacityResult res;
    res.value = best;
    res.iterations = it;
    res.residual = rp;
    res.converged = stop;
    res.u = best_full;
    return res;
}

/// General 1 < q < p case: projected subgradient with normalized diminishing
/// steps on the cell field (box constraints by truncation).
inline GridCapacityResult solve_subgradient(const GridOperator& op, const LorentzExponents& e,
                                            const GridSolveOptions& opts) {
    const std::size_t C = op.cell_count();
    const int dim = op.dim();
    const double hmeas = op.domain().cell_measure();
    const auto w = slot_weights(C, e, hmeas);
    const std::size_t F = op.free_count();
    std::vector<double> x(F, 0.0);
    {
        const std::vector<double> zero(C * static_cast<std::size_t>(dim), 0.0);
        const auto b = op.normal_rhs(zero);
        op.conjugate_gradient(b, x, 1e-10, 4L * static_cast<long>(b.size()) + 100);
        for (double& v : x) v = std::min(1.0, std::max(0.0, v));
    }

    auto eval = [&](const std::vector<double>& xf, std::vector<double>* grad) {
        const auto full = op.full_field(xf);
        std::vector<double> z;
        op.apply_D(full, z);
        auto gamma = op.magnitudes(z);
        std::vector<std::size_t> order(C);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b2) { return gamma[a] > gamma[b2]; });
        double Qq = 0.0;
        std::vector<double> slot(C, 0.0);
        for (std::size_t i = 0; i < C; ++i) {
            Qq += std::pow(gamma[order[i]], e.q) * w[i];
            slot[order[i]] = w[i];
        }
        const double Q = std::pow(Qq, 1.0 / e.q);
        if (grad) {
            std::vector<double> wz(z.size(), 0.0);
            if (Q > 0.0) {
                const double factor = e.p * std::pow(Q, e.p - e.q);
                for (std::size_t c = 0; c < C; ++c) {
                    if (gamma[c] > 0.0) {
                        const double coeff =
                            factor * std::pow(gamma[c], e.q - 1.0) * slot[c] / gamma[c];
                        for (int k = 0; k < dim; ++k) {
                            wz[c * static_cast<std::size_t>(dim) + k] =
                                coeff * z[c * static_cast<std::size_t>(dim) + k];
                        }
                    }
                }
            }
            std::vector<double> fg;
            op.apply_Dt(wz, fg);
            *grad = op.restrict_free(fg);
        }
        return std::pow(Q, e.p);
    };

    std::vector<double> g;
    double best = eval(x, nullptr);
    std::vector<double> best_x = x;
    const long K = opts.max_iterations;
    double prev_best = best;
    double residual = 0.0;
    for (long k = 1; k <= K; ++k) {
        eval(x, &g);
        double gn = 0.0;
        for (double gv : g) gn += gv * gv;
        gn = std::sqrt(gn);
        if (gn == 0.0) break;
        const double step = 0.25 / std::sqrt(static_cast<double>(k));
        for (std::size_t i = 0; i < F; ++i) {
            x[i] = std::min(1.0, std::max(0.0, x[i] - step * g[i] / gn));
        }
        const double f = eval(x, nullptr);
        if (f < best) {
            best = f;
            best_x = x;
        }
        if (k % std::max<long>(1, K / 20) == 0) {
            residual = (prev_best - best) / std::max(best, 1e-300);
            prev_best = best;
        }
    }
    GridCapacityResult res;
    res.value = best;
    res.iterations = K;
    res.residual = residual;
    res.converged = residual <= 1e-4;
    res.u = op.clamped(op.full_field(best_x));
    return res;
}

} // namespace grid_detail

/// Discrete Sobolev-Lorentz capacity of E relative to the grid domain:
/// minimize the Lorentz energy of the forward-difference gradient over cell
/// fields with u = 1 on E, u = 0 on the boundary mask and 0 <= u <= 1.
/// The norm flavor (maximal-function based) is available at q = 1 through the
/// exact identity ||g||_{(p,1)} = p' ||g||_{p,1}.
inline GridCapacityResult discrete_capacity(const CellSet& E, const GridDomain& D,
                                            const LorentzExponents& e,
                                            CapacityFlavor flavor = CapacityFlavor::quasinorm,
                                            const GridSolveOptions& opts = {}) {
    D.validate();
    e.validate();
    if (E.empty()) {
        return GridCapacityResult{0.0, 0, 0.0, true, std::vector<double>(D.cell_count(), 0.0)};
    }
    if (e.q_infinite || e.q > e.p) {
        throw std::invalid_argument("discrete_capacity: requires the convex regime q <= p");
    }
    double factor = 1.0;
    if (flavor == CapacityFlavor::norm) {
        if (e.q != 1.0) {
            throw std::invalid_argument(
                "discrete_capacity: the norm flavor is provided at q = 1 only (exact "
                "p'-multiple of the quasinorm flavor)");
        }
        factor = std::pow(e.p_conjugate(), e.p);
    }
    const grid_detail::GridOperator op(D, E);
    GridCapacityResult res;
    if (e.q == e.p) {
        res = (e.p == 2.0) ? grid_detail::solve_p2(op, e, opts)
                           : grid_detail::solve_smooth(op, e, opts);
    } else if (e.q == 1.0) {
        res = grid_detail::solve_q1_admm(op, e, opts);
    } else {
        res = grid_detail::solve_subgradient(op, e, opts);
    }
    res.value *= factor;
    return res;
}

struct AxiomFailure {
    int trial = 0;
    unsigned long long seed = 0;
    std::string axiom;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct AxiomReport {
    int trials = 0;
    double tolerance = 1e-4;
    int monotonicity_pass = 0;
    int domain_monotonicity_pass = 0;
    int subadditivity_pass = 0;
    int norm_flavor_subadditivity_pass = 0;
    int disjoint_additivity_pass = 0;
    int norm_flavor_checks = 0;
    std::vector<AxiomFailure> failures;

    bool all_passed() const { return failures.empty(); }
};

/// Randomized finite-scale checks of the capacity set-function axioms:
/// monotonicity in E, anti-monotonicity in the domain, countable
/// subadditivity with the flavor-correct exponent, and the disjoint-domain
/// additivity lower bound. Trials are distributed over workers and merged in
/// seed order.
inline AxiomReport axiom_suite(const GridDomain& D, const LorentzExponents& e, int trials,
                               unsigned long long seed, double tolerance = 1e-4,
                               int workers = 0) {
    D.validate();
    if (e.q_infinite || e.q > e.p) {
        throw std::invalid_argument("axiom_suite: requires the convex regime q <= p");
    }
    AxiomReport report;
    report.trials = trials;
    report.tolerance = tolerance;

    struct TrialOutcome {
        bool mono = false, dom = false, sub = false, norm_sub = false, disj = false;
        bool has_norm_check = false;
        unsigned long long seed = 0;
        double mono_lhs = 0, mono_rhs = 0, dom_lhs = 0, dom_rhs = 0;
        double sub_lhs = 0, sub_rhs = 0, disj_lhs = 0, disj_rhs = 0;
    };
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(std::max(trials, 0)));

    auto random_rect = [](std::mt19937_64& rng, const GridDomain& dom) {
        auto pick = [&rng](int lo, int hi) {
            std::uniform_int_distribution<int> d(lo, hi);
            return d(rng);
        };
        const int nx = dom.shape[0];
        const int ny = dom.dimension == 2 ? dom.shape[1] : 1;
        const int i0 = pick(1, nx - 3);
        const int i1 = pick(i0, std::min(nx - 2, i0 + std::max(1, nx / 3)));
        if (dom.dimension == 1) return CellSet::rectangle(dom, i0, i1);
        const int j0 = pick(1, ny - 3);
        const int j1 = pick(j0, std::min(ny - 2, j0 + std::max(1, ny / 3)));
        return CellSet::rectangle(dom, i0, i1, j0, j1);
    };

    auto run_trial = [&](int t) {
        TrialOutcome& out = outcomes[static_cast<std::size_t>(t)];
        out.seed = seed + 0x9e3779b97f4a7c15ULL * static_cast<unsigned long long>(t + 1);
        std::mt19937_64 rng(out.seed);
        const CellSet A = random_rect(rng, D);
        const CellSet B = random_rect(rng, D);
        const CellSet U = A.united(B);

        const double capA = discrete_capacity(A, D, e).value;
        const double capB = discrete_capacity(B, D, e).value;
        const double capU = discrete_capacity(U, D, e).value;

        // (a) monotonicity: A and B sit inside their union
        out.mono_lhs = std::max(capA, capB);
        out.mono_rhs = capU;
        out.mono = out.mono_lhs <= capU * (1.0 + tolerance) + 1e-30;

        // (b) domain monotonicity: enlarging the domain cannot increase cap
        int offset = 0;
        const GridDomain Dbig = D.padded(2, offset);
        std::vector<int> shifted;
        shifted.reserve(A.cells.size());
        for (int c : A.cells) {
            if (D.dimension == 1) {
                shifted.push_back(c + offset);
            } else {
                const int i = c / D.shape[1], j = c % D.shape[1];
                shifted.push_back(Dbig.index(i + offset, j + offset));
            }
        }
        const double capA_big = discrete_capacity(CellSet(shifted), Dbig, e).value;
        out.dom_lhs = capA_big;
        out.dom_rhs = capA;
        out.dom = capA_big <= capA * (1.0 + tolerance) + 1e-30;

        // (c) subadditivity with the flavor-correct exponent
        const double ex = e.q / e.p;
        out.sub_lhs = std::pow(capU, ex);
        out.sub_rhs = std::pow(capA, ex) + std::pow(capB, ex);
        out.sub = out.sub_lhs <= out.sub_rhs * (1.0 + tolerance) + 1e-30;

        if (e.q == 1.0) {
            out.has_norm_check = true;
            const double s = std::pow(e.p_conjugate(), e.p); // norm-flavor multiple
            const double nx = 1.0 / e.p;
            out.norm_sub = std::pow(s * capU, nx) <=
                           (std::pow(s * capA, nx) + std::pow(s * capB, nx)) *
                                   (1.0 + tolerance) +
                               1e-30;
        } else {
            out.norm_sub = true;
        }

        // (d) disjoint-domain additivity lower bound on a split domain
        const CellSet L = random_rect(rng, D);
        const CellSet R = random_rect(rng, D);
        GridDomain split;
        CellSet LR;
        if (D.dimension == 1) {
            const int nx = D.shape[0];
            split = GridDomain::box(1, {2 * nx}, D.h);
            auto& mask = split.boundary;
            mask[static_cast<std::size_t>(nx - 1)] = 1;
            mask[static_cast<std::size_t>(nx)] = 1;
            std::vector<int> cells = L.cells;
            for (int c : R.cells) cells.push_back(c + nx);
            LR = CellSet(std::move(cells));
        } else {
            const int nx = D.shape[0], ny = D.shape[1];
            split = GridDomain::box(2, {nx, 2 * ny}, D.h);
            auto& mask = split.boundary;
            for (int i = 0; i < nx; ++i) {
                mask[static_cast<std::size_t>(split.index(i, ny - 1))] = 1;
                mask[static_cast<std::size_t>(split.index(i, ny))] = 1;
            }
            std::vector<int> cells;
            for (int c : L.cells) {
                const int i = c / ny, j = c % ny;
                cells.push_back(split.index(i, j));
            }
            for (int c : R.cells) {
                const int i = c / ny, j = c % ny;
                cells.push_back(split.index(i, j + ny));
            }
            LR = CellSet(std::move(cells));
        }
        const double capL = discrete_capacity(L, D, e).value;
        const double capR = discrete_capacity(R, D, e).value;
        const double capLR = discrete_capacity(LR, split, e).value;
        out.disj_lhs = capLR;
        out.disj_rhs = capL + capR;
        out.disj = capLR >= (capL + capR) * (1.0 - tolerance) - 1e-30;
    };

    int n_workers = workers > 0 ? workers
                                : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    n_workers = std::min(n_workers, std::max(trials, 1));
    if (n_workers <= 1 || trials <= 1) {
        for (int t = 0; t < trials; ++t) run_trial(t);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int wkr = 0; wkr < n_workers; ++wkr) {
            pool.emplace_back([&, wkr]() {
                for (int t = wkr; t < trials; t += n_workers) run_trial(t);
            });
        }
        for (auto& th : pool) th.join();
    }

    for (int t = 0; t < trials; ++t) {
        const auto& o = outcomes[static_cast<std::size_t>(t)];
        auto record = [&](bool ok, const char* name, double lhs, double rhs, int& counter) {
            if (ok) {
                ++counter;
            } else {
                report.failures.push_back(AxiomFailure{t, o.seed, name, lhs, rhs});
            }
        };
        record(o.mono, "monotonicity", o.mono_lhs, o.mono_rhs, report.monotonicity_pass);
        record(o.dom, "domain_monotonicity", o.dom_lhs, o.dom_rhs,
               report.domain_monotonicity_pass);
        record(o.sub, "subadditivity", o.sub_lhs, o.sub_rhs, report.subadditivity_pass);
        if (o.has_norm_check) {
            ++report.norm_flavor_checks;
            record(o.norm_sub, "norm_flavor_subadditivity", 0.0, 0.0,
                   report.norm_flavor_subadditivity_pass);
        }
        record(o.disj, "disjoint_additivity", o.disj_lhs, o.disj_rhs,
               report.disjoint_additivity_pass);
    }
    return report;
}

struct MctResult {
    bool nondecreasing = false;
    bool stabilized_match = false;
    std::vector<double> chain_values;
    double union_value = 0.0;

    bool ok() const { return nondecreasing && stabilized_match; }
};

/// Finite-grid analog of monotone convergence: along an increasing chain the
/// capacities are nondecreasing and the stabilized tail matches the union.
inline MctResult mct_check(const std::vector<CellSet>& chain, const GridDomain& D,
                           const LorentzExponents& e, double tolerance = 1e-4) {
    if (chain.empty()) throw std::invalid_argument("mct_check: empty chain");
    // the q = 1 monotone convergence statement needs n < p, or n = p > 1
    const double n = static_cast<double>(D.dimension);
    if (e.q_infinite || e.q != 1.0 || !(e.p > n || (e.p == n && n > 1.0))) {
        throw std::invalid_argument("mct_check: requires q = 1 and p > n (or p = n > 1)");
    }
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        if (!chain[k].subset_of(chain[k + 1])) {
            throw std::invalid_argument("mct_check: chain must be increasing");
        }
    }
    MctResult res;
    res.nondecreasing = true;
    for (const auto& E : chain) {
        res.chain_values.push_back(discrete_capacity(E, D, e).value);
    }
    for (std::size_t k = 0; k + 1 < res.chain_values.size(); ++k) {
        if (res.chain_values[k] > res.chain_values[k + 1] * (1.0 + tolerance) + 1e-30) {
            res.nondecreasing = false;
        }
    }
    CellSet whole = chain.front();
    for (const auto& E : chain) whole = whole.united(E);
    res.union_value = discrete_capacity(whole, D, e).value;
    const double last = res.chain_values.back();
    res.stabilized_match =
        std::fabs(last - res.union_value) <= tolerance * std::max({last, res.union_value, 1e-30});
    return res;
}

struct CrossValidation {
    double grid_value = 0.0;
    double radial_value = 0.0;
    double relative_gap = 0.0;
};

/// Compare the finite-difference disk condenser against the radial solver on
/// the same (n, p, q, r); r = 0 uses the single centre cell.
inline CrossValidation cross_validate_radial(double r, int n, const LorentzExponents& e,
                                             double h, std::size_t M = 512,
                                             const SolverOptions& radial_opts = {},
                                             const GridSolveOptions& grid_opts = {}) {
    if (n != 2) {
        throw std::invalid_argument("cross_validate_radial: the grid laboratory is 2-D");
    }
    const GridDomain D = GridDomain::disk(1.0, h);
    const CellSet E = (r > 0.0) ? CellSet::disk(D, r) : CellSet::center_cell(D);
    CrossValidation out;
    out.grid_value = discrete_capacity(E, D, e, CapacityFlavor::quasinorm, grid_opts).value;
    const Condenser c(n, r, e);
    out.radial_value = solve_condenser(c, M, radial_opts).value;
    out.relative_gap = std::fabs(out.grid_value - out.radial_value) /
                       std::max(out.radial_value, 1e-300);
    return out;
}

/// Sup-norm versus gradient bound for grid data vanishing on the outer ring.
inline std::pair<double, double> embedding_check(const SampledGrid& g, int n) {
    g.validate();
    if (g.dimension != n) {
        throw std::invalid_argument("embedding_check: grid dimension must equal n");
    }
    const DimensionConstants dim(n);
    // boundary cells must vanish
    auto at = [&](int i, int j) {
        return g.values[static_cast<std::size_t>(i * g.shape[1] + j)];
    };
    if (g.dimension == 2) {
        for (int i = 0; i < g.shape[0]; ++i) {
            for (int j = 0; j < g.shape[1]; ++j) {
                const bool edge = i == 0 || j == 0 || i == g.shape[0] - 1 || j == g.shape[1] - 1;
                if (edge && at(i, j) != 0.0) {
                    throw std::invalid_argument("embedding_check: boundary cells must be 0");
                }
            }
        }
    }
    double sup = 0.0;
    for (double v : g.values) sup = std::max(sup, std::fabs(v));
    // forward-difference magnitudes
    std::vector<double> mags(g.values.size(), 0.0);
    if (g.dimension == 2) {
        const int nx = g.shape[0], ny = g.shape[1];
        for (int i = 0; i < nx; ++i) {
            for (int j = 0; j < ny; ++j) {
                double gx = 0.0, gy = 0.0;
                if (i + 1 < nx) gx = (at(i + 1, j) - at(i, j)) / g.h;
                if (j + 1 < ny) gy = (at(i, j + 1) - at(i, j)) / g.h;
                mags[static_cast<std::size_t>(i * ny + j)] = std::hypot(gx, gy);
            }
        }
    } else {
        for (std::size_t i = 0; i + 1 < g.values.size(); ++i) {
            mags[i] = std::fabs(g.values[i + 1] - g.values[i]) / g.h;
        }
    }
    const LorentzExponents e(static_cast<double>(n), 1.0);
    const StepFunction f = rearrange_values(mags, g.cell_measure());
    const double grad_norm = lorentz_quasinorm(f, e).value;
    return {sup, grad_norm / (n * std::pow(dim.ball_volume, 1.0 / n))};
}

} // namespace slcap
