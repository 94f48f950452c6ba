#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace slcap {

/// One piece of a piecewise-constant function: the function takes `value`
/// on a set of Lebesgue measure `measure` (location is irrelevant, only the
/// distribution function matters).
struct Piece {
    double value = 0.0;
    double measure = 0.0;
};

/// Canonical nonnegative piecewise-constant function given by (value, measure)
/// pieces. Canonical form: values strictly decreasing, equal values merged,
/// zero values dropped. The ambient measure is implicit and may be infinite;
/// the function is 0 outside the stored pieces.
///
/// Viewed on (0, infinity), the canonical piece list is the nonincreasing
/// rearrangement itself: piece i takes value v_i on the cumulative-measure
/// interval [T_i, T_{i+1}).
class StepFunction {
  public:
    StepFunction() = default;

    /// Canonicalize an arbitrary piece list (sort by value descending, merge
    /// exact equal values, drop zero values). Negative values are taken by
    /// absolute value, mirroring |f|.
    static StepFunction from_pieces(std::vector<Piece> raw) {
        for (auto& p : raw) {
            if (!(p.measure > 0.0)) {
                throw std::invalid_argument("StepFunction: piece measures must be positive");
            }
            if (!std::isfinite(p.measure) || !std::isfinite(p.value)) {
                throw std::invalid_argument("StepFunction: pieces must be finite");
            }
            p.value = std::fabs(p.value);
        }
        std::sort(raw.begin(), raw.end(),
                  [](const Piece& a, const Piece& b) { return a.value > b.value; });
        StepFunction f;
        for (const auto& p : raw) {
            if (p.value == 0.0) continue;
            if (!f.pieces_.empty() && f.pieces_.back().value == p.value) {
                f.pieces_.back().measure += p.measure;
            } else {
                f.pieces_.push_back(p);
            }
        }
        f.rebuild_cumulative();
        return f;
    }

    static StepFunction indicator(double measure, double value = 1.0) {
        return from_pieces({Piece{value, measure}});
    }

    const std::vector<Piece>& pieces() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }
    std::size_t size() const { return pieces_.size(); }

    /// Total measure of the support.
    double total_measure() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

    /// Cumulative-measure breakpoints T_0 = 0 < T_1 < ... < T_k.
    const std::vector<double>& breakpoints() const { return cumulative_prefixed_; }

    /// Integral of the function over its whole domain.
    double integral() const {
        double s = 0.0;
        for (const auto& p : pieces_) s += p.value * p.measure;
        return s;
    }

    /// lambda_[f](t): measure of { |f| > t } (strict inequality, right continuous).
    double distribution(double t) const {
        if (t < 0.0) throw std::domain_error("distribution: threshold must be >= 0");
        double s = 0.0;
        for (const auto& p : pieces_) {
            if (p.value > t) {
                s += p.measure;
            } else {
                break; // values are sorted decreasing
            }
        }
        return s;
    }

    /// Value of the rearrangement f* at t >= 0 (right-continuous; 0 beyond the
    /// total piece measure).
    double value_at(double t) const {
        if (t < 0.0) throw std::domain_error("value_at: t must be >= 0");
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            if (t < cumulative_[i]) return pieces_[i].value;
        }
        return 0.0;
    }

    /// Exact head integral int_0^t f*(s) ds from the piecewise structure.
    double head_integral(double t) const {
        if (t < 0.0) throw std::domain_error("head_integral: t must be >= 0");
        double acc = 0.0;
        double prev = 0.0;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const double hi = cumulative_[i];
            if (t <= hi) {
                acc += pieces_[i].value * (t - prev);
                return acc;
            }
            acc += pieces_[i].value * (hi - prev);
            prev = hi;
        }
        return acc; // constant beyond the support
    }

    /// Multiply all values by c > 0 (exact homogeneity; canonical order kept).
    StepFunction scaled_values(double c) const {
        if (!(c > 0.0)) throw std::invalid_argument("scaled_values: factor must be > 0");
        std::vector<Piece> raw = pieces_;
        for (auto& p : raw) p.value *= c;
        return from_pieces(std::move(raw));
    }

    /// Multiply all measures by s > 0 (dilation).
    StepFunction scaled_measures(double s) const {
        if (!(s > 0.0)) throw std::invalid_argument("scaled_measures: factor must be > 0");
        std::vector<Piece> raw = pieces_;
        for (auto& p : raw) p.measure *= s;
        return from_pieces(std::move(raw));
    }

    /// Raise all values to the power alpha > 0 and re-canonicalize.
    StepFunction powered_values(double alpha) const {
        if (!(alpha > 0.0)) throw std::invalid_argument("powered_values: alpha must be > 0");
        std::vector<Piece> raw = pieces_;
        for (auto& p : raw) p.value = std::pow(p.value, alpha);
        return from_pieces(std::move(raw));
    }

    bool operator==(const StepFunction& other) const {
        if (pieces_.size() != other.pieces_.size()) return false;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            if (pieces_[i].value != other.pieces_[i].value ||
                pieces_[i].measure != other.pieces_[i].measure) {
                return false;
            }
        }
        return true;
    }

  private:
    void rebuild_cumulative() {
        cumulative_.clear();
        cumulative_prefixed_.assign(1, 0.0);
        double acc = 0.0;
        for (const auto& p : pieces_) {
            acc += p.measure;
            cumulative_.push_back(acc);
            cumulative_prefixed_.push_back(acc);
        }
        if (!cumulative_.empty() && !std::isfinite(cumulative_.back())) {
            throw std::invalid_argument("StepFunction: total measure must be finite");
        }
    }

    std::vector<Piece> pieces_;           // canonical, values strictly decreasing
    std::vector<double> cumulative_;      // T_1, ..., T_k
    std::vector<double> cumulative_prefixed_; // 0, T_1, ..., T_k
};

/// lambda_[f](t) as a free function.
inline double distribution(const StepFunction& f, double t) { return f.distribution(t); }

/// Nonincreasing rearrangement of an arbitrary piece list.
inline StepFunction rearrangement(std::vector<Piece> raw) {
    return StepFunction::from_pieces(std::move(raw));
}

/// Rearranging a canonical function is the identity.
inline StepFunction rearrangement(const StepFunction& f) { return f; }

/// f**(t) = (1/t) int_0^t f*(s) ds, exact from the piecewise structure.
/// Defined for all t > 0, including beyond the support.
inline double maximal_function(const StepFunction& fstar, double t) {
    if (!(t > 0.0)) throw std::domain_error("maximal_function: t must be > 0");
    return fstar.head_integral(t) / t;
}

/// Sampled grid carrier: n-dimensional array of cell values, each cell of
/// measure h^n. Used to bridge finite-difference data to rearrangements.
struct SampledGrid {
    int dimension = 1;              // 1 or 2
    double h = 1.0;                 // cell size
    std::vector<double> values;     // row-major for dimension 2
    std::vector<int> shape;         // cells per axis
    std::vector<double> origin;     // offset of the first cell corner

    void validate() const {
        if (dimension != 1 && dimension != 2) {
            throw std::invalid_argument("SampledGrid: dimension must be 1 or 2");
        }
        if (!(h > 0.0)) throw std::invalid_argument("SampledGrid: h must be > 0");
        if (static_cast<int>(shape.size()) != dimension) {
            throw std::invalid_argument("SampledGrid: shape must have one entry per axis");
        }
        std::size_t count = 1;
        for (int s : shape) {
            if (s < 1) throw std::invalid_argument("SampledGrid: each axis needs >= 1 cell");
            count *= static_cast<std::size_t>(s);
        }
        if (values.size() != count) {
            throw std::invalid_argument("SampledGrid: value count does not match shape");
        }
    }

    double cell_measure() const {
        double m = h;
        for (int d = 1; d < dimension; ++d) m *= h;
        return m;
    }
};

/// Sort absolute cell values descending and assign measure h^n per cell.
inline StepFunction rearrange_sampled(const SampledGrid& g) {
    g.validate();
    const double m = g.cell_measure();
    std::vector<Piece> raw;
    raw.reserve(g.values.size());
    for (double v : g.values) raw.push_back(Piece{std::fabs(v), m});
    return StepFunction::from_pieces(std::move(raw));
}

/// Rearrange a plain vector of magnitudes with a common measure per entry.
inline StepFunction rearrange_values(const std::vector<double>& values, double measure_each) {
    std::vector<Piece> raw;
    raw.reserve(values.size());
    for (double v : values) raw.push_back(Piece{std::fabs(v), measure_each});
    return StepFunction::from_pieces(std::move(raw));
}

} // namespace slcap
