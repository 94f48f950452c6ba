#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace slcap {

/// Finite-difference domain: a 1-D or 2-D cell grid with spacing h and a
/// boundary mask of cells where admissible functions vanish. The mask is
/// nonempty by construction (bounded domain).
struct GridDomain {
    int dimension = 2;
    std::vector<int> shape;     // cells per axis
    double h = 1.0;
    std::vector<char> boundary; // 1 = boundary cell (u = 0 there)

    std::size_t cell_count() const {
        std::size_t c = 1;
        for (int s : shape) c *= static_cast<std::size_t>(s);
        return c;
    }

    int index(int i, int j = 0) const {
        return dimension == 1 ? i : i * shape[1] + j;
    }

    bool is_boundary(int c) const { return boundary[static_cast<std::size_t>(c)] != 0; }

    void validate() const {
        if (dimension != 1 && dimension != 2) {
            throw std::invalid_argument("GridDomain: dimension must be 1 or 2");
        }
        if (static_cast<int>(shape.size()) != dimension) {
            throw std::invalid_argument("GridDomain: shape size must match dimension");
        }
        for (int s : shape) {
            if (s < 3) throw std::invalid_argument("GridDomain: need >= 3 cells per axis");
        }
        if (!(h > 0.0)) throw std::invalid_argument("GridDomain: h must be > 0");
        if (boundary.size() != cell_count()) {
            throw std::invalid_argument("GridDomain: boundary mask size mismatch");
        }
        if (std::find(boundary.begin(), boundary.end(), char(1)) == boundary.end()) {
            throw std::invalid_argument("GridDomain: boundary mask must be nonempty");
        }
    }

    double cell_measure() const {
        double m = h;
        for (int d = 1; d < dimension; ++d) m *= h;
        return m;
    }

    /// Rectangular domain whose outermost cell ring is the boundary.
    static GridDomain box(int dimension, std::vector<int> shape, double h) {
        GridDomain d;
        d.dimension = dimension;
        d.shape = std::move(shape);
        d.h = h;
        d.boundary.assign(d.cell_count(), 0);
        if (dimension == 1) {
            d.boundary.front() = 1;
            d.boundary.back() = 1;
        } else {
            for (int i = 0; i < d.shape[0]; ++i) {
                for (int j = 0; j < d.shape[1]; ++j) {
                    if (i == 0 || j == 0 || i == d.shape[0] - 1 || j == d.shape[1] - 1) {
                        d.boundary[static_cast<std::size_t>(d.index(i, j))] = 1;
                    }
                }
            }
        }
        d.validate();
        return d;
    }

    /// Disk of the given radius centred at the origin, embedded in a square
    /// grid with two extra padding layers; cells whose centre leaves the disk
    /// form the boundary mask.
    static GridDomain disk(double radius, double h) {
        if (!(radius > 0.0) || !(h > 0.0) || radius < 4.0 * h) {
            throw std::invalid_argument("GridDomain::disk: need radius >= 4h > 0");
        }
        const double half = radius + 2.0 * h;
        const int m = static_cast<int>(std::ceil(2.0 * half / h));
        GridDomain d;
        d.dimension = 2;
        d.shape = {m, m};
        d.h = h;
        d.boundary.assign(d.cell_count(), 0);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                const double x = -half + (i + 0.5) * h;
                const double y = -half + (j + 0.5) * h;
                const bool edge = (i == 0 || j == 0 || i == m - 1 || j == m - 1);
                if (edge || x * x + y * y >= radius * radius) {
                    d.boundary[static_cast<std::size_t>(d.index(i, j))] = 1;
                }
            }
        }
        d.validate();
        return d;
    }

    /// Cell centre coordinates for the disk construction (origin-centred).
    std::pair<double, double> disk_cell_center(int i, int j) const {
        const double half = 0.5 * h * shape[0];
        const double halfy = dimension == 2 ? 0.5 * h * shape[1] : 0.0;
        return {-half + (i + 0.5) * h, dimension == 2 ? -halfy + (j + 0.5) * h : 0.0};
    }

    /// Copy of the domain with `layers` extra non-boundary rings inserted
    /// between the old interior and a fresh outer boundary ring. Returns the
    /// enlarged domain and the index offset of the old cells per axis.
    GridDomain padded(int layers, int& offset) const {
        offset = layers;
        GridDomain d;
        d.dimension = dimension;
        d.h = h;
        d.shape = shape;
        for (int& s : d.shape) s += 2 * layers;
        d.boundary.assign(d.cell_count(), 0);
        if (dimension == 1) {
            d.boundary.front() = 1;
            d.boundary.back() = 1;
        } else {
            for (int i = 0; i < d.shape[0]; ++i) {
                for (int j = 0; j < d.shape[1]; ++j) {
                    if (i == 0 || j == 0 || i == d.shape[0] - 1 || j == d.shape[1] - 1) {
                        d.boundary[static_cast<std::size_t>(d.index(i, j))] = 1;
                    }
                }
            }
        }
        d.validate();
        return d;
    }
};

/// Subset of interior cells (flat indices, sorted, unique).
struct CellSet {
    std::vector<int> cells;

    CellSet() = default;
    explicit CellSet(std::vector<int> c) : cells(std::move(c)) { normalize(); }

    void normalize() {
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    }

    bool empty() const { return cells.empty(); }

    CellSet united(const CellSet& other) const {
        std::vector<int> out;
        out.reserve(cells.size() + other.cells.size());
        std::set_union(cells.begin(), cells.end(), other.cells.begin(), other.cells.end(),
                       std::back_inserter(out));
        return CellSet(std::move(out));
    }

    bool contains(int c) const {
        return std::binary_search(cells.begin(), cells.end(), c);
    }

    bool subset_of(const CellSet& other) const {
        return std::includes(other.cells.begin(), other.cells.end(), cells.begin(),
                             cells.end());
    }

    void check_interior(const GridDomain& d) const {
        for (int c : cells) {
            if (c < 0 || static_cast<std::size_t>(c) >= d.cell_count()) {
                throw std::invalid_argument("CellSet: cell index out of range");
            }
            if (d.is_boundary(c)) {
                throw std::invalid_argument("CellSet: cell set touches the boundary mask");
            }
        }
    }

    /// Axis-aligned rectangle of cells [i0, i1] x [j0, j1].
    static CellSet rectangle(const GridDomain& d, int i0, int i1, int j0 = 0, int j1 = 0) {
        std::vector<int> cells;
        if (d.dimension == 1) {
            for (int i = i0; i <= i1; ++i) cells.push_back(i);
        } else {
            for (int i = i0; i <= i1; ++i) {
                for (int j = j0; j <= j1; ++j) cells.push_back(d.index(i, j));
            }
        }
        return CellSet(std::move(cells));
    }

    /// Cells whose centre lies within `radius` of the grid centre.
    static CellSet disk(const GridDomain& d, double radius) {
        std::vector<int> cells;
        for (int i = 0; i < d.shape[0]; ++i) {
            for (int j = 0; j < (d.dimension == 2 ? d.shape[1] : 1); ++j) {
                const auto [x, y] = d.disk_cell_center(i, j);
                const int c = d.index(i, j);
                if (x * x + y * y <= radius * radius && !d.is_boundary(c)) {
                    cells.push_back(c);
                }
            }
        }
        return CellSet(std::move(cells));
    }

    /// The interior cell nearest to the grid centre.
    static CellSet center_cell(const GridDomain& d) {
        double best = std::numeric_limits<double>::infinity();
        int best_c = -1;
        for (int i = 0; i < d.shape[0]; ++i) {
            for (int j = 0; j < (d.dimension == 2 ? d.shape[1] : 1); ++j) {
                const int c = d.index(i, j);
                if (d.is_boundary(c)) continue;
                const auto [x, y] = d.disk_cell_center(i, j);
                const double r2 = x * x + y * y;
                if (r2 < best) {
                    best = r2;
                    best_c = c;
                }
            }
        }
        if (best_c < 0) throw std::invalid_argument("CellSet::center_cell: no interior cell");
        return CellSet({best_c});
    }
};

} // namespace slcap
