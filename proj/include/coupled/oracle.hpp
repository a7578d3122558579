#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "coupled/metric.hpp"
#include "coupled/system.hpp"

namespace coupled {

// Reference solvers used to check the iteration. They share no code path with
// solve().

/// z -> A z + b on the concatenated point (x, y), A stored row-major.
struct AffineResponse {
    std::size_t first_dim = 1;
    std::vector<double> matrix;  ///< n * n, row-major
    std::vector<double> offset;  ///< n

    [[nodiscard]] std::size_t dim() const noexcept { return offset.size(); }
    [[nodiscard]] double a(std::size_t row, std::size_t col) const {
        return matrix[row * dim() + col];
    }
    /// A z + b
    [[nodiscard]] std::vector<double> apply(std::span<const double> z) const;
};

/// Solves (I - A) z = b by Gaussian elimination with partial pivoting. Throws
/// SingularSystem if a pivot falls to 1e-12 or below.
[[nodiscard]] ProductPoint affine_fixed_point(const AffineResponse& ar);

/// Residual rho(p, G p) minimized over a tensor grid of the product domain.
///
/// Grid nodes that are local minima of the residual (no neighbour strictly
/// lower) are refined in `refinements` rounds; each round re-grids a box ten
/// times narrower around the best node (at least two cells either side, which
/// only matters below 41 nodes per axis). Returns the refined points whose
/// residual is at most four final cell diameters, merging points that lie
/// within one coarse cell of each other, in grid order.
[[nodiscard]] std::vector<ProductPoint> grid_fixed_point(const ResponseSystem& sys,
                                                         std::size_t resolution,
                                                         std::size_t refinements = 3);

using ScalarMap = std::function<double(std::span<const double>)>;

struct Derivative {
    double value;
    /// Set when the central stencil left `bounds` and a one-sided quotient was used.
    bool one_sided = false;
};

/// (f(p + h e_i) - f(p - h e_i)) / (2h). When `bounds` is given and one side of
/// the stencil leaves it, falls back to the one-sided quotient on the other side.
[[nodiscard]] Derivative finite_difference(const ScalarMap& f, std::span<const double> point,
                                           std::size_t index, double h,
                                           const Box* bounds = nullptr);

}  // namespace coupled
