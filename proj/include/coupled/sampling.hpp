#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "coupled/metric.hpp"

namespace coupled {

/// How certificate and Lipschitz checks pick the pairs they test.
///
/// The full grid has `grid_points` nodes per axis over the product domain
/// (every unordered pair of nodes is tested); `random_pairs` additional pairs
/// are drawn uniformly from the domain with a generator seeded by `seed`.
struct SamplerPolicy {
    std::size_t grid_points = 0;
    std::size_t random_pairs = 0;
    std::uint64_t seed = 0;

    /// Grid resolution keeping the pair count of a `dim`-dimensional grid at or
    /// below one million.
    [[nodiscard]] static SamplerPolicy default_for(std::size_t dim);
};

/// Row-major list of points; each point has `dim` coordinates.
struct PointCloud {
    std::size_t dim = 0;
    std::vector<double> coords;

    [[nodiscard]] std::size_t size() const noexcept { return dim == 0 ? 0 : coords.size() / dim; }
    [[nodiscard]] const double* at(std::size_t i) const noexcept { return coords.data() + i * dim; }
};

/// Tensor grid with `per_axis` nodes per side. Node j on side [lo, hi] is
/// lo + ((hi - lo) * j) / (per_axis - 1), which lands exactly on decimal
/// breakpoints such as 0.8 on [0, 1]. Zero-width sides contribute one node.
[[nodiscard]] PointCloud grid_nodes(const Box& box, std::size_t per_axis);

/// `count` uniform points in `box`, deterministic for a given seed.
[[nodiscard]] PointCloud uniform_points(const Box& box, std::size_t count, std::uint64_t seed);

/// Concatenation of two boxes.
[[nodiscard]] Box product_box(const Box& first, const Box& second);

}  // namespace coupled
