#include "coupled/sampling.hpp"

#include <cmath>
#include <random>

#include "coupled/errors.hpp"

namespace coupled {

SamplerPolicy SamplerPolicy::default_for(std::size_t dim) {
    if (dim == 0) throw ConfigurationError("sampler dimension must be positive");
    // n nodes give n(n-1)/2 pairs; n <= 1414 keeps that under 1e6.
    constexpr double kMaxNodes = 1414.0;
    auto per_axis = static_cast<std::size_t>(std::floor(std::pow(kMaxNodes, 1.0 / dim)));
    SamplerPolicy p;
    p.grid_points = per_axis < 2 ? 2 : per_axis;
    return p;
}

PointCloud grid_nodes(const Box& box, std::size_t per_axis) {
    PointCloud cloud;
    cloud.dim = box.dim();
    if (per_axis == 0 || box.dim() == 0) return cloud;
    if (!box.bounded()) throw ConfigurationError("grid sampling requires a bounded domain");
    if (per_axis == 1) throw ConfigurationError("grid needs at least two nodes per axis");

    std::vector<std::vector<double>> axes;
    axes.reserve(box.dim());
    for (const auto& side : box.sides()) {
        std::vector<double> nodes;
        if (side.width() == 0.0) {
            nodes.push_back(side.lo);
        } else {
            const double denom = static_cast<double>(per_axis - 1);
            for (std::size_t j = 0; j < per_axis; ++j) {
                nodes.push_back(side.lo + (side.width() * static_cast<double>(j)) / denom);
            }
            nodes.back() = side.hi;
        }
        axes.push_back(std::move(nodes));
    }

    std::size_t total = 1;
    for (const auto& a : axes) total *= a.size();
    cloud.coords.reserve(total * box.dim());

    // Last axis varies fastest.
    std::vector<std::size_t> idx(box.dim(), 0);
    for (std::size_t n = 0; n < total; ++n) {
        for (std::size_t d = 0; d < box.dim(); ++d) cloud.coords.push_back(axes[d][idx[d]]);
        for (std::size_t d = box.dim(); d-- > 0;) {
            if (++idx[d] < axes[d].size()) break;
            idx[d] = 0;
        }
    }
    return cloud;
}

PointCloud uniform_points(const Box& box, std::size_t count, std::uint64_t seed) {
    PointCloud cloud;
    cloud.dim = box.dim();
    if (count == 0) return cloud;
    if (!box.bounded()) throw ConfigurationError("random sampling requires a bounded domain");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    cloud.coords.reserve(count * box.dim());
    for (std::size_t n = 0; n < count; ++n) {
        for (const auto& side : box.sides()) {
            cloud.coords.push_back(side.lo + side.width() * unit(rng));
        }
    }
    return cloud;
}

Box product_box(const Box& first, const Box& second) {
    std::vector<Interval> sides(first.sides().begin(), first.sides().end());
    sides.insert(sides.end(), second.sides().begin(), second.sides().end());
    return Box(std::move(sides));
}

}  // namespace coupled
