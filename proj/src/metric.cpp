#include "coupled/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coupled/errors.hpp"

namespace coupled {

namespace {

void validate_coords(const std::vector<double>& coords) {
    if (coords.empty()) {
        throw DimensionMismatch("bundle must have at least one coordinate");
    }
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (!std::isfinite(coords[i])) {
            throw DomainError("bundle coordinate " + std::to_string(i) + " is not finite");
        }
    }
}

void validate_sides(const std::vector<Interval>& sides) {
    for (const auto& s : sides) {
        if (std::isnan(s.lo) || std::isnan(s.hi) || s.lo > s.hi) {
            throw ConfigurationError("box side must satisfy lo <= hi");
        }
    }
}

}  // namespace

Bundle::Bundle(std::initializer_list<double> coords) : coords_(coords) {
    validate_coords(coords_);
}

Bundle::Bundle(std::vector<double> coords) : coords_(std::move(coords)) {
    validate_coords(coords_);
}

Box::Box(std::initializer_list<Interval> sides) : sides_(sides) { validate_sides(sides_); }

Box::Box(std::vector<Interval> sides) : sides_(std::move(sides)) { validate_sides(sides_); }

Box Box::cube(std::size_t dim, Interval side) {
    return Box(std::vector<Interval>(dim, side));
}

bool Box::contains(const Bundle& b) const {
    if (b.size() != sides_.size()) {
        throw DimensionMismatch("bundle of dimension " + std::to_string(b.size()) +
                                " checked against box of dimension " +
                                std::to_string(sides_.size()));
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!sides_[i].contains(b[i])) return false;
    }
    return true;
}

bool Box::bounded() const noexcept {
    return std::all_of(sides_.begin(), sides_.end(), [](const Interval& s) {
        return std::isfinite(s.lo) && std::isfinite(s.hi);
    });
}

bool Box::degenerate() const noexcept {
    return std::all_of(sides_.begin(), sides_.end(),
                       [](const Interval& s) { return s.width() == 0.0; });
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("l1_distance: dimensions " + std::to_string(a.size()) +
                                " and " + std::to_string(b.size()) + " differ");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
    return sum;
}

double l1_distance(const Bundle& a, const Bundle& b) {
    return l1_distance(a.coords(), b.coords());
}

double product_distance(const ProductPoint& p, const ProductPoint& q) {
    return l1_distance(p.first, q.first) + l1_distance(p.second, q.second);
}

std::vector<double> concat(const ProductPoint& p) {
    std::vector<double> z(p.first.begin(), p.first.end());
    z.insert(z.end(), p.second.begin(), p.second.end());
    return z;
}

ProductPoint split(std::span<const double> z, std::size_t first_dim) {
    if (first_dim == 0 || first_dim >= z.size()) {
        throw DimensionMismatch("split: first_dim must leave both bundles non-empty");
    }
    return ProductPoint{Bundle(std::vector<double>(z.begin(), z.begin() + first_dim)),
                        Bundle(std::vector<double>(z.begin() + first_dim, z.end()))};
}

}  // namespace coupled
