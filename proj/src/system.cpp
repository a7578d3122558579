#include "coupled/system.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "coupled/errors.hpp"

namespace coupled {

std::string_view to_string(Projection p) noexcept {
    switch (p) {
        case Projection::ClampBelowAtZero: return "clamp-below-at-zero";
        case Projection::ClampToBox: return "clamp-to-box";
        case Projection::None: return "none";
    }
    return "unknown";
}

Projection parse_projection(std::string_view name) {
    if (name == "clamp-below-at-zero") return Projection::ClampBelowAtZero;
    if (name == "clamp-to-box") return Projection::ClampToBox;
    if (name == "none") return Projection::None;
    throw ConfigurationError("unknown projection '" + std::string(name) + "'");
}

ResponseSystem::ResponseSystem(ResponseMap first, ResponseMap second, Box first_domain,
                               Box second_domain, Projection projection, bool symmetric_hint)
    : first_(std::move(first)),
      second_(std::move(second)),
      first_domain_(std::move(first_domain)),
      second_domain_(std::move(second_domain)),
      projection_(projection),
      symmetric_hint_(symmetric_hint) {
    if (!first_ || !second_) throw ConfigurationError("response maps must be callable");
    if (first_domain_.dim() == 0 || second_domain_.dim() == 0) {
        throw ConfigurationError("domain boxes must have at least one axis");
    }
}

bool ResponseSystem::contains(const ProductPoint& p) const {
    return first_domain_.contains(p.first) && second_domain_.contains(p.second);
}

Bundle ResponseSystem::raw_first(const ProductPoint& p) const {
    Bundle out = first_(p);
    if (out.size() != first_domain_.dim()) {
        throw DimensionMismatch("F1 returned " + std::to_string(out.size()) +
                                " coordinates, domain has " +
                                std::to_string(first_domain_.dim()));
    }
    return out;
}

Bundle ResponseSystem::raw_second(const ProductPoint& p) const {
    Bundle out = second_(p);
    if (out.size() != second_domain_.dim()) {
        throw DimensionMismatch("F2 returned " + std::to_string(out.size()) +
                                " coordinates, domain has " +
                                std::to_string(second_domain_.dim()));
    }
    return out;
}

namespace {

Bundle project_bundle(const Bundle& b, const Box& box, Projection policy) {
    if (policy == Projection::None) return b;
    std::vector<double> c(b.begin(), b.end());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (policy == Projection::ClampBelowAtZero) {
            c[i] = std::max(c[i], 0.0);
        } else {
            c[i] = std::clamp(c[i], box[i].lo, box[i].hi);
        }
    }
    return Bundle(std::move(c));
}

}  // namespace

ProductPoint ResponseSystem::project(const ProductPoint& raw) const {
    return ProductPoint{project_bundle(raw.first, first_domain_, projection_),
                        project_bundle(raw.second, second_domain_, projection_)};
}

ProductPoint ResponseSystem::apply(const ProductPoint& p) const {
    // Both evaluations read the same p.
    ProductPoint raw{raw_first(p), raw_second(p)};
    return project(raw);
}

ResponseSystem ResponseSystem::with_projection(Projection p) const {
    ResponseSystem copy = *this;
    copy.projection_ = p;
    return copy;
}

}  // namespace coupled
