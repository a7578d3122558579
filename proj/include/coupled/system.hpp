#pragma once

#include <cstddef>
#include <functional>
#include <string_view>

#include "coupled/metric.hpp"

namespace coupled {

/// Rule that maps a raw response back into the feasible set.
enum class Projection {
    ClampBelowAtZero,  ///< negative coordinates become 0
    ClampToBox,        ///< every coordinate clamped into its domain side
    None,
};

[[nodiscard]] std::string_view to_string(Projection p) noexcept;
/// Parses "clamp-below-at-zero", "clamp-to-box" or "none".
[[nodiscard]] Projection parse_projection(std::string_view name);

/// A player's response: reads the whole product point, returns that player's bundle.
using ResponseMap = std::function<Bundle(const ProductPoint&)>;

/// The pair (F1, F2) with its domain boxes and projection policy.
///
/// Evaluators must be safe for concurrent read-only calls.
class ResponseSystem {
public:
    ResponseSystem(ResponseMap first, ResponseMap second, Box first_domain, Box second_domain,
                   Projection projection = Projection::ClampBelowAtZero,
                   bool symmetric_hint = false);

    [[nodiscard]] const Box& first_domain() const noexcept { return first_domain_; }
    [[nodiscard]] const Box& second_domain() const noexcept { return second_domain_; }
    [[nodiscard]] Projection projection() const noexcept { return projection_; }
    /// True when F2(x, y) = F1(y, x) by construction.
    [[nodiscard]] bool symmetric_hint() const noexcept { return symmetric_hint_; }
    [[nodiscard]] std::size_t dim() const noexcept {
        return first_domain_.dim() + second_domain_.dim();
    }

    [[nodiscard]] bool contains(const ProductPoint& p) const;

    /// Unprojected F1(p); throws Error if the evaluator returns non-finite values.
    [[nodiscard]] Bundle raw_first(const ProductPoint& p) const;
    [[nodiscard]] Bundle raw_second(const ProductPoint& p) const;

    /// Applies the projection policy to a candidate pair. Never moves a point that is
    /// already inside the domain.
    [[nodiscard]] ProductPoint project(const ProductPoint& raw) const;

    /// (project(F1(p)), project(F2(p))), both computed from the same p.
    [[nodiscard]] ProductPoint apply(const ProductPoint& p) const;

    /// Copy with a different projection policy.
    [[nodiscard]] ResponseSystem with_projection(Projection p) const;

private:
    ResponseMap first_;
    ResponseMap second_;
    Box first_domain_;
    Box second_domain_;
    Projection projection_;
    bool symmetric_hint_;
};

}  // namespace coupled
