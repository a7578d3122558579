#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace coupled {

/// Output quantities of one player. For the surplus model a bundle holds
/// (realized production, surplus).
///
/// Non-empty and every coordinate finite; the constructor enforces both.
class Bundle {
public:
    Bundle(std::initializer_list<double> coords);
    explicit Bundle(std::vector<double> coords);

    [[nodiscard]] std::size_t size() const noexcept { return coords_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return coords_[i]; }
    [[nodiscard]] std::span<const double> coords() const noexcept { return coords_; }
    [[nodiscard]] auto begin() const noexcept { return coords_.begin(); }
    [[nodiscard]] auto end() const noexcept { return coords_.end(); }

    friend bool operator==(const Bundle&, const Bundle&) = default;

private:
    std::vector<double> coords_;
};

/// A pair (x, y) in X1 x X2.
struct ProductPoint {
    Bundle first;
    Bundle second;

    friend bool operator==(const ProductPoint&, const ProductPoint&) = default;
};

/// Closed interval [lo, hi].
struct Interval {
    double lo;
    double hi;

    [[nodiscard]] bool contains(double v) const noexcept { return lo <= v && v <= hi; }
    [[nodiscard]] double width() const noexcept { return hi - lo; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Axis-aligned box, one closed interval per coordinate.
class Box {
public:
    Box() = default;
    Box(std::initializer_list<Interval> sides);
    explicit Box(std::vector<Interval> sides);

    /// Same interval on every one of `dim` axes.
    static Box cube(std::size_t dim, Interval side);

    [[nodiscard]] std::size_t dim() const noexcept { return sides_.size(); }
    [[nodiscard]] const Interval& operator[](std::size_t i) const { return sides_[i]; }
    [[nodiscard]] std::span<const Interval> sides() const noexcept { return sides_; }

    [[nodiscard]] bool contains(const Bundle& b) const;
    [[nodiscard]] bool bounded() const noexcept;
    /// True when every side has zero width.
    [[nodiscard]] bool degenerate() const noexcept;

    friend bool operator==(const Box&, const Box&) = default;

private:
    std::vector<Interval> sides_;
};

/// Sum of absolute coordinate differences.
[[nodiscard]] double l1_distance(const Bundle& a, const Bundle& b);

/// rho = d1 + d2 on X1 x X2.
[[nodiscard]] double product_distance(const ProductPoint& p, const ProductPoint& q);

/// L1 distance on raw coordinate spans; used by the hot loops that work on
/// concatenated points.
[[nodiscard]] double l1_distance(std::span<const double> a, std::span<const double> b);

/// (first, second) flattened into one coordinate vector.
[[nodiscard]] std::vector<double> concat(const ProductPoint& p);

/// Inverse of concat; `first_dim` coordinates go to the first bundle.
[[nodiscard]] ProductPoint split(std::span<const double> z, std::size_t first_dim);

}  // namespace coupled
