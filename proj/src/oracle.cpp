#include "coupled/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "coupled/errors.hpp"
#include "coupled/sampling.hpp"

namespace coupled {

std::vector<double> AffineResponse::apply(std::span<const double> z) const {
    const std::size_t n = dim();
    if (z.size() != n || matrix.size() != n * n) {
        throw DimensionMismatch("affine response: shape mismatch");
    }
    std::vector<double> out(offset);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) out[r] += a(r, c) * z[c];
    }
    return out;
}

ProductPoint affine_fixed_point(const AffineResponse& ar) {
    const std::size_t n = ar.dim();
    if (n < 2 || ar.matrix.size() != n * n) {
        throw DimensionMismatch("affine response must be square with dimension >= 2");
    }
    // Augmented [I - A | b].
    std::vector<std::vector<double>> m(n, std::vector<double>(n + 1));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) m[r][c] = (r == c ? 1.0 : 0.0) - ar.a(r, c);
        m[r][n] = ar.offset[r];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        if (std::abs(m[pivot][col]) <= 1e-12) {
            throw SingularSystem("I - A is singular: no unique fixed point");
        }
        std::swap(m[col], m[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = m[r][col] / m[col][col];
            for (std::size_t c = col; c <= n; ++c) m[r][c] -= factor * m[col][c];
        }
    }
    std::vector<double> z(n);
    for (std::size_t r = n; r-- > 0;) {
        double acc = m[r][n];
        for (std::size_t c = r + 1; c < n; ++c) acc -= m[r][c] * z[c];
        z[r] = acc / m[r][r];
    }
    return split(z, ar.first_dim);
}

namespace {

double residual(const ResponseSystem& sys, std::span<const double> z) {
    const ProductPoint p = split(z, sys.first_domain().dim());
    return product_distance(p, sys.apply(p));
}

double cell_diameter(const Box& box, std::size_t resolution) {
    double d = 0.0;
    for (const auto& s : box.sides()) d += s.width() / static_cast<double>(resolution - 1);
    return d;
}

// Neighbours of node `flat` in the 3^dim stencil of a tensor grid.
bool is_local_min(const std::vector<double>& values, const std::vector<std::size_t>& shape,
                  std::size_t flat) {
    const std::size_t dim = shape.size();
    std::vector<std::size_t> idx(dim);
    std::size_t rest = flat;
    for (std::size_t d = dim; d-- > 0;) {
        idx[d] = rest % shape[d];
        rest /= shape[d];
    }
    std::size_t stencil = 1;
    for (std::size_t d = 0; d < dim; ++d) stencil *= 3;
    for (std::size_t s = 0; s < stencil; ++s) {
        std::size_t code = s;
        std::size_t neighbour = 0;
        bool valid = true;
        bool self = true;
        for (std::size_t d = 0; d < dim; ++d) {
            const long offset = static_cast<long>(code % 3) - 1;
            code /= 3;
            if (offset != 0) self = false;
            const long k = static_cast<long>(idx[d]) + offset;
            if (k < 0 || k >= static_cast<long>(shape[d])) {
                valid = false;
                break;
            }
            neighbour = neighbour * shape[d] + static_cast<std::size_t>(k);
        }
        if (!valid || self) continue;
        if (values[neighbour] < values[flat]) return false;
    }
    return true;
}

std::vector<std::size_t> grid_shape(const Box& box, std::size_t resolution) {
    std::vector<std::size_t> shape;
    for (const auto& s : box.sides()) shape.push_back(s.width() == 0.0 ? 1 : resolution);
    return shape;
}

}  // namespace

std::vector<ProductPoint> grid_fixed_point(const ResponseSystem& sys, std::size_t resolution,
                                           std::size_t refinements) {
    const Box domain = product_box(sys.first_domain(), sys.second_domain());
    if (!domain.bounded()) throw ConfigurationError("grid_fixed_point needs a bounded domain");
    if (resolution < 3) throw ConfigurationError("grid_fixed_point needs resolution >= 3");
    constexpr std::size_t kMaxCandidates = 64;

    const PointCloud nodes = grid_nodes(domain, resolution);
    std::vector<double> values(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        values[i] = residual(sys, {nodes.at(i), nodes.dim});
    }
    const auto shape = grid_shape(domain, resolution);

    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (is_local_min(values, shape, i)) candidates.push_back(i);
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    if (candidates.size() > kMaxCandidates) candidates.resize(kMaxCandidates);
    std::sort(candidates.begin(), candidates.end());

    const double coarse_cell = cell_diameter(domain, resolution);
    std::vector<std::vector<double>> found;
    for (std::size_t c : candidates) {
        std::vector<double> best(nodes.at(c), nodes.at(c) + nodes.dim);
        double best_value = values[c];
        std::vector<double> widths;
        for (const auto& s : domain.sides()) widths.push_back(s.width());

        for (std::size_t round = 0; round < refinements; ++round) {
            std::vector<Interval> sides;
            for (std::size_t d = 0; d < domain.dim(); ++d) {
                // Ten times narrower, but never less than two cells either side.
                const double cell = widths[d] / static_cast<double>(resolution - 1);
                const double half = std::max(widths[d] / 20.0, 2.0 * cell);
                const double lo = std::max(domain[d].lo, best[d] - half);
                const double hi = std::min(domain[d].hi, best[d] + half);
                sides.push_back({lo, hi});
                widths[d] = hi - lo;
            }
            const Box local(std::move(sides));
            const PointCloud fine = grid_nodes(local, resolution);
            for (std::size_t i = 0; i < fine.size(); ++i) {
                const double v = residual(sys, {fine.at(i), fine.dim});
                if (v < best_value) {
                    best_value = v;
                    best.assign(fine.at(i), fine.at(i) + fine.dim);
                }
            }
        }

        double final_cell = 0.0;
        for (double w : widths) final_cell += w / static_cast<double>(resolution - 1);
        if (best_value > 4.0 * final_cell) continue;
        const bool duplicate = std::any_of(found.begin(), found.end(), [&](const auto& f) {
            return l1_distance(f, best) <= coarse_cell;
        });
        if (!duplicate) found.push_back(std::move(best));
    }

    std::vector<ProductPoint> out;
    out.reserve(found.size());
    for (const auto& z : found) out.push_back(split(z, sys.first_domain().dim()));
    return out;
}

Derivative finite_difference(const ScalarMap& f, std::span<const double> point, std::size_t index,
                             double h, const Box* bounds) {
    if (!(h > 0.0)) throw ConfigurationError("finite-difference step must be positive");
    if (index >= point.size()) throw DimensionMismatch("finite_difference: index out of range");
    std::vector<double> plus(point.begin(), point.end());
    std::vector<double> minus(point.begin(), point.end());
    plus[index] += h;
    minus[index] -= h;

    bool plus_ok = true;
    bool minus_ok = true;
    if (bounds != nullptr) {
        const Interval& side = (*bounds)[index];
        plus_ok = side.contains(plus[index]);
        minus_ok = side.contains(minus[index]);
    }
    if (plus_ok && minus_ok) return {(f(plus) - f(minus)) / (2.0 * h), false};
    if (plus_ok) return {(f(plus) - f(point)) / h, true};
    if (minus_ok) return {(f(point) - f(minus)) / h, true};
    throw DomainError("finite_difference: step " + std::to_string(h) +
                      " leaves the domain on both sides");
}

}  // namespace coupled
