#pragma once

// Seeded random affine response systems z -> A z + b whose absolute row and
// column sums are at most a drawn s <= 0.95.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "coupled/oracle.hpp"
#include "coupled/system.hpp"

namespace coupled::testing {

struct RandomAffine {
    AffineResponse response;
    ResponseSystem system;
    /// max absolute row or column sum of A
    double k1;
    double max_row_sum;
    bool symmetric;
};

inline constexpr double kAffineHalfWidth = 1e4;

inline ResponseSystem affine_system(const AffineResponse& ar, bool symmetric) {
    const std::size_t d1 = ar.first_dim;
    const std::size_t d2 = ar.dim() - d1;
    auto part = [ar](const ProductPoint& p, std::size_t from, std::size_t to) {
        const auto out = ar.apply(concat(p));
        return Bundle(std::vector<double>(out.begin() + static_cast<long>(from),
                                          out.begin() + static_cast<long>(to)));
    };
    return ResponseSystem([part, d1](const ProductPoint& p) { return part(p, 0, d1); },
                          [part, d1, d2](const ProductPoint& p) { return part(p, d1, d1 + d2); },
                          Box(std::vector<Interval>(d1, {-kAffineHalfWidth, kAffineHalfWidth})),
                          Box(std::vector<Interval>(d2, {-kAffineHalfWidth, kAffineHalfWidth})),
                          Projection::None, symmetric);
}

/// Symmetric draws use A = [[P, Q], [Q, P]] and b = (c, c), so F2(x, y) = F1(y, x).
inline RandomAffine random_affine(std::mt19937_64& rng, bool symmetric) {
    std::uniform_int_distribution<int> dim_dist(1, 2);
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    std::uniform_real_distribution<double> scale(0.05, 0.95);
    std::uniform_real_distribution<double> offset(-10.0, 10.0);

    const std::size_t d1 = static_cast<std::size_t>(dim_dist(rng));
    const std::size_t d2 = symmetric ? d1 : static_cast<std::size_t>(dim_dist(rng));
    const std::size_t n = d1 + d2;
    std::vector<double> a(n * n);
    std::vector<double> b(n);
    if (symmetric) {
        std::vector<double> P(d1 * d1), Q(d1 * d1), c(d1);
        for (auto& v : P) v = entry(rng);
        for (auto& v : Q) v = entry(rng);
        for (auto& v : c) v = offset(rng);
        for (std::size_t r = 0; r < d1; ++r) {
            for (std::size_t col = 0; col < d1; ++col) {
                a[r * n + col] = P[r * d1 + col];
                a[r * n + d1 + col] = Q[r * d1 + col];
                a[(d1 + r) * n + col] = Q[r * d1 + col];
                a[(d1 + r) * n + d1 + col] = P[r * d1 + col];
            }
            b[r] = b[d1 + r] = c[r];
        }
    } else {
        for (auto& v : a) v = entry(rng);
        for (auto& v : b) v = offset(rng);
    }

    const auto sums = [&] {
        double row = 0.0, col = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                r += std::abs(a[i * n + j]);
                c += std::abs(a[j * n + i]);
            }
            row = std::max(row, r);
            col = std::max(col, c);
        }
        return std::pair{row, col};
    };
    const auto [row0, col0] = sums();
    const double s = scale(rng);
    for (auto& v : a) v *= s / std::max(row0, col0);
    const auto [row, col] = sums();

    AffineResponse ar{d1, std::move(a), std::move(b)};
    auto sys = affine_system(ar, symmetric);
    return {std::move(ar), std::move(sys), std::max(row, col), row, symmetric};
}

}  // namespace coupled::testing
