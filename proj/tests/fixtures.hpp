#pragma once

// Systems from the worked duopoly examples, plus hand-built affine oracles for
// them. The oracle matrices are written out here rather than derived from the
// library builders.

#include <vector>

#include "coupled/markets.hpp"
#include "coupled/oracle.hpp"
#include "coupled/sampling.hpp"
#include "coupled/system.hpp"

namespace coupled::testing {

inline ProductPoint pt(double x, double y) { return {Bundle{x}, Bundle{y}}; }

// F1 = 100 - 2x - y, F2 = 100 - x - 2y on [0, 100]^2.
inline ResponseSystem example2() {
    return build_affine({-2.0, -1.0, 100.0, -1.0, -2.0, 100.0}, {0.0, 100.0}, {0.0, 100.0});
}

inline AffineResponse example2_oracle() {
    return {1, {-2.0, -1.0, -1.0, -2.0}, {100.0, 100.0}};
}

// F1 = 45 - 0.98x - 0.09y, F2 = 50 - 0.01x - 0.9y on [0, 100]^2.
inline ResponseSystem example3() {
    return build_affine({-0.98, -0.09, 45.0, -0.01, -0.9, 50.0}, {0.0, 100.0}, {0.0, 100.0});
}

inline AffineResponse example3_oracle() {
    return {1, {-0.98, -0.09, -0.01, -0.9}, {45.0, 50.0}};
}

// F1 = 0.2 on [0, 0.8], 0.1 on (0.8, 1]; F2 = 0.9 on [0, 0.1], 0.8 on (0.1, 1].
inline ResponseSystem example4() {
    return build_piecewise(PiecewiseResponse({{0.0, 0.8, 0.2}, {0.8, 1.0, 0.1}}),
                           PiecewiseResponse({{0.0, 0.1, 0.9}, {0.1, 1.0, 0.8}}));
}

inline SurplusCoefficients surplus_coefficients() {
    SurplusCoefficients c;
    c.f1_const = 45.0;
    c.f1_x = -0.5;
    c.f1_y = 0.25;
    c.f1_dx = -0.1;
    c.f2_const = 20.0;
    c.f2_x = -0.2;
    c.f2_y = -0.25;
    c.f2_dy = -0.05;
    c.q1_u1 = 0.05;
    c.q1_u2 = 0.03;
    c.q2_u1 = 0.04;
    c.q2_u2 = 0.06;
    return c;
}

inline ResponseSystem surplus_system() {
    return build_surplus(affine_surplus_model(surplus_coefficients()),
                         Box{{0.0, 100.0}, {0.0, 10.0}}, Box{{0.0, 50.0}, {0.0, 10.0}});
}

// Composition written out by matrix products over z = (x, dx, y, dy):
// u = M z + m, outputs = C u with C rows (1 - q1_u1, -q1_u2), (q1_u1, q1_u2),
// (-q2_u1, 1 - q2_u2), (q2_u1, q2_u2).
inline AffineResponse surplus_oracle() {
    const double m[2][4] = {{-0.5, -0.1, 0.25, 0.0}, {-0.2, 0.0, -0.25, -0.05}};
    const double m0[2] = {45.0, 20.0};
    const double c[4][2] = {{0.95, -0.03}, {0.05, 0.03}, {-0.04, 0.94}, {0.04, 0.06}};
    AffineResponse ar{2, std::vector<double>(16, 0.0), std::vector<double>(4, 0.0)};
    for (int r = 0; r < 4; ++r) {
        for (int col = 0; col < 4; ++col) {
            ar.matrix[r * 4 + col] = c[r][0] * m[0][col] + c[r][1] * m[1][col];
        }
        ar.offset[r] = c[r][0] * m0[0] + c[r][1] * m0[1];
    }
    return ar;
}

inline ResponseSystem constant_system(double a, double b) {
    return build_affine({0.0, 0.0, a, 0.0, 0.0, b}, {0.0, 10.0}, {0.0, 10.0});
}

inline CournotModel example2_cournot() {
    return CournotModel::linear_quadratic(100.0, 1.0, 1.0, 0.5, 0.0, 0.5, 0.0, {0.0, 100.0},
                                          {0.0, 100.0});
}

// P = 50 - 0.09x - 0.01y, C1 = 0.985 x^2, C2 = 0.86 y^2.
inline CournotModel example3_cournot() {
    return CournotModel::linear_quadratic(50.0, 0.09, 0.01, 0.985, 0.0, 0.86, 0.0, {0.0, 100.0},
                                          {0.0, 100.0});
}

inline SamplerPolicy grid(std::size_t per_axis) {
    SamplerPolicy s;
    s.grid_points = per_axis;
    return s;
}

}  // namespace coupled::testing
