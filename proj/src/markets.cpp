#include "coupled/markets.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "coupled/errors.hpp"
#include "coupled/oracle.hpp"

namespace coupled {

CournotModel CournotModel::linear_quadratic(double intercept, double slope_x, double slope_y,
                                            double quad_first, double lin_first,
                                            double quad_second, double lin_second,
                                            Interval first_domain, Interval second_domain) {
    CournotModel m;
    m.price = [=](double x, double y) { return intercept - slope_x * x - slope_y * y; };
    m.cost_first = [=](double q) { return quad_first * q * q + lin_first * q; };
    m.cost_second = [=](double q) { return quad_second * q * q + lin_second * q; };
    m.first_domain = first_domain;
    m.second_domain = second_domain;
    return m;
}

namespace {

double profit_first(const CournotModel& m, double x, double y) {
    return x * m.price(x, y) - m.cost_first(x);
}

double profit_second(const CournotModel& m, double x, double y) {
    return y * m.price(x, y) - m.cost_second(y);
}

void require_inside(const CournotModel& m, double x, double y) {
    if (!m.first_domain.contains(x) || !m.second_domain.contains(y)) {
        throw DomainError("Cournot model evaluated outside its domain");
    }
}

Box model_box(const CournotModel& m) { return Box{m.first_domain, m.second_domain}; }

}  // namespace

PayoffPair payoffs(const CournotModel& m, double x, double y) {
    require_inside(m, x, y);
    return {profit_first(m, x, y), profit_second(m, x, y)};
}

FocResidual foc_residual(const CournotModel& m, double x, double y, double h) {
    require_inside(m, x, y);
    const Box box = model_box(m);
    const double at[] = {x, y};
    const auto d1 = finite_difference(
        [&](std::span<const double> z) { return profit_first(m, z[0], z[1]); }, at, 0, h, &box);
    const auto d2 = finite_difference(
        [&](std::span<const double> z) { return profit_second(m, z[0], z[1]); }, at, 1, h, &box);
    return {d1.value, d2.value, d1.one_sided || d2.one_sided};
}

namespace {

struct Curvature {
    double value;
    bool one_sided;
};

// Second difference along one axis; shifts the stencil inward at a boundary.
template <typename F>
Curvature second_difference(F&& f, double v, double h, const Interval& side) {
    if (side.contains(v - h) && side.contains(v + h)) {
        return {(f(v + h) - 2.0 * f(v) + f(v - h)) / (h * h), false};
    }
    if (side.contains(v + 2.0 * h)) {
        return {(f(v + 2.0 * h) - 2.0 * f(v + h) + f(v)) / (h * h), true};
    }
    if (side.contains(v - 2.0 * h)) {
        return {(f(v) - 2.0 * f(v - h) + f(v - 2.0 * h)) / (h * h), true};
    }
    throw DomainError("second difference: step " + std::to_string(h) + " too large for domain");
}

}  // namespace

SecondOrderCheck second_order_check(const CournotModel& m, double x, double y, double h) {
    if (!(h > 0.0)) throw ConfigurationError("finite-difference step must be positive");
    require_inside(m, x, y);
    const auto c1 = second_difference([&](double v) { return profit_first(m, v, y); }, x, h,
                                      m.first_domain);
    const auto c2 = second_difference([&](double v) { return profit_second(m, x, v); }, y, h,
                                      m.second_domain);
    return {c1.value, c2.value, c1.value <= kSecondOrderTolerance,
            c2.value <= kSecondOrderTolerance, c1.one_sided || c2.one_sided};
}

ResponseSystem response_from_payoff(const CournotModel& m, double h) {
    if (!(h > 0.0)) throw ConfigurationError("finite-difference step must be positive");
    auto first = [m, h](const ProductPoint& p) {
        const double at[] = {p.first[0], p.second[0]};
        const double d = finite_difference(
            [&](std::span<const double> z) { return profit_first(m, z[0], z[1]); }, at, 0, h)
                             .value;
        return Bundle{d + p.first[0]};
    };
    auto second = [m, h](const ProductPoint& p) {
        const double at[] = {p.first[0], p.second[0]};
        const double d = finite_difference(
            [&](std::span<const double> z) { return profit_second(m, z[0], z[1]); }, at, 1, h)
                             .value;
        return Bundle{d + p.second[0]};
    };
    return ResponseSystem(std::move(first), std::move(second), Box{m.first_domain},
                          Box{m.second_domain});
}

ResponseSystem build_affine(const AffineCoefficients& c, Interval first_domain,
                            Interval second_domain, Projection projection) {
    for (double v : {c.c11, c.c12, c.b1, c.c21, c.c22, c.b2}) {
        if (!std::isfinite(v)) throw ConfigurationError("affine coefficients must be finite");
    }
    const bool symmetric = c.c11 == c.c22 && c.c12 == c.c21 && c.b1 == c.b2 &&
                           first_domain == second_domain;
    return ResponseSystem(
        [c](const ProductPoint& p) { return Bundle{c.b1 + c.c11 * p.first[0] + c.c12 * p.second[0]}; },
        [c](const ProductPoint& p) { return Bundle{c.b2 + c.c21 * p.first[0] + c.c22 * p.second[0]}; },
        Box{first_domain}, Box{second_domain}, projection, symmetric);
}

bool isoelastic_feasible(double eta, double c, double q_max) {
    if (!(eta > 0.0 && c > 0.0 && q_max > 0.0)) return false;
    if (!(eta < 0.5)) return false;
    const double lhs = c * std::pow(q_max, 1.0 / eta);
    return lhs > 0.0 && lhs < (1.0 - 2.0 * eta) / (2.0 * (1.0 + eta));
}

double isoelastic_response(const IsoelasticParams& p, double total_output) {
    return p.eta * total_output - p.c * p.eta * std::pow(total_output, 1.0 + 1.0 / p.eta);
}

ResponseSystem build_isoelastic(const IsoelasticParams& p, Interval first_domain,
                                Interval second_domain) {
    if (!isoelastic_feasible(p.eta, p.c, p.q_max)) {
        throw FeasibilityError("isoelastic parameters violate c q_max^(1/eta) < (1 - 2 eta) / "
                               "(2 (1 + eta)) with 0 < eta < 1/2");
    }
    if (first_domain.lo < 0.0 || second_domain.lo < 0.0 ||
        first_domain.hi + second_domain.hi > p.q_max) {
        throw FeasibilityError("isoelastic domain must lie in {x, y >= 0, x + y <= q_max}");
    }
    auto response = [p](const ProductPoint& pt) {
        return Bundle{isoelastic_response(p, pt.first[0] + pt.second[0])};
    };
    return ResponseSystem(response, response, Box{first_domain}, Box{second_domain},
                          Projection::ClampBelowAtZero, true);
}

SurplusModel affine_surplus_model(const SurplusCoefficients& c) {
    SurplusModel m;
    m.f1 = [c](double x, double y, double dx) {
        return c.f1_const + c.f1_x * x + c.f1_y * y + c.f1_dx * dx;
    };
    m.f2 = [c](double x, double y, double dy) {
        return c.f2_const + c.f2_x * x + c.f2_y * y + c.f2_dy * dy;
    };
    m.q1 = [c](double u1, double u2) { return c.q1_u1 * u1 + c.q1_u2 * u2; };
    m.q2 = [c](double u1, double u2) { return c.q2_u1 * u1 + c.q2_u2 * u2; };
    return m;
}

ResponseSystem build_surplus(const SurplusModel& m, Box first_domain, Box second_domain) {
    if (!m.f1 || !m.f2 || !m.q1 || !m.q2) {
        throw ConfigurationError("surplus model needs f1, f2, Q1 and Q2");
    }
    if (first_domain.dim() != 2 || second_domain.dim() != 2) {
        throw DimensionMismatch("surplus bundles are (production, surplus) pairs");
    }
    // p.first = (x, dx), p.second = (y, dy)
    auto first = [m](const ProductPoint& p) {
        const double u1 = m.f1(p.first[0], p.second[0], p.first[1]);
        const double u2 = m.f2(p.first[0], p.second[0], p.second[1]);
        const double s1 = m.q1(u1, u2);
        return Bundle{u1 - s1, s1};
    };
    auto second = [m](const ProductPoint& p) {
        const double u1 = m.f1(p.first[0], p.second[0], p.first[1]);
        const double u2 = m.f2(p.first[0], p.second[0], p.second[1]);
        const double s2 = m.q2(u1, u2);
        return Bundle{u2 - s2, s2};
    };
    return ResponseSystem(std::move(first), std::move(second), std::move(first_domain),
                          std::move(second_domain));
}

PiecewiseResponse::PiecewiseResponse(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw ConfigurationError("piecewise response needs at least one piece");
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const Piece& p = pieces_[i];
        if (!std::isfinite(p.lo) || !std::isfinite(p.hi) || !std::isfinite(p.value)) {
            throw ConfigurationError("piece " + std::to_string(i) + " is not finite");
        }
        if (!(p.lo < p.hi)) {
            throw ConfigurationError("piece " + std::to_string(i) + " is empty or reversed");
        }
        if (i > 0) {
            const double prev = pieces_[i - 1].hi;
            if (p.lo > prev) {
                throw ConfigurationError("gap between pieces " + std::to_string(i - 1) + " and " +
                                         std::to_string(i));
            }
            if (p.lo < prev) {
                throw ConfigurationError("pieces " + std::to_string(i - 1) + " and " +
                                         std::to_string(i) + " overlap");
            }
        }
    }
}

double PiecewiseResponse::operator()(double v) const {
    const Piece& head = pieces_.front();
    if (head.lo <= v && v <= head.hi) return head.value;
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
        if (pieces_[i].lo < v && v <= pieces_[i].hi) return pieces_[i].value;
    }
    throw DomainError("piecewise response evaluated outside its domain");
}

Interval PiecewiseResponse::domain() const noexcept {
    return {pieces_.front().lo, pieces_.back().hi};
}

ResponseSystem build_piecewise(const PiecewiseResponse& first, const PiecewiseResponse& second) {
    for (const auto* r : {&first, &second}) {
        for (const auto& p : r->pieces()) {
            if (!r->domain().contains(p.value)) {
                throw ConfigurationError("piece value lies outside the response's domain");
            }
        }
    }
    return ResponseSystem([first](const ProductPoint& p) { return Bundle{first(p.first[0])}; },
                          [second](const ProductPoint& p) { return Bundle{second(p.second[0])}; },
                          Box{first.domain()}, Box{second.domain()});
}

}  // namespace coupled
