#pragma once

#include <functional>
#include <vector>

#include "coupled/metric.hpp"
#include "coupled/system.hpp"

namespace coupled {

// ---------------------------------------------------------------------------
// Cournot payoffs
// ---------------------------------------------------------------------------

/// Two firms selling into one market: price P(x, y) (usually a function of
/// x + y alone) and own-output costs c1(x), c2(y).
struct CournotModel {
    std::function<double(double x, double y)> price;
    std::function<double(double)> cost_first;
    std::function<double(double)> cost_second;
    Interval first_domain{0.0, 100.0};
    Interval second_domain{0.0, 100.0};

    /// P = intercept - slope_x x - slope_y y, c_i(q) = quad_i q^2 + lin_i q.
    static CournotModel linear_quadratic(double intercept, double slope_x, double slope_y,
                                         double quad_first, double lin_first, double quad_second,
                                         double lin_second, Interval first_domain,
                                         Interval second_domain);
};

struct PayoffPair {
    double first;
    double second;
};

/// (x P(x,y) - c1(x), y P(x,y) - c2(y)). Throws DomainError outside the domain.
[[nodiscard]] PayoffPair payoffs(const CournotModel& m, double x, double y);

struct FocResidual {
    double first;   ///< dPi1/dx
    double second;  ///< dPi2/dy
    bool one_sided = false;
};

/// Central-difference first-order conditions; falls back to one-sided
/// quotients (flagged) when the stencil crosses the domain boundary.
[[nodiscard]] FocResidual foc_residual(const CournotModel& m, double x, double y, double h);

struct SecondOrderCheck {
    double first_curvature;   ///< d2Pi1/dx2
    double second_curvature;  ///< d2Pi2/dy2
    bool first_ok;
    bool second_ok;
    bool one_sided = false;
};

/// Curvatures below kSecondOrderTolerance count as nonpositive.
inline constexpr double kSecondOrderTolerance = 1e-6;

/// Second differences of the own payoffs; both must be <= 0 for a maximum.
[[nodiscard]] SecondOrderCheck second_order_check(const CournotModel& m, double x, double y,
                                                  double h);

/// F1 = dPi1/dx + x, F2 = dPi2/dy + y, differentiated centrally with step h.
/// Fixed points are exactly the first-order solutions. The stencil may read the
/// payoff formulas up to h outside the domain.
[[nodiscard]] ResponseSystem response_from_payoff(const CournotModel& m, double h);

// ---------------------------------------------------------------------------
// Affine responses
// ---------------------------------------------------------------------------

/// F1 = b1 + c11 x + c12 y, F2 = b2 + c21 x + c22 y.
struct AffineCoefficients {
    double c11 = 0.0;
    double c12 = 0.0;
    double b1 = 0.0;
    double c21 = 0.0;
    double c22 = 0.0;
    double b2 = 0.0;
};

/// Scalar-per-player affine system. symmetric_hint is set when the coefficients
/// satisfy F2(x, y) = F1(y, x) and both domains agree.
[[nodiscard]] ResponseSystem build_affine(const AffineCoefficients& c, Interval first_domain,
                                          Interval second_domain,
                                          Projection projection = Projection::ClampBelowAtZero);

// ---------------------------------------------------------------------------
// Isoelastic demand P(Q) = Q^(-1/eta), shared marginal cost c
// ---------------------------------------------------------------------------

struct IsoelasticParams {
    double eta = 0.25;
    double c = 0.1;
    double q_max = 1.0;
};

/// eta < 1/2 and 0 < c q_max^(1/eta) < (1 - 2 eta) / (2 (1 + eta)).
[[nodiscard]] bool isoelastic_feasible(double eta, double c, double q_max);

/// eta Q - c eta Q^(1 + 1/eta) with Q = x + y.
[[nodiscard]] double isoelastic_response(const IsoelasticParams& p, double total_output);

/// Both firms use the shared response. Throws FeasibilityError when the
/// parameters are infeasible or the domain is not inside {x, y >= 0, x + y <= q_max}.
[[nodiscard]] ResponseSystem build_isoelastic(const IsoelasticParams& p, Interval first_domain,
                                              Interval second_domain);

// ---------------------------------------------------------------------------
// Production/surplus model
// ---------------------------------------------------------------------------

/// Player responses f1(x, y, dx), f2(x, y, dy) give produced quantities u1, u2;
/// the market answers with surpluses Q1(u1, u2), Q2(u1, u2).
struct SurplusModel {
    std::function<double(double x, double y, double dx)> f1;
    std::function<double(double x, double y, double dy)> f2;
    std::function<double(double u1, double u2)> q1;
    std::function<double(double u1, double u2)> q2;
};

struct SurplusCoefficients {
    double f1_const = 0.0, f1_x = 0.0, f1_y = 0.0, f1_dx = 0.0;
    double f2_const = 0.0, f2_x = 0.0, f2_y = 0.0, f2_dy = 0.0;
    double q1_u1 = 0.0, q1_u2 = 0.0;
    double q2_u1 = 0.0, q2_u2 = 0.0;
};

/// Model whose four maps are affine with the given coefficients.
[[nodiscard]] SurplusModel affine_surplus_model(const SurplusCoefficients& c);

/// Bundles are (x, dx) and (y, dy);
///   F1 = (f1 - Q1(f1, f2), Q1(f1, f2)),  F2 = (f2 - Q2(f1, f2), Q2(f1, f2)).
[[nodiscard]] ResponseSystem build_surplus(const SurplusModel& m, Box first_domain,
                                           Box second_domain);

// ---------------------------------------------------------------------------
// Piecewise-constant responses
// ---------------------------------------------------------------------------

struct Piece {
    double lo;
    double hi;
    double value;
};

/// One-variable step function. The first piece is the closed interval
/// [lo, hi]; every later piece is (lo, hi], so a breakpoint belongs to the
/// piece on its left.
class PiecewiseResponse {
public:
    /// Throws ConfigurationError on empty, gapped, overlapping or reversed pieces.
    explicit PiecewiseResponse(std::vector<Piece> pieces);

    [[nodiscard]] double operator()(double v) const;
    [[nodiscard]] Interval domain() const noexcept;
    [[nodiscard]] const std::vector<Piece>& pieces() const noexcept { return pieces_; }

private:
    std::vector<Piece> pieces_;
};

/// F1 depends on x only, F2 on y only. Throws ConfigurationError if a value
/// lies outside its own domain.
[[nodiscard]] ResponseSystem build_piecewise(const PiecewiseResponse& first,
                                             const PiecewiseResponse& second);

}  // namespace coupled
