#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>

#include "coupled/metric.hpp"
#include "coupled/sampling.hpp"
#include "coupled/system.hpp"

namespace coupled {

/// Absolute tolerance on rhs - lhs when judging a sampled pair.
inline constexpr double kSlackTolerance = 1e-12;
/// Allowance added to the derivative bound in partial_derivative_bound_check.
inline constexpr double kDerivativeTolerance = 1e-6;

/// Weights of the coupled Hardy–Rogers inequality
///
///   rho(G p, G q) <= k1 rho(p, q)
///                  + k2 (rho(p, G p) + rho(q, G q))
///                  + k3 (rho(p, G q) + rho(q, G p)),
///
/// with G = (F1, F2) and rho = d1 + d2. Admissible when all three are
/// nonnegative and k1 + 2 k2 + 2 k3 < 1.
struct HardyRogersConstants {
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;

    /// Symmetrizes the five-weight form a1 rho(p,q) + a2 rho(p,Gp) + a3 rho(q,Gq)
    /// + a4 rho(p,Gq) + a5 rho(q,Gp): k1 = a1, k2 = (a2+a3)/2, k3 = (a4+a5)/2.
    /// Requires a_i >= 0 and sum a_i < 1.
    static HardyRogersConstants from_five(double a1, double a2, double a3, double a4, double a5);

    [[nodiscard]] bool valid() const noexcept;
    /// Throws InvalidConstants when not valid().
    void validate() const;
};

/// (k1 + k2 + k3) / (1 - k2 - k3), the geometric rate of the iteration.
[[nodiscard]] double contraction_factor(const HardyRogersConstants& c);

/// Coefficients of the split per-player Lipschitz bounds
///   rho(F1(x,y), F1(u,v)) <= alpha rho(x,u) + beta rho(y,v)
///   rho(F2(x,y), F2(u,v)) <= gamma rho(x,u) + delta rho(y,v).
struct FourCoefficientConstants {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;

    /// max{alpha + gamma, beta + delta}
    [[nodiscard]] double s() const noexcept;
};

/// Banach constants (s, 0, 0) implied by the four coefficients. Throws
/// InvalidConstants when s >= 1 or a coefficient is negative.
[[nodiscard]] HardyRogersConstants reduce_four_coefficients(const FourCoefficientConstants& fc);

enum class ConditionKind { Banach, Kannan, Chatterjea, HardyRogers };

[[nodiscard]] std::string_view to_string(ConditionKind kind) noexcept;
/// Banach when k2 = k3 = 0, Kannan when k1 = k3 = 0, Chatterjea when k1 = k2 = 0.
[[nodiscard]] ConditionKind classify(const HardyRogersConstants& c) noexcept;

/// Both sides of the inequality for one pair of points.
struct HardyRogersGap {
    double lhs;
    double rhs;
};

/// Evaluates both sides for the projected map of `sys`. Throws DomainError
/// when p or q lies outside the domain.
[[nodiscard]] HardyRogersGap hr_gap(const ResponseSystem& sys, const HardyRogersConstants& c,
                                    const ProductPoint& p, const ProductPoint& q);

/// Outcome of sampled falsification. A pass is sampled evidence, not a proof.
struct CertificateReport {
    ConditionKind kind = ConditionKind::Banach;
    HardyRogersConstants constants;
    std::size_t pairs_tested = 0;
    /// min over tested pairs of rhs - lhs
    double worst_slack = 0.0;
    /// max over tested pairs with rhs > 0 of lhs / rhs
    double worst_ratio = 0.0;
    /// The pair attaining worst_slack; present iff the check failed.
    std::optional<std::pair<ProductPoint, ProductPoint>> violating_pair;
    bool passed = true;
};

/// Tests the inequality on every unordered pair of grid nodes plus the seeded
/// random pairs. Results do not depend on the number of worker threads.
[[nodiscard]] CertificateReport certify(const ResponseSystem& sys, const HardyRogersConstants& c,
                                        const SamplerPolicy& sampler);

/// Largest sampled ratio rho(G p, G q) / rho(p, q): the smallest Banach k1
/// consistent with the sample.
[[nodiscard]] double estimate_lipschitz(const ResponseSystem& sys, const SamplerPolicy& sampler);

struct DerivativeBoundCheck {
    bool within_bound = true;
    /// Largest |dF1_a/dx_b| or |dF2_a/dy_b| observed.
    double max_abs_derivative = 0.0;
    std::size_t points_checked = 0;
    /// Sample points whose +-h stencil leaves the domain.
    std::size_t points_skipped = 0;
};

/// Central-difference check that the own-output partials of the raw responses
/// stay within alpha (+ kDerivativeTolerance) at the sampled grid and random
/// points. Requires h > 0.
[[nodiscard]] DerivativeBoundCheck partial_derivative_bound_check(const ResponseSystem& sys,
                                                                  double alpha,
                                                                  const SamplerPolicy& sampler,
                                                                  double h);

}  // namespace coupled
