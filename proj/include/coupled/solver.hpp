#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coupled/contraction.hpp"
#include "coupled/errors.hpp"
#include "coupled/metric.hpp"
#include "coupled/system.hpp"

namespace coupled {

/// Absolute slack allowed by verify_bounds on top of the limit's own error.
inline constexpr double kAuditTolerance = 1e-9;

struct SolverPolicy {
    /// Stop once the step rho(p_n, p_{n-1}) is at most this. With constants the
    /// a posteriori bound k/(1-k) * step must also be at most this.
    double convergence_tol = 1e-9;
    std::size_t max_iters = 100000;
    /// Convergence and cycle checks are suppressed before this many steps.
    std::size_t min_iters = 0;
    /// Earlier states compared against for a repeat (lags 2..cycle_window).
    std::size_t cycle_window = 32;
    double cycle_tol = 1e-9;
    /// A repeat must also be at most this times the current step.
    double cycle_relative_tol = 1e-6;
    double divergence_bound = 1e12;
    /// Tolerance on d(xi, eta) for the symmetric-collapse flag.
    double collapse_tol = 1e-8;
    std::optional<HardyRogersConstants> constants;

    /// Throws ConfigurationError on nonsensical settings, InvalidConstants on bad constants.
    void validate() const;
};

struct TraceEntry {
    std::size_t n = 0;
    ProductPoint point;
    std::optional<double> step_distance;
    std::optional<double> a_priori;
    std::optional<double> a_posteriori;
};

struct IterationTrace {
    std::vector<TraceEntry> entries;
    /// Contraction factor used for the bound columns, when constants were supplied.
    std::optional<double> factor;
};

enum class StopReason { Converged, Cycle, Diverged, MaxIters };

[[nodiscard]] std::string to_string(StopReason reason, std::size_t period = 0);

struct EquilibriumReport {
    StopReason stop = StopReason::MaxIters;
    std::size_t cycle_period = 0;
    /// Present iff stop == Converged.
    std::optional<ProductPoint> point;
    std::size_t iterations = 0;
    /// Set for converged runs of systems built symmetric.
    std::optional<bool> symmetric_collapse;
    /// Error-bound failures along the trace; only audited with constants.
    std::size_t bound_violations = 0;
    bool bounds_audited = false;
};

struct SolveResult {
    EquilibriumReport report;
    IterationTrace trace;
};

/// Failure while evaluating the responses at iterate n.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, std::size_t n, ProductPoint point)
        : Error(what), n_(n), point_(std::move(point)) {}

    [[nodiscard]] std::size_t iteration() const noexcept { return n_; }
    [[nodiscard]] const ProductPoint& point() const noexcept { return point_; }

private:
    std::size_t n_;
    ProductPoint point_;
};

/// EvaluationError raised inside solve(); carries the trace up to the failing iterate.
class SolveError : public EvaluationError {
public:
    SolveError(const EvaluationError& cause, IterationTrace partial)
        : EvaluationError(cause), partial_(std::move(partial)) {}

    [[nodiscard]] const IterationTrace& partial_trace() const noexcept { return partial_; }

private:
    IterationTrace partial_;
};

/// One simultaneous update (x, y) -> (F1(x, y), F2(x, y)), projected.
/// `n` only labels errors.
[[nodiscard]] ProductPoint step(const ResponseSystem& sys, const ProductPoint& p,
                                std::size_t n = 0);

/// Iterates step() from `start`. Stop rules are checked after every step in the
/// order converged, cycle, diverged; max_iters applies last.
[[nodiscard]] SolveResult solve(const ResponseSystem& sys, const ProductPoint& start,
                                const SolverPolicy& policy = {});

/// k^n / (1 - k) * d01
[[nodiscard]] double a_priori_bound(double k, double d01, std::size_t n);

/// k / (1 - k) * d_n
[[nodiscard]] double a_posteriori_bound(double k, double d_n);

/// Counts indices at which any of
///   rho(limit, p_n) <= k^n/(1-k) rho(p_0, p_1)
///   rho(limit, p_n) <= k/(1-k) rho(p_n, p_{n-1})
///   rho(limit, p_n) <= k rho(limit, p_{n-1})
/// fails by more than kAuditTolerance + (1 + k) * limit_error, where
/// limit_error bounds rho(limit, true fixed point).
[[nodiscard]] std::size_t verify_bounds(const IterationTrace& trace, const ProductPoint& limit,
                                        double k, double limit_error = 0.0);

/// d(xi, eta) <= tol for a converged run. Throws NotApplicable when the system is
/// not built symmetric, the components have different dimensions, or the run did
/// not converge.
[[nodiscard]] bool symmetric_collapse(const ResponseSystem& sys, const EquilibriumReport& report,
                                      double tol);

}  // namespace coupled
