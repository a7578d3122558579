#include "coupled/solver.hpp"

#include <cmath>
#include <utility>

namespace coupled {

void SolverPolicy::validate() const {
    if (!(convergence_tol > 0.0)) throw ConfigurationError("convergence_tol must be positive");
    if (max_iters < 1) throw ConfigurationError("max_iters must be at least 1");
    if (cycle_window < 2) throw ConfigurationError("cycle_window must be at least 2");
    if (!(cycle_tol >= 0.0)) throw ConfigurationError("cycle_tol must be nonnegative");
    if (!(divergence_bound > 0.0)) throw ConfigurationError("divergence_bound must be positive");
    if (constants) constants->validate();
}

std::string to_string(StopReason reason, std::size_t period) {
    switch (reason) {
        case StopReason::Converged: return "converged";
        case StopReason::Cycle: return "cycle(" + std::to_string(period) + ")";
        case StopReason::Diverged: return "diverged";
        case StopReason::MaxIters: return "max_iters";
    }
    return "unknown";
}

ProductPoint step(const ResponseSystem& sys, const ProductPoint& p, std::size_t n) {
    ProductPoint next = [&] {
        try {
            return sys.apply(p);
        } catch (const EvaluationError&) {
            throw;
        } catch (const Error& e) {
            throw EvaluationError("evaluation failed at n=" + std::to_string(n) + ": " + e.what(),
                                  n, p);
        }
    }();
    if (!sys.contains(next)) {
        throw EvaluationError("response left the domain at n=" + std::to_string(n), n, p);
    }
    return next;
}

double a_priori_bound(double k, double d01, std::size_t n) {
    if (!(k >= 0.0 && k < 1.0)) throw InvalidConstants("contraction factor must lie in [0, 1)");
    return std::pow(k, static_cast<double>(n)) / (1.0 - k) * d01;
}

double a_posteriori_bound(double k, double d_n) {
    if (!(k >= 0.0 && k < 1.0)) throw InvalidConstants("contraction factor must lie in [0, 1)");
    return k / (1.0 - k) * d_n;
}

namespace {

bool exceeds(const ProductPoint& p, double bound) {
    for (double v : p.first) {
        if (std::abs(v) > bound) return true;
    }
    for (double v : p.second) {
        if (std::abs(v) > bound) return true;
    }
    return false;
}

// Smallest lag L in [2, window] with p_n back within tolerance of p_{n-L}.
std::size_t find_period(const std::vector<TraceEntry>& entries, double step_distance,
                        const SolverPolicy& policy) {
    const std::size_t n = entries.size() - 1;
    const ProductPoint& current = entries.back().point;
    for (std::size_t lag = 2; lag <= policy.cycle_window && lag <= n; ++lag) {
        const double back = product_distance(current, entries[n - lag].point);
        if (back <= policy.cycle_tol && back <= policy.cycle_relative_tol * step_distance) {
            return lag;
        }
    }
    return 0;
}

}  // namespace

SolveResult solve(const ResponseSystem& sys, const ProductPoint& start,
                  const SolverPolicy& policy) {
    policy.validate();
    if (!sys.contains(start)) throw DomainError("solve: start point outside the domain");

    std::optional<double> k;
    if (policy.constants) k = contraction_factor(*policy.constants);

    SolveResult result;
    IterationTrace& trace = result.trace;
    EquilibriumReport& report = result.report;
    trace.factor = k;
    trace.entries.push_back(TraceEntry{0, start, std::nullopt, std::nullopt, std::nullopt});

    bool stopped = false;
    for (std::size_t n = 1; n <= policy.max_iters && !stopped; ++n) {
        ProductPoint next = [&] {
            try {
                return step(sys, trace.entries.back().point, n - 1);
            } catch (const EvaluationError& e) {
                throw SolveError(e, trace);
            }
        }();
        const double dist = product_distance(next, trace.entries.back().point);

        TraceEntry entry{n, std::move(next), dist, std::nullopt, std::nullopt};
        if (k) {
            const double d01 = n == 1 ? dist : *trace.entries[1].step_distance;
            if (n == 1) trace.entries.front().a_priori = a_priori_bound(*k, d01, 0);
            entry.a_priori = a_priori_bound(*k, d01, n);
            entry.a_posteriori = a_posteriori_bound(*k, dist);
        }
        trace.entries.push_back(std::move(entry));

        const bool checks_live = n >= policy.min_iters;
        const bool small_step =
            dist <= policy.convergence_tol &&
            (!k || a_posteriori_bound(*k, dist) <= policy.convergence_tol);
        if (checks_live && small_step) {
            report.stop = StopReason::Converged;
            stopped = true;
        } else if (std::size_t period = checks_live ? find_period(trace.entries, dist, policy) : 0;
                   period != 0) {
            report.stop = StopReason::Cycle;
            report.cycle_period = period;
            stopped = true;
        } else if (exceeds(trace.entries.back().point, policy.divergence_bound)) {
            report.stop = StopReason::Diverged;
            stopped = true;
        }
        report.iterations = n;
    }
    if (!stopped) report.stop = StopReason::MaxIters;

    if (report.stop == StopReason::Converged) {
        const TraceEntry& last = trace.entries.back();
        report.point = last.point;
        if (sys.symmetric_hint() && last.point.first.size() == last.point.second.size()) {
            report.symmetric_collapse = symmetric_collapse(sys, report, policy.collapse_tol);
        }
        if (k) {
            const double limit_error = a_posteriori_bound(*k, *last.step_distance);
            report.bound_violations = verify_bounds(trace, last.point, *k, limit_error);
            report.bounds_audited = true;
        }
    }
    return result;
}

std::size_t verify_bounds(const IterationTrace& trace, const ProductPoint& limit, double k,
                          double limit_error) {
    if (!(k >= 0.0 && k < 1.0)) throw InvalidConstants("contraction factor must lie in [0, 1)");
    const auto& e = trace.entries;
    if (e.size() < 2) return 0;
    const double tol = kAuditTolerance + (1.0 + k) * limit_error;
    const double d01 = *e[1].step_distance;

    std::size_t violations = 0;
    double previous = product_distance(limit, e[0].point);
    if (previous > a_priori_bound(k, d01, 0) + tol) ++violations;
    for (std::size_t n = 1; n < e.size(); ++n) {
        const double err = product_distance(limit, e[n].point);
        const bool ok = err <= a_priori_bound(k, d01, n) + tol &&
                        err <= a_posteriori_bound(k, *e[n].step_distance) + tol &&
                        err <= k * previous + tol;
        if (!ok) ++violations;
        previous = err;
    }
    return violations;
}

bool symmetric_collapse(const ResponseSystem& sys, const EquilibriumReport& report, double tol) {
    if (!sys.symmetric_hint()) throw NotApplicable("system is not built symmetric");
    if (report.stop != StopReason::Converged || !report.point) {
        throw NotApplicable("symmetric collapse needs a converged run");
    }
    const ProductPoint& p = *report.point;
    if (p.first.size() != p.second.size()) {
        throw NotApplicable("components have different dimensions");
    }
    return l1_distance(p.first, p.second) <= tol;
}

}  // namespace coupled
