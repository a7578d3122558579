#include "coupled/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "coupled/errors.hpp"
#include "coupled/oracle.hpp"

namespace coupled {

HardyRogersConstants HardyRogersConstants::from_five(double a1, double a2, double a3, double a4,
                                                     double a5) {
    for (double a : {a1, a2, a3, a4, a5}) {
        if (!(a >= 0.0)) throw InvalidConstants("Hardy-Rogers weights must be nonnegative");
    }
    if (!(a1 + a2 + a3 + a4 + a5 < 1.0)) {
        throw InvalidConstants("Hardy-Rogers weights must sum to less than 1");
    }
    return {a1, (a2 + a3) / 2.0, (a4 + a5) / 2.0};
}

bool HardyRogersConstants::valid() const noexcept {
    return k1 >= 0.0 && k2 >= 0.0 && k3 >= 0.0 && k1 + 2.0 * k2 + 2.0 * k3 < 1.0;
}

void HardyRogersConstants::validate() const {
    if (!valid()) {
        throw InvalidConstants("constants (" + std::to_string(k1) + ", " + std::to_string(k2) +
                               ", " + std::to_string(k3) +
                               ") violate k_i >= 0 and k1 + 2 k2 + 2 k3 < 1");
    }
}

double contraction_factor(const HardyRogersConstants& c) {
    c.validate();
    return (c.k1 + c.k2 + c.k3) / (1.0 - c.k2 - c.k3);
}

double FourCoefficientConstants::s() const noexcept {
    return std::max(alpha + gamma, beta + delta);
}

HardyRogersConstants reduce_four_coefficients(const FourCoefficientConstants& fc) {
    for (double v : {fc.alpha, fc.beta, fc.gamma, fc.delta}) {
        if (!(v >= 0.0)) throw InvalidConstants("four coefficients must be nonnegative");
    }
    const double s = fc.s();
    if (!(s < 1.0)) {
        throw InvalidConstants("max{alpha+gamma, beta+delta} = " + std::to_string(s) +
                               " is not below 1");
    }
    return {s, 0.0, 0.0};
}

std::string_view to_string(ConditionKind kind) noexcept {
    switch (kind) {
        case ConditionKind::Banach: return "banach";
        case ConditionKind::Kannan: return "kannan";
        case ConditionKind::Chatterjea: return "chatterjea";
        case ConditionKind::HardyRogers: return "hardy_rogers";
    }
    return "unknown";
}

ConditionKind classify(const HardyRogersConstants& c) noexcept {
    if (c.k2 == 0.0 && c.k3 == 0.0) return ConditionKind::Banach;
    if (c.k1 == 0.0 && c.k3 == 0.0) return ConditionKind::Kannan;
    if (c.k1 == 0.0 && c.k2 == 0.0) return ConditionKind::Chatterjea;
    return ConditionKind::HardyRogers;
}

namespace {

struct Weights {
    double k1, k2, k3;
};

// lhs/rhs of the inequality for concatenated points z, w with images gz, gw and
// self-displacements dz = rho(z, gz), dw = rho(w, gw).
inline HardyRogersGap gap_flat(std::span<const double> z, std::span<const double> gz, double dz,
                               std::span<const double> w, std::span<const double> gw, double dw,
                               const Weights& k) {
    const double lhs = l1_distance(gz, gw);
    double rhs = k.k1 * l1_distance(z, w);
    if (k.k2 != 0.0) rhs += k.k2 * (dz + dw);
    if (k.k3 != 0.0) rhs += k.k3 * (l1_distance(z, gw) + l1_distance(w, gz));
    return {lhs, rhs};
}

// Points plus their images under the projected map.
struct EvaluatedCloud {
    std::size_t dim = 0;
    std::vector<double> z;
    std::vector<double> g;
    std::vector<double> disp;

    [[nodiscard]] std::size_t size() const noexcept { return dim == 0 ? 0 : disp.size(); }
    [[nodiscard]] std::span<const double> point(std::size_t i) const {
        return {z.data() + i * dim, dim};
    }
    [[nodiscard]] std::span<const double> image(std::size_t i) const {
        return {g.data() + i * dim, dim};
    }
};

EvaluatedCloud evaluate(const ResponseSystem& sys, const PointCloud& cloud) {
    EvaluatedCloud out;
    out.dim = cloud.dim;
    out.z = cloud.coords;
    out.g.reserve(cloud.coords.size());
    out.disp.reserve(cloud.size());
    const std::size_t first_dim = sys.first_domain().dim();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        std::span<const double> z(cloud.at(i), cloud.dim);
        const auto image = concat(sys.apply(split(z, first_dim)));
        out.disp.push_back(l1_distance(z, image));
        out.g.insert(out.g.end(), image.begin(), image.end());
    }
    return out;
}

// Running reduction. Ties in slack go to the pair that comes first in the
// canonical order: grid pairs by (i, j), then random pairs by index.
struct PairStats {
    std::size_t count = 0;
    double worst_slack = std::numeric_limits<double>::infinity();
    double worst_ratio = 0.0;
    bool has_worst = false;
    bool worst_is_random = false;
    std::size_t wi = 0;
    std::size_t wj = 0;

    void record(const HardyRogersGap& gap, bool is_random, std::size_t i, std::size_t j) {
        ++count;
        const double slack = gap.rhs - gap.lhs;
        if (!has_worst || slack < worst_slack ||
            (slack == worst_slack && precedes(is_random, i, j))) {
            worst_slack = slack;
            worst_is_random = is_random;
            wi = i;
            wj = j;
            has_worst = true;
        }
        if (gap.rhs > 0.0) worst_ratio = std::max(worst_ratio, gap.lhs / gap.rhs);
    }

    [[nodiscard]] bool precedes(bool is_random, std::size_t i, std::size_t j) const {
        if (is_random != worst_is_random) return !is_random;
        return i < wi || (i == wi && j < wj);
    }

    void merge(const PairStats& other) {
        count += other.count;
        worst_ratio = std::max(worst_ratio, other.worst_ratio);
        if (!other.has_worst) return;
        if (!has_worst || other.worst_slack < worst_slack ||
            (other.worst_slack == worst_slack &&
             precedes(other.worst_is_random, other.wi, other.wj))) {
            worst_slack = other.worst_slack;
            worst_is_random = other.worst_is_random;
            wi = other.wi;
            wj = other.wj;
            has_worst = true;
        }
    }
};

std::size_t worker_count(std::size_t rows) {
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    return std::clamp<std::size_t>(rows / 64, 1, std::min<std::size_t>(hw, 16));
}

struct SampleSet {
    EvaluatedCloud grid;
    EvaluatedCloud random_first;
    EvaluatedCloud random_second;
};

SampleSet draw(const ResponseSystem& sys, const SamplerPolicy& sampler) {
    const Box box = product_box(sys.first_domain(), sys.second_domain());
    if (box.degenerate()) throw ConfigurationError("domain is a single point");
    if (sampler.grid_points == 0 && sampler.random_pairs == 0) {
        throw ConfigurationError("sampler selects no pairs");
    }
    SampleSet s;
    s.grid = evaluate(sys, grid_nodes(box, sampler.grid_points));
    // Both ends of every random pair come from one stream: point 2k and 2k+1.
    const PointCloud rnd = uniform_points(box, 2 * sampler.random_pairs, sampler.seed);
    PointCloud a{rnd.dim, {}};
    PointCloud b{rnd.dim, {}};
    for (std::size_t k = 0; k < sampler.random_pairs; ++k) {
        a.coords.insert(a.coords.end(), rnd.at(2 * k), rnd.at(2 * k) + rnd.dim);
        b.coords.insert(b.coords.end(), rnd.at(2 * k + 1), rnd.at(2 * k + 1) + rnd.dim);
    }
    s.random_first = evaluate(sys, a);
    s.random_second = evaluate(sys, b);
    return s;
}

PairStats scan(const SampleSet& s, const Weights& k) {
    const EvaluatedCloud& grid = s.grid;
    const std::size_t n = grid.size();
    const std::size_t workers = worker_count(n);
    std::vector<PairStats> partial(workers);

    auto run_rows = [&](std::size_t t) {
        PairStats& acc = partial[t];
        for (std::size_t i = t; i < n; i += workers) {
            const auto zi = grid.point(i);
            const auto gi = grid.image(i);
            for (std::size_t j = i + 1; j < n; ++j) {
                acc.record(gap_flat(zi, gi, grid.disp[i], grid.point(j), grid.image(j),
                                    grid.disp[j], k),
                           false, i, j);
            }
        }
    };

    if (workers == 1) {
        run_rows(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(run_rows, t);
    }

    PairStats total;
    for (const auto& p : partial) total.merge(p);

    const auto& a = s.random_first;
    const auto& b = s.random_second;
    for (std::size_t r = 0; r < a.size(); ++r) {
        total.record(gap_flat(a.point(r), a.image(r), a.disp[r], b.point(r), b.image(r),
                              b.disp[r], k),
                     true, r, 0);
    }
    return total;
}

std::pair<ProductPoint, ProductPoint> pair_at(const SampleSet& s, const PairStats& st,
                                              std::size_t first_dim) {
    if (st.worst_is_random) {
        return {split(s.random_first.point(st.wi), first_dim),
                split(s.random_second.point(st.wi), first_dim)};
    }
    return {split(s.grid.point(st.wi), first_dim), split(s.grid.point(st.wj), first_dim)};
}

}  // namespace

HardyRogersGap hr_gap(const ResponseSystem& sys, const HardyRogersConstants& c,
                      const ProductPoint& p, const ProductPoint& q) {
    if (!sys.contains(p) || !sys.contains(q)) {
        throw DomainError("hr_gap: point outside the system domain");
    }
    const auto zp = concat(p);
    const auto zq = concat(q);
    const auto gp = concat(sys.apply(p));
    const auto gq = concat(sys.apply(q));
    return gap_flat(zp, gp, l1_distance(zp, gp), zq, gq, l1_distance(zq, gq),
                    Weights{c.k1, c.k2, c.k3});
}

CertificateReport certify(const ResponseSystem& sys, const HardyRogersConstants& c,
                          const SamplerPolicy& sampler) {
    c.validate();
    const SampleSet samples = draw(sys, sampler);
    const PairStats st = scan(samples, Weights{c.k1, c.k2, c.k3});

    CertificateReport report;
    report.kind = classify(c);
    report.constants = c;
    report.pairs_tested = st.count;
    report.worst_slack = st.has_worst ? st.worst_slack : 0.0;
    report.worst_ratio = st.worst_ratio;
    report.passed = report.worst_slack >= -kSlackTolerance;
    if (!report.passed) {
        report.violating_pair = pair_at(samples, st, sys.first_domain().dim());
    }
    return report;
}

double estimate_lipschitz(const ResponseSystem& sys, const SamplerPolicy& sampler) {
    const SampleSet samples = draw(sys, sampler);
    // With weights (1, 0, 0) the rhs is rho(p, q), so worst_ratio is the sup
    // of rho(Gp, Gq) / rho(p, q) over distinct sampled pairs.
    return scan(samples, Weights{1.0, 0.0, 0.0}).worst_ratio;
}

DerivativeBoundCheck partial_derivative_bound_check(const ResponseSystem& sys, double alpha,
                                                    const SamplerPolicy& sampler, double h) {
    if (!(h > 0.0)) throw ConfigurationError("finite-difference step must be positive");
    const Box box = product_box(sys.first_domain(), sys.second_domain());
    PointCloud pts = grid_nodes(box, sampler.grid_points);
    const PointCloud rnd = uniform_points(box, sampler.random_pairs, sampler.seed);
    pts.coords.insert(pts.coords.end(), rnd.coords.begin(), rnd.coords.end());

    const std::size_t d1 = sys.first_domain().dim();
    const std::size_t dim = box.dim();
    DerivativeBoundCheck out;

    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<double> z(pts.at(i), pts.at(i) + dim);
        bool interior = true;
        for (std::size_t c = 0; c < dim; ++c) {
            if (z[c] - h < box[c].lo || z[c] + h > box[c].hi) interior = false;
        }
        if (!interior) {
            ++out.points_skipped;
            continue;
        }
        ++out.points_checked;
        // Own-output block: F1 against x coordinates, F2 against y coordinates.
        for (std::size_t player = 0; player < 2; ++player) {
            const std::size_t lo = player == 0 ? 0 : d1;
            const std::size_t hi = player == 0 ? d1 : dim;
            for (std::size_t a = 0; a < hi - lo; ++a) {
                auto component = [&](std::span<const double> w) {
                    const ProductPoint p = split(w, d1);
                    return player == 0 ? sys.raw_first(p)[a] : sys.raw_second(p)[a];
                };
                for (std::size_t b = lo; b < hi; ++b) {
                    const double d = std::abs(finite_difference(component, z, b, h).value);
                    out.max_abs_derivative = std::max(out.max_abs_derivative, d);
                }
            }
        }
    }
    out.within_bound = out.max_abs_derivative <= alpha + kDerivativeTolerance;
    return out;
}

}  // namespace coupled
