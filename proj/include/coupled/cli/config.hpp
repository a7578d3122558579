#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coupled/contraction.hpp"
#include "coupled/markets.hpp"
#include "coupled/sampling.hpp"
#include "coupled/solver.hpp"

namespace coupled::cli {

/// P = intercept - slope_x x - slope_y y, c1 = quad_first x^2 + lin_first x, c2 likewise.
struct CournotSpec {
    double intercept = 0.0;
    double slope_x = 0.0;
    double slope_y = 0.0;
    double quad_first = 0.0;
    double lin_first = 0.0;
    double quad_second = 0.0;
    double lin_second = 0.0;
    double h = 1e-5;         ///< first-derivative step
    double h_second = 1e-3;  ///< second-difference step
};

struct ModelConfig {
    std::string kind;  ///< affine | cournot-quadratic | isoelastic | surplus | piecewise
    std::optional<AffineCoefficients> affine;
    /// Required for cournot-quadratic; optional payoff model for other kinds.
    std::optional<CournotSpec> cournot;
    std::optional<IsoelasticParams> isoelastic;
    std::optional<SurplusCoefficients> surplus;
    std::vector<Piece> first_pieces;
    std::vector<Piece> second_pieces;
    std::vector<Interval> first_domain;
    std::vector<Interval> second_domain;
    Projection projection = Projection::ClampBelowAtZero;
};

/// Throws FeasibilityError for infeasible isoelastic parameters and
/// ConfigurationError for inconsistent blocks.
[[nodiscard]] ResponseSystem build_model(const ModelConfig& m);

/// The payoff model of the `cournot` block. Throws ConfigurationError without one.
[[nodiscard]] CournotModel cournot_model(const ModelConfig& m);

enum class CommandKind { Solve, Certify, ReproduceTable, EstimateLipschitz, SecondOrderCheck };

struct Command {
    CommandKind kind;
    std::string argument;  ///< table name for ReproduceTable
};

struct ExperimentConfig {
    std::string name;
    ModelConfig model;
    std::vector<ProductPoint> starts;
    std::vector<Command> commands;
    SolverPolicy solver;
    std::optional<HardyRogersConstants> constants;
    bool expect_certificate = true;
    /// Unset fields fall back to SamplerPolicy::default_for.
    std::optional<std::size_t> grid_points;
    std::size_t random_pairs = 0;
    std::uint64_t seed = 0;
    std::filesystem::path output = "out";

    /// Sampler for a product domain of dimension `dim`.
    [[nodiscard]] SamplerPolicy sampler(std::size_t dim) const;
};

/// Parses and validates a JSON experiment document. Errors are
/// ConfigurationError with `source:line:column` for syntax errors and the JSON
/// pointer of the offending field otherwise.
[[nodiscard]] ExperimentConfig parse_config(std::string_view text, std::string_view source);

[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace coupled::cli
