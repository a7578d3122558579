#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coupled/solver.hpp"

namespace coupled::cli {

/// Shortest decimal text that parses back to the same double.
[[nodiscard]] std::string format_number(double v);
/// Empty string for nullopt.
[[nodiscard]] std::string format_number(const std::optional<double>& v);

/// Header and rows for a trace:
///   n, x (or x1..), y (or y1..), step_distance, a_priori, a_posteriori
[[nodiscard]] std::string trace_csv(const IterationTrace& trace);

/// Columns n, distance_to_limit, a_priori, a_posteriori. The distance column is
/// empty unless `limit` is given.
[[nodiscard]] std::string emit_plotdata(const IterationTrace& trace,
                                        const std::optional<ProductPoint>& limit);

[[nodiscard]] std::vector<double> flatten(const ProductPoint& p);

}  // namespace coupled::cli
