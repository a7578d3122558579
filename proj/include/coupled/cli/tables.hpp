#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace coupled::cli {

/// Names accepted by reproduce_table.
[[nodiscard]] const std::vector<std::string>& table_names();

/// CSV with header n,x_n,y_n for the iteration tables of the worked examples.
///   table1  cycling example from (20, 30), n = 0..6
///   table2  cycling example from (20, 31), n = 0..6
///   table3  slow contraction from (10, 30) at the published indices, with the
///           published values, and a match flag per cell (half a unit in the
///           last published digit)
/// Throws ConfigurationError for other names.
[[nodiscard]] std::string reproduce_table(std::string_view name);

}  // namespace coupled::cli
