#pragma once

#include "gheat/free_boundary.hpp"
#include "gheat/oracles.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace gheat {

inline constexpr int kSchemaVersion = 1;

/// 17 significant digits, enough to round-trip any double.
std::string format_number(double v);

void to_json(nlohmann::json& j, const FreeBoundary& fb);
void to_json(nlohmann::json& j, const McEstimate& est);

/// Plain CSV: one header line, then each row at full precision.
void write_csv(std::ostream& os, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

/// Columns x, u_numeric, u_closed, error over every node.
void write_grid_csv(std::ostream& os, const GridSolution& sol);

} // namespace gheat
