#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rheston/monte_carlo.hpp"

namespace rheston {

// CSV columns, in order: scheme,n,mean,stat_error,ci_low,ci_high,wall_time_seconds
std::string table_to_csv(const std::vector<TableRow>& rows,
                         const std::optional<double>& reference = std::nullopt);
std::string table_to_json(const std::vector<TableRow>& rows,
                          const std::optional<double>& reference = std::nullopt);

std::string estimate_to_csv(const McEstimate& estimate, const std::string& scheme, int num_steps);
std::string estimate_to_json(const McEstimate& estimate, const std::string& scheme, int num_steps);

}  // namespace rheston
