#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <json.hpp>

#include "dupdel/analysis.hpp"

namespace dupdel {

/// Fields: m, tv_distance, fitted_exponent, fitted_rate (null when absent),
/// growth_ratio, per_k_errors as [[k, error], ...].
nlohmann::json report_to_json(const ComparisonReport& r);
/// Throws std::invalid_argument on schema violations.
ComparisonReport report_from_json(const nlohmann::json& j);

/// Flat CSV for plotting, one row per (replica, m, k):
/// `replica,m,k,per_k_error,tv_distance,fitted_exponent,fitted_rate,growth_ratio`.
/// Absent fits are empty fields.
void write_reports_csv(std::ostream& out, std::span<const std::vector<ComparisonReport>> replicas);

}  // namespace dupdel
