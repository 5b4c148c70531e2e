#pragma once

#include "copord/dependence.hpp"
#include "copord/marginal.hpp"
#include "copord/orders.hpp"
#include "copord/propositions.hpp"

#include <string>
#include <vector>

#include <json.hpp>

namespace copord {

nlohmann::json to_json(const PropertyReport& r);
PropertyReport property_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SkewVerdict& v);
SkewVerdict skew_verdict_from_json(const nlohmann::json& j);

nlohmann::json to_json(const OrderVerdict& v);
OrderVerdict order_verdict_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TheoremReport& r);
TheoremReport theorem_report_from_json(const nlohmann::json& j);

/// Temp file + rename so readers never observe a partial report.
void write_text_atomic(const std::string& path, const std::string& content);
void write_json_atomic(const std::string& path, const nlohmann::json& j);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

/// Header row + comma-separated columns of shortest round-trip floats.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns);

} // namespace copord
