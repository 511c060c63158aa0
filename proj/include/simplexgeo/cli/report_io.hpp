#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "simplexgeo/identity.hpp"

namespace simplexgeo::cli {

/// Flat JSON object for one identity report; every field needed to rerun it.
nlohmann::json report_to_json(const IdentityReport& report);

/// Timestamp and host, kept apart from the numeric report body.
nlohmann::json run_metadata();

/// CSV header and one row per report; reals printed with 17 significant digits.
void write_reports_csv(std::ostream& out, const std::vector<IdentityReport>& reports);

/// Shortest-exact text for a real: %.17g.
std::string format_real(double value);

}  // namespace simplexgeo::cli
