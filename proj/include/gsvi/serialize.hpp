#pragma once

#include "gsvi/butterfly.hpp"
#include "gsvi/calendar.hpp"
#include "gsvi/check.hpp"
#include "gsvi/density.hpp"
#include "gsvi/oracles.hpp"

#include <json.hpp>

namespace gsvi {

/// Non-finite values become the strings "inf", "-inf" or "nan".
nlohmann::json json_number(double x);

nlohmann::json to_json(const OracleReport& report);
nlohmann::json to_json(const CalendarVerdict& verdict);
nlohmann::json to_json(const ButterflyVerdict& verdict);
nlohmann::json to_json(const WingDiagnostics& diagnostics);
/// Summary of a density slice (no grid values).
nlohmann::json to_json(const DensitySlice& slice);
nlohmann::json to_json(const SurfaceCheck& check);

}  // namespace gsvi
