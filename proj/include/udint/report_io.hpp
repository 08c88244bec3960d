#pragma once

#include <string>

#include <json.hpp>

#include "udint/distribution.hpp"
#include "udint/equidistribution.hpp"
#include "udint/estimators.hpp"

namespace udint {

// 17 significant digits, '.' separator, no locale: doubles survive a
// CSV round trip bit-exactly.
std::string fmt_real(double v);

std::string trajectory_csv(const Trajectory& t);
std::string discrepancy_csv(const DiscrepancyReport& r);
std::string condition_csv(const ConditionReport& r);

nlohmann::json trajectory_json(const Trajectory& t);
nlohmann::json discrepancy_json(const DiscrepancyReport& r);
nlohmann::json condition_json(const ConditionReport& r);

} // namespace udint
