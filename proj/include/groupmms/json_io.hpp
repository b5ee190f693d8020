#pragma once

#include "groupmms/algorithms.hpp"
#include "groupmms/experiment.hpp"
#include "groupmms/hard_instances.hpp"
#include "groupmms/instance.hpp"
#include "groupmms/maximin.hpp"

#include "json.hpp"

namespace groupmms {

// nlohmann values for composing CLI output. Rationals appear as canonical
// strings ("p/q" or integer); +inf as the string "inf".

nlohmann::json rational_to_json(const Rational& value);
nlohmann::json ext_rational_to_json(const ExtRational& value);

nlohmann::json instance_to_json_value(const Instance& instance);
nlohmann::json allocation_to_json_value(const Allocation& allocation);
nlohmann::json mms_result_to_json_value(const MmsResult& result);
nlohmann::json ratio_report_to_json_value(const RatioReport& report);
nlohmann::json best_ratio_to_json_value(const BestRatioResult& result);
nlohmann::json solve_trace_to_json_value(const SolveTrace& trace);
nlohmann::json verify_report_to_json_value(const VerifyReport& report);
nlohmann::json experiment_table_to_json_value(const ExperimentTable& table);

}  // namespace groupmms
