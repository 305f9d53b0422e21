#pragma once

#include <json.hpp>

#include "cpilink/backtest.hpp"
#include "cpilink/distress.hpp"
#include "cpilink/johansen.hpp"
#include "cpilink/model.hpp"
#include "cpilink/search.hpp"
#include "cpilink/unitroot.hpp"

namespace cpilink {

// Versioned model document: {schema_version, ticker, cpi1, tau1, cpi2, tau2,
// b1, b2, c, d, sigma, window:{first,last}, residuals:[...]}.
inline constexpr int kModelSchemaVersion = 1;

nlohmann::json model_to_json(const FittedModel& model);
// Throws SchemaError on version mismatch or missing/ill-typed fields.
FittedModel model_from_json(const nlohmann::json& j);

// Top-k list plus a config echo and candidate counts. Wall time is reported
// on the console, never in the file, so reruns are byte-identical.
nlohmann::json search_result_to_json(const SearchResult& result, const SearchConfig& config);

nlohmann::json unit_root_to_json(const UnitRootReport& report);
nlohmann::json johansen_to_json(const JohansenReport& report);
nlohmann::json comparison_to_json(const ComparisonReport& report);
nlohmann::json distress_to_json(const DistressSignal& signal);
nlohmann::json debt_to_json(const DebtEstimate& estimate);

}  // namespace cpilink
