#include "cpilink/report_json.hpp"

#include "cpilink/errors.hpp"

namespace cpilink {
namespace {

using nlohmann::json;

MonthlyIndex month_from_json(const json& j, const char* field) {
    if (!j.is_string()) throw SchemaError(std::string("field '") + field + "' must be 'YYYY-MM'");
    auto m = MonthlyIndex::parse(j.get<std::string>());
    if (!m) throw SchemaError(std::string("field '") + field + "': bad month '" +
                              j.get<std::string>() + "'");
    return *m;
}

template <typename T>
T require(const json& j, const char* field) {
    if (!j.contains(field)) throw SchemaError(std::string("missing field '") + field + "'");
    try {
        return j.at(field).get<T>();
    } catch (const json::exception&) {
        throw SchemaError(std::string("field '") + field + "' has the wrong type");
    }
}

json cv_map_to_json(const std::map<int, double>& cv) {
    json out = json::object();
    for (const auto& [level, value] : cv) out[std::to_string(level) + "%"] = value;
    return out;
}

}  // namespace

json model_to_json(const FittedModel& model) {
    return json{{"schema_version", kModelSchemaVersion},
                {"ticker", model.spec.ticker},
                {"cpi1", model.spec.cpi1},
                {"tau1", model.spec.tau1},
                {"cpi2", model.spec.cpi2},
                {"tau2", model.spec.tau2},
                {"b1", model.b1},
                {"b2", model.b2},
                {"c", model.c},
                {"d", model.d},
                {"sigma", model.sigma},
                {"window", {{"first", model.window.first.str()}, {"last", model.window.last.str()}}},
                {"residuals", model.residuals}};
}

FittedModel model_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("model document must be a JSON object");
    const int version = require<int>(j, "schema_version");
    if (version != kModelSchemaVersion)
        throw SchemaError("unsupported schema_version " + std::to_string(version) + ", expected " +
                          std::to_string(kModelSchemaVersion));

    FittedModel m;
    m.spec.ticker = require<std::string>(j, "ticker");
    m.spec.cpi1 = require<std::string>(j, "cpi1");
    m.spec.tau1 = require<int>(j, "tau1");
    m.spec.cpi2 = require<std::string>(j, "cpi2");
    m.spec.tau2 = require<int>(j, "tau2");
    m.b1 = require<double>(j, "b1");
    m.b2 = require<double>(j, "b2");
    m.c = require<double>(j, "c");
    m.d = require<double>(j, "d");
    m.sigma = require<double>(j, "sigma");
    if (!j.contains("window") || !j.at("window").is_object())
        throw SchemaError("missing or ill-formed field 'window'");
    m.window.first = month_from_json(j.at("window").value("first", json()), "window.first");
    m.window.last = month_from_json(j.at("window").value("last", json()), "window.last");
    if (m.window.last < m.window.first)
        throw SchemaError("window ends before it starts: " + m.window.str());
    m.residuals = require<std::vector<double>>(j, "residuals");
    if (static_cast<int>(m.residuals.size()) != m.window.count())
        throw SchemaError("residual count " + std::to_string(m.residuals.size()) +
                          " does not match window " + m.window.str());
    return m;
}

json search_result_to_json(const SearchResult& result, const SearchConfig& config) {
    json models = json::array();
    for (const auto& m : result.ranked) models.push_back(model_to_json(m));
    return json{{"schema_version", kModelSchemaVersion},
                {"config",
                 {{"lag_min", config.lag_min},
                  {"lag_max", config.lag_max},
                  {"window",
                   {{"first", result.window_requested.first.str()},
                    {"last", result.window_requested.last.str()}}},
                  {"top_k", config.top_k},
                  {"min_obs", config.min_obs},
                  {"strict_window", config.strict_window}}},
                {"evaluated", result.evaluated_count},
                {"rejected", result.rejected_count},
                {"models", models}};
}

json unit_root_to_json(const UnitRootReport& report) {
    json j{{"z_t", report.statistic_t},
           {"z_rho", report.statistic_rho},
           {"lags", report.lags_used},
           {"nobs", report.nobs},
           {"critical_values_t", cv_map_to_json(report.critical_values)},
           {"critical_values_rho", cv_map_to_json(report.critical_values_rho)}};
    if (report.reject_unit_root_at)
        j["reject_unit_root_at"] = std::to_string(*report.reject_unit_root_at) + "%";
    else
        j["reject_unit_root_at"] = nullptr;
    return j;
}

json johansen_to_json(const JohansenReport& report) {
    json stages = json::array();
    for (std::size_t r = 0; r < report.trace_stats.size(); ++r) {
        stages.push_back(json{{"null_rank", r},
                              {"eigenvalue", report.eigenvalues[r]},
                              {"trace", report.trace_stats[r]},
                              {"critical_values", cv_map_to_json(report.critical_values[r])}});
    }
    return json{{"stages", stages},
                {"rank", report.rank},
                {"t_effective", report.t_effective},
                {"vecm_lag", report.vecm_lag},
                {"degenerate", report.degenerate}};
}

json comparison_to_json(const ComparisonReport& report) {
    json rows = json::array();
    for (const auto& r : report.rows)
        rows.push_back(json{{"month", r.month.str()},
                            {"observed", r.observed},
                            {"asof_pred", r.asof_pred},
                            {"later_pred", r.later_pred}});
    json j{{"rows", rows}, {"rms_asof", report.rms_asof}, {"rms_later", report.rms_later}};
    if (report.divergence_onset)
        j["divergence_onset"] = report.divergence_onset->str();
    else
        j["divergence_onset"] = "none";
    return j;
}

json distress_to_json(const DistressSignal& signal) {
    json j{{"ticker", signal.ticker},
           {"first_negative", signal.first_negative.str()},
           {"trough_price", signal.trough_price},
           {"trough_month", signal.trough_month.str()},
           {"consecutive_negative_months", signal.consecutive_negative_months}};
    if (signal.recovery_month)
        j["recovery_month"] = signal.recovery_month->str();
    else
        j["recovery_month"] = nullptr;
    return j;
}

json debt_to_json(const DebtEstimate& estimate) {
    return json{{"ticker", estimate.ticker},
                {"shares_outstanding", estimate.shares_outstanding},
                {"reference_price", estimate.reference_price},
                {"debt", estimate.debt}};
}

}  // namespace cpilink
