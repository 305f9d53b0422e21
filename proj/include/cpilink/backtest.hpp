#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cpilink/catalog.hpp"
#include "cpilink/model.hpp"
#include "cpilink/search.hpp"

namespace cpilink {

// Point-in-time replay: model fit on data truncated at `asof`, projected
// forward against actual CPI.
struct AsOfRun {
    MonthlyIndex asof{};
    FittedModel model;                          // model.window.last <= asof
    std::optional<MonthlySeries> projection;    // starts the month after asof
    std::vector<std::pair<MonthlyIndex, double>> divergence;  // observed - projected
    double rms_forward = 0.0;
};

// Best-fit search with every series cut at `asof`; nothing after that month
// can influence the result. cpi_publication_lag additionally holds back the
// latest CPI month (month m publishes mid m+1).
FittedModel fit_asof(const MonthlySeries& prices, const CpiCatalog& catalog, MonthlyIndex asof,
                     const SearchConfig& config, bool cpi_publication_lag = false);

// Latest month the model can be evaluated at, given CPI coverage.
MonthlyIndex max_projection_end(const FittedModel& model, const CpiCatalog& catalog);

// Model evaluated from the month after its fit window through `through`.
// Throws WindowUnavailable (with the feasible horizon) when `through` is
// beyond CPI coverage.
MonthlySeries project(const FittedModel& model, const CpiCatalog& catalog, MonthlyIndex through);

AsOfRun run_asof(const MonthlySeries& prices, const CpiCatalog& catalog, MonthlyIndex asof,
                 MonthlyIndex through, const SearchConfig& config,
                 bool cpi_publication_lag = false);

struct DivergenceRule {
    double sigma_multiple = 2.0;
    int consecutive_months = 3;
};

struct ComparisonRow {
    MonthlyIndex month{};
    double observed = 0.0;
    double asof_pred = 0.0;
    double later_pred = 0.0;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    double rms_asof = 0.0;
    double rms_later = 0.0;
    // First month of the first run of `consecutive_months` months with
    // |asof_pred - observed| above sigma_multiple * asof sigma.
    std::optional<MonthlyIndex> divergence_onset;
};

// Per-month table of observed vs. the as-of projection and the later model's
// fitted values, over the months all three cover.
ComparisonReport compare(const AsOfRun& asof_run, const FittedModel& later_model,
                         const MonthlySeries& observed, const DivergenceRule& rule = {});

}  // namespace cpilink
