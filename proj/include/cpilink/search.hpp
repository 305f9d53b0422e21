#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cpilink/catalog.hpp"
#include "cpilink/model.hpp"
#include "cpilink/regression.hpp"

namespace cpilink {

struct SearchConfig {
    int lag_min = -6;
    int lag_max = 14;  // hard cap in the CLI; the library takes what it is given
    MonthlyIndex window_first{2003, 7};
    std::optional<MonthlyIndex> window_last;  // default: last available price month
    int top_k = 10;
    int min_obs = 60;
    // Default: each candidate is fit over its own maximal feasible sub-window.
    // Strict mode fixes the one window feasible for every lag choice, so
    // sigmas are directly comparable.
    bool strict_window = false;
    int threads = 0;  // 0 = hardware concurrency

    void validate() const;
    Window resolve_window(const MonthlySeries& prices) const;
};

struct SearchResult {
    std::vector<FittedModel> ranked;  // ascending by (sigma, cpi1, cpi2, tau1, tau2)
    std::uint64_t evaluated_count = 0;
    std::uint64_t rejected_count = 0;  // rank-deficient or window-infeasible
    Window window_requested{};
};

// Total candidate order used for ranking and tie-breaks.
bool model_order_less(const FittedModel& a, const FittedModel& b);

// Fits every unordered component pair over every (tau1, tau2) in the lag
// range. Deterministic for any thread count. Throws NoFeasibleCandidate when
// nothing survives.
SearchResult search_best(const MonthlySeries& prices, const CpiCatalog& catalog,
                         const SearchConfig& config);

struct StabilityEntry {
    MonthlyIndex end_month;
    std::optional<ModelSpec> winner;
    std::string error;  // non-empty when the search failed at this end month
};
struct StabilityReport {
    std::vector<StabilityEntry> entries;
    bool stable = false;  // every end month succeeded with the same winner
};

// Re-runs the search with the window truncated at each of the last
// `months_back` end months.
StabilityReport rolling_stability(const MonthlySeries& prices, const CpiCatalog& catalog,
                                  const SearchConfig& config, int months_back);

}  // namespace cpilink
