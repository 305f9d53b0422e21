#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cpilink::selfcheck {

// Monte-Carlo rates behind the statistical checks. Replications draw
// independent deterministic seed streams from `root_seed`.

double adf_random_walk_rejection_rate(std::uint64_t root_seed, int n, int reps,
                                      int level_percent = 5);
double adf_ar1_rejection_rate(std::uint64_t root_seed, double phi, int n, int reps,
                              int level_percent = 5);
double pp_random_walk_rejection_rate(std::uint64_t root_seed, int n, int reps,
                                     int level_percent = 5);
// Largest |Z_t - DF t| over `trials` random walks with bandwidth 0.
double pp_bandwidth0_max_deviation(std::uint64_t root_seed, int n, int trials);

// Count of simulations detecting the given rank. `cointegrated` draws
// y2 = 2*y1 + noise on a common random walk; otherwise independent walks.
int johansen_rank_count(std::uint64_t root_seed, int n, int sims, bool cointegrated,
                        int target_rank);

// Count of simulations on independent random walks where the residual test
// does NOT reject the unit root at 5% (cointegration not established).
int engle_granger_spurious_count(std::uint64_t root_seed, int n, int sims);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// The statistical acceptance battery at full replication counts.
std::vector<CheckResult> run_statistical_checks(std::uint64_t root_seed);

}  // namespace cpilink::selfcheck
