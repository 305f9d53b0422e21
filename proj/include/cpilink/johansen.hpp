#pragma once

#include <map>
#include <vector>

#include "cpilink/series.hpp"

namespace cpilink {

enum class JohansenDet {
    none,                 // no deterministic terms
    constant,             // unrestricted constant (default)
    restricted_constant,  // constant inside the cointegration relation
};

struct JohansenReport {
    std::vector<double> eigenvalues;             // descending, in [0, 1)
    std::vector<double> trace_stats;             // one per null rank r = 0..k-1
    std::vector<std::map<int, double>> critical_values;  // per r; keys 1, 5, 10 (percent)
    int rank = 0;       // smallest r whose null is not rejected at 5%
    int t_effective = 0;
    int vecm_lag = 0;
    bool degenerate = false;  // a near-unit eigenvalue was clamped

    int rank_at(int level_percent) const;
};

// Trace critical value for k - r remaining common trends.
double johansen_trace_cv(JohansenDet det, int m, int level_percent);

// Bivariate reduced-rank cointegration test with `vecm_lag` lagged
// differences. Throws SeriesTooShort / SingularMoment.
JohansenReport johansen_test(const MonthlySeries& y1, const MonthlySeries& y2, int vecm_lag = 2,
                             JohansenDet det = JohansenDet::constant);

}  // namespace cpilink
