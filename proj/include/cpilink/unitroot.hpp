#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cpilink/series.hpp"

namespace cpilink {

enum class Deterministic { none, constant, constant_trend };

// Left-tailed lookups; keys are significance levels in percent {1, 5, 10}.
struct UnitRootReport {
    double statistic_t = 0.0;    // z(t): the tau statistic
    double statistic_rho = 0.0;  // z(rho): the n*(rho-1) statistic, lag-adjusted
    int lags_used = 0;
    int nobs = 0;  // effective regression sample
    std::map<int, double> critical_values;      // for statistic_t
    std::map<int, double> critical_values_rho;  // for statistic_rho
    std::optional<int> reject_unit_root_at;     // smallest level at which t < CV
};

// Critical values at effective sample size n, linearly interpolated between
// the embedded sample-size brackets.
struct CvTriple {
    double cv1 = 0.0;
    double cv5 = 0.0;
    double cv10 = 0.0;
};
CvTriple df_tau_critical_values(Deterministic det, int n);
CvTriple df_rho_critical_values(Deterministic det, int n);
// Residual-based cointegration test of two variables, response surface in n.
CvTriple engle_granger_critical_values(Deterministic det, int n);

// Augmented Dickey-Fuller with BIC lag selection over 0..max_lag.
UnitRootReport adf_test(const std::vector<double>& y, int max_lag = 12,
                        Deterministic det = Deterministic::constant);
UnitRootReport adf_test(const MonthlySeries& series, int max_lag = 12,
                        Deterministic det = Deterministic::constant);

// Phillips-Perron with Bartlett-kernel long-run variance over `bandwidth`
// autocovariances; bandwidth < 0 selects floor(4*(n/100)^(2/9)).
UnitRootReport pp_test(const std::vector<double>& y, int bandwidth = -1,
                       Deterministic det = Deterministic::constant);
UnitRootReport pp_test(const MonthlySeries& series, int bandwidth = -1,
                       Deterministic det = Deterministic::constant);

// Two-step residual test: observed on predicted plus deterministic terms,
// then ADF on the residuals against the cointegration critical values.
// det must include a constant.
UnitRootReport engle_granger(const MonthlySeries& observed, const MonthlySeries& predicted,
                             Deterministic det = Deterministic::constant);

}  // namespace cpilink
