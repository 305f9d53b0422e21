#pragma once

#include <optional>
#include <string>

#include "cpilink/series.hpp"

namespace cpilink {

// First below-zero excursion of a predicted price path. The trough and run
// length describe that excursion; recovery is the first month back above zero
// after it ends.
struct DistressSignal {
    std::string ticker;
    MonthlyIndex first_negative{};
    double trough_price = 0.0;  // < 0
    MonthlyIndex trough_month{};
    int consecutive_negative_months = 0;
    std::optional<MonthlyIndex> recovery_month;
};

std::optional<DistressSignal> detect_negative(const MonthlySeries& predicted);

struct DebtEstimate {
    std::string ticker;
    double shares_outstanding = 0.0;  // > 0
    double reference_price = 0.0;     // < 0
    double debt = 0.0;                // shares * |reference_price|
};

// Throws NotDistressed when reference_price >= 0.
DebtEstimate estimate_debt(double shares, double reference_price, std::string ticker = "");

}  // namespace cpilink
