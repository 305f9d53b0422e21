#include "cpilink/distress.hpp"

#include <cmath>

#include "cpilink/errors.hpp"

namespace cpilink {

std::optional<DistressSignal> detect_negative(const MonthlySeries& predicted) {
    const auto& v = predicted.values();
    const int n = static_cast<int>(v.size());

    int first = -1;
    for (int i = 0; i < n; ++i) {
        if (v[static_cast<std::size_t>(i)] < 0.0) {
            first = i;
            break;
        }
    }
    if (first < 0) return std::nullopt;

    int end = first;  // one past the negative run
    while (end < n && v[static_cast<std::size_t>(end)] < 0.0) ++end;

    int trough = first;
    for (int i = first + 1; i < end; ++i)
        if (v[static_cast<std::size_t>(i)] < v[static_cast<std::size_t>(trough)]) trough = i;

    std::string ticker = predicted.id();
    if (auto dot = ticker.rfind(".predicted"); dot != std::string::npos) ticker.resize(dot);
    DistressSignal signal;
    signal.ticker = std::move(ticker);
    signal.first_negative = predicted.start().plus_months(first);
    signal.trough_price = v[static_cast<std::size_t>(trough)];
    signal.trough_month = predicted.start().plus_months(trough);
    signal.consecutive_negative_months = end - first;
    for (int i = end; i < n; ++i) {
        if (v[static_cast<std::size_t>(i)] > 0.0) {
            signal.recovery_month = predicted.start().plus_months(i);
            break;
        }
    }
    return signal;
}

DebtEstimate estimate_debt(double shares, double reference_price, std::string ticker) {
    if (!(shares > 0.0)) throw Error("estimate_debt: shares outstanding must be positive");
    if (reference_price >= 0.0)
        throw NotDistressed("reference price " + std::to_string(reference_price) +
                            " is not negative");
    DebtEstimate e;
    e.ticker = std::move(ticker);
    e.shares_outstanding = shares;
    e.reference_price = reference_price;
    e.debt = shares * std::abs(reference_price);
    return e;
}

}  // namespace cpilink
