#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "cpilink/errors.hpp"
#include "cpilink/monthly.hpp"

namespace cpilink {

// Contiguous monthly-sampled real series. Gapless by construction: the start
// month plus the value vector pins every observation; all values finite.
class MonthlySeries {
public:
    MonthlySeries(std::string id, MonthlyIndex start, std::vector<double> values);

    const std::string& id() const { return id_; }
    MonthlyIndex start() const { return start_; }
    MonthlyIndex last() const { return start_.plus_months(static_cast<int>(values_.size()) - 1); }
    Window window() const { return Window{start(), last()}; }
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }

    bool covers(MonthlyIndex t) const { return window().contains(t); }
    bool covers(const Window& w) const { return window().contains(w); }

    // Value at month t; t must lie inside the series window.
    double at(MonthlyIndex t) const;

    MonthlySeries slice(const Window& w) const;
    // Drop every observation after `asof`.
    MonthlySeries truncated_at(MonthlyIndex asof) const;
    MonthlySeries with_id(std::string id) const;

    friend bool operator==(const MonthlySeries&, const MonthlySeries&) = default;

private:
    std::string id_;
    MonthlyIndex start_;
    std::vector<double> values_;
};

// Reading the result at t yields the input at t - lag: positive lag attributes
// past values to t, negative lag attributes future values. The id carries the
// net lag annotation ("FS[+5]"), which cancels on inverse shifts.
MonthlySeries shift(const MonthlySeries& s, int lag);

// Splits a lag-annotated id into (base, net lag). "FS[+5]" -> ("FS", 5).
std::pair<std::string, int> split_lag_annotation(const std::string& id);

// Maximal window common to all series plus the column-per-series value matrix
// over it, rows in chronological order. Throws EmptyIntersection.
std::pair<Window, Eigen::MatrixXd> align(const std::vector<MonthlySeries>& series);

// Linear time regressor: decimal years since January 2000.
inline double time_trend(MonthlyIndex t) { return (t.year - 2000) + (t.month - 1) / 12.0; }

}  // namespace cpilink
