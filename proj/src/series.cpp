#include "cpilink/series.hpp"

#include <charconv>
#include <cmath>

namespace cpilink {

MonthlySeries::MonthlySeries(std::string id, MonthlyIndex start, std::vector<double> values)
    : id_(std::move(id)), start_(start), values_(std::move(values)) {
    if (values_.empty()) throw Error("series '" + id_ + "': must contain at least one value");
    if (start_.month < 1 || start_.month > 12)
        throw Error("series '" + id_ + "': invalid start month " + std::to_string(start_.month));
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw Error("series '" + id_ + "': non-finite value at " +
                        start_.plus_months(static_cast<int>(i)).str());
    }
}

double MonthlySeries::at(MonthlyIndex t) const {
    int off = start_.months_until(t);
    if (off < 0 || off >= static_cast<int>(values_.size()))
        throw Error("series '" + id_ + "': " + t.str() + " outside " + window().str());
    return values_[static_cast<std::size_t>(off)];
}

MonthlySeries MonthlySeries::slice(const Window& w) const {
    if (!covers(w))
        throw Error("series '" + id_ + "': window " + w.str() + " outside " + window().str());
    int off = start_.months_until(w.first);
    std::vector<double> vals(values_.begin() + off, values_.begin() + off + w.count());
    return MonthlySeries(id_, w.first, std::move(vals));
}

MonthlySeries MonthlySeries::truncated_at(MonthlyIndex asof) const {
    if (asof < start_) throw Error("series '" + id_ + "': no data at or before " + asof.str());
    if (asof >= last()) return *this;
    return slice(Window{start_, asof});
}

MonthlySeries MonthlySeries::with_id(std::string id) const {
    return MonthlySeries(std::move(id), start_, values_);
}

std::pair<std::string, int> split_lag_annotation(const std::string& id) {
    auto open = id.rfind('[');
    if (open == std::string::npos || id.back() != ']') return {id, 0};
    std::string_view inner(id.data() + open + 1, id.size() - open - 2);
    if (inner.empty()) return {id, 0};
    if (inner.front() == '+') inner.remove_prefix(1);
    int lag = 0;
    auto [p, e] = std::from_chars(inner.data(), inner.data() + inner.size(), lag);
    if (e != std::errc{} || p != inner.data() + inner.size()) return {id, 0};
    return {id.substr(0, open), lag};
}

MonthlySeries shift(const MonthlySeries& s, int lag) {
    if (lag == 0) return s;
    auto [base, net] = split_lag_annotation(s.id());
    int total = net + lag;
    std::string id = total == 0 ? base
                                : base + "[" + (total > 0 ? "+" : "") + std::to_string(total) + "]";
    return MonthlySeries(std::move(id), s.start().plus_months(lag), s.values());
}

std::pair<Window, Eigen::MatrixXd> align(const std::vector<MonthlySeries>& series) {
    if (series.empty()) throw Error("align: empty series list");
    std::optional<Window> common = series.front().window();
    for (std::size_t i = 1; i < series.size(); ++i) {
        common = Window::intersect(*common, series[i].window());
        if (!common)
            throw EmptyIntersection("align: no month common to all " +
                                    std::to_string(series.size()) + " series");
    }
    const int rows = common->count();
    Eigen::MatrixXd m(rows, static_cast<Eigen::Index>(series.size()));
    for (std::size_t c = 0; c < series.size(); ++c) {
        int off = series[c].start().months_until(common->first);
        for (int r = 0; r < rows; ++r)
            m(r, static_cast<Eigen::Index>(c)) = series[c].values()[static_cast<std::size_t>(off + r)];
    }
    return {*common, std::move(m)};
}

}  // namespace cpilink
