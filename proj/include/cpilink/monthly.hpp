#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace cpilink {

// Gregorian calendar month. Ordering and month arithmetic go through the
// serial index 12*year + (month-1), which is exact integer arithmetic.
struct MonthlyIndex {
    int year = 2000;
    int month = 1;  // 1..12

    static MonthlyIndex from_serial(int serial);
    static std::optional<MonthlyIndex> parse(std::string_view text);  // "YYYY-MM"

    int serial() const { return year * 12 + (month - 1); }
    MonthlyIndex plus_months(int k) const { return from_serial(serial() + k); }
    int months_until(MonthlyIndex other) const { return other.serial() - serial(); }
    std::string str() const;

    friend auto operator<=>(const MonthlyIndex&, const MonthlyIndex&) = default;
};

// Closed month range [first, last].
struct Window {
    MonthlyIndex first;
    MonthlyIndex last;

    int count() const { return first.months_until(last) + 1; }
    bool contains(MonthlyIndex t) const { return first <= t && t <= last; }
    bool contains(const Window& w) const { return first <= w.first && w.last <= last; }
    std::string str() const;

    static std::optional<Window> intersect(const Window& a, const Window& b);

    friend bool operator==(const Window&, const Window&) = default;
};

}  // namespace cpilink
