#include "cpilink/monthly.hpp"

#include <charconv>
#include <cstdio>

namespace cpilink {

MonthlyIndex MonthlyIndex::from_serial(int serial) {
    int y = serial / 12;
    int m = serial % 12;
    if (m < 0) {  // floor division for pre-year-zero serials
        y -= 1;
        m += 12;
    }
    return MonthlyIndex{y, m + 1};
}

std::optional<MonthlyIndex> MonthlyIndex::parse(std::string_view text) {
    // strict "YYYY-MM"
    if (text.size() != 7 || text[4] != '-') return std::nullopt;
    int y = 0, m = 0;
    auto [py, ey] = std::from_chars(text.data(), text.data() + 4, y);
    auto [pm, em] = std::from_chars(text.data() + 5, text.data() + 7, m);
    if (ey != std::errc{} || em != std::errc{}) return std::nullopt;
    if (py != text.data() + 4 || pm != text.data() + 7) return std::nullopt;
    if (m < 1 || m > 12 || y < 0) return std::nullopt;
    return MonthlyIndex{y, m};
}

std::string MonthlyIndex::str() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
    return buf;
}

std::string Window::str() const { return first.str() + ".." + last.str(); }

std::optional<Window> Window::intersect(const Window& a, const Window& b) {
    Window w{std::max(a.first, b.first), std::min(a.last, b.last)};
    if (w.last < w.first) return std::nullopt;
    return w;
}

}  // namespace cpilink
