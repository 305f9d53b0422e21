#include "cpilink/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "cpilink/errors.hpp"

namespace cpilink {
namespace {

std::string strip(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) ++b;
    return s.substr(b);
}

std::optional<double> parse_value(std::string_view text) {
    if (text.empty()) return std::nullopt;
    double v = 0.0;
    auto [p, e] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (e != std::errc{} || p != text.data() + text.size()) return std::nullopt;
    if (!std::isfinite(v)) return std::nullopt;
    return v;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(strip(line));
    return lines;
}

}  // namespace

MonthlySeries load_series(const std::filesystem::path& path, const std::string& id) {
    auto lines = read_lines(path);

    std::vector<double> values;
    std::optional<MonthlyIndex> start, prev;
    bool first_content_line = true;
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const std::string& line = lines[n];
        if (line.empty()) continue;
        auto comma = line.find(',');
        auto where = path.string() + ":" + std::to_string(n + 1);
        if (comma == std::string::npos)
            throw ParseError(where + ": expected 'YYYY-MM,value', got '" + line + "'");
        auto date = MonthlyIndex::parse(line.substr(0, comma));
        if (!date) {
            if (first_content_line) {  // optional header
                first_content_line = false;
                continue;
            }
            throw ParseError(where + ": bad month '" + line.substr(0, comma) + "'");
        }
        first_content_line = false;
        auto value = parse_value(strip(line.substr(comma + 1)));
        if (!value) throw ParseError(where + ": bad value '" + line.substr(comma + 1) + "'");
        if (prev) {
            int step = prev->months_until(*date);
            if (step <= 0)
                throw OrderError(where + ": month " + date->str() + " not after " + prev->str());
            if (step > 1) {
                MonthlyIndex missing = prev->plus_months(1);
                throw GapError(where + ": missing month " + missing.str() + " before " + date->str(),
                               missing);
            }
        } else {
            start = date;
        }
        prev = date;
        values.push_back(*value);
    }
    if (values.empty()) throw ParseError(path.string() + ": no data rows");
    return MonthlySeries(id, *start, std::move(values));
}

MonthlySeries load_price_series(const std::filesystem::path& path, const std::string& ticker) {
    MonthlySeries s = load_series(path, ticker);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.values()[i] <= 0.0)
            throw ParseError(path.string() + ": non-positive price " +
                             std::to_string(s.values()[i]) + " at " +
                             s.start().plus_months(static_cast<int>(i)).str());
    }
    return s;
}

CpiCatalog load_catalog(const std::filesystem::path& manifest_path) {
    auto lines = read_lines(manifest_path);
    auto base = manifest_path.parent_path();

    CpiCatalog catalog;
    bool any = false;
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const std::string& line = lines[n];
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.find(',');
        auto where = manifest_path.string() + ":" + std::to_string(n + 1);
        if (comma == std::string::npos || comma == 0)
            throw ParseError(where + ": expected 'ACRONYM,path'");
        std::string acronym = strip(line.substr(0, comma));
        if (acronym == "ACRONYM" || acronym == "acronym") continue;  // header
        std::filesystem::path file = strip(line.substr(comma + 1));
        if (file.is_relative()) file = base / file;

        auto desc = registry_description(acronym);
        CatalogEntry entry{acronym, desc ? std::string(*desc) : "user-defined", !desc.has_value(),
                           load_series(file, acronym)};
        catalog.add(std::move(entry));
        any = true;
    }
    if (!any) throw ParseError(manifest_path.string() + ": no catalog rows");
    return catalog;
}

PriceBook load_price_book(const std::filesystem::path& prices_dir,
                          const std::filesystem::path* shares_path) {
    if (!std::filesystem::is_directory(prices_dir))
        throw IoError("price directory not found: " + prices_dir.string());
    PriceBook book;
    for (const auto& entry : std::filesystem::directory_iterator(prices_dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
        std::string ticker = entry.path().stem().string();
        book.prices.emplace(ticker, load_price_series(entry.path(), ticker));
    }
    if (shares_path) book.shares_outstanding = load_shares(*shares_path);
    return book;
}

std::map<std::string, double> load_shares(const std::filesystem::path& path) {
    auto lines = read_lines(path);
    std::map<std::string, double> out;
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const std::string& line = lines[n];
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.find(',');
        auto where = path.string() + ":" + std::to_string(n + 1);
        if (comma == std::string::npos || comma == 0)
            throw ParseError(where + ": expected 'TICKER,shares'");
        std::string ticker = strip(line.substr(0, comma));
        if (ticker == "TICKER" || ticker == "ticker") continue;
        auto shares = parse_value(strip(line.substr(comma + 1)));
        if (!shares || *shares <= 0.0) throw ParseError(where + ": bad share count");
        if (!out.emplace(ticker, *shares).second)
            throw ParseError(where + ": duplicate ticker '" + ticker + "'");
    }
    return out;
}

}  // namespace cpilink
