#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpilink/series.hpp"

namespace cpilink {

struct CatalogEntry {
    std::string acronym;
    std::string description;
    bool user_defined = false;  // acronym not in the built-in registry
    MonthlySeries series;
};

// Registry of the 70 CPI component acronyms compiled into the binary.
// Returns nullopt for acronyms outside the registry.
std::optional<std::string_view> registry_description(std::string_view acronym);
const std::vector<std::pair<std::string_view, std::string_view>>& registry_entries();

class CpiCatalog {
public:
    void add(CatalogEntry entry);  // throws DuplicateAcronym

    bool contains(const std::string& acronym) const { return entries_.count(acronym) > 0; }
    const CatalogEntry& at(const std::string& acronym) const;
    const MonthlySeries& series(const std::string& acronym) const { return at(acronym).series; }
    std::size_t size() const { return entries_.size(); }
    std::vector<std::string> acronyms() const;  // lexicographically sorted

    // Catalog with every series truncated at `asof`; components with no data
    // at or before that month are dropped.
    CpiCatalog truncated_at(MonthlyIndex asof) const;

private:
    std::map<std::string, CatalogEntry> entries_;
};

struct PriceBook {
    std::map<std::string, MonthlySeries> prices;              // ticker -> dollars
    std::map<std::string, double> shares_outstanding;          // ticker -> shares
};

}  // namespace cpilink
