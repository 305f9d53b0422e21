#include "cpilink/catalog.hpp"

#include <algorithm>

#include "cpilink/errors.hpp"

namespace cpilink {

const std::vector<std::pair<std::string_view, std::string_view>>& registry_entries() {
    static const std::vector<std::pair<std::string_view, std::string_view>> entries = {
        {"A", "apparel"},
        {"AB", "alcoholic beverages"},
        {"APL", "appliances"},
        {"C", "CPI"},
        {"CC", "core CPI"},
        {"CE", "CPI less energy"},
        {"CF", "CPI less food"},
        {"CFSH", "CPI less food and shelter"},
        {"CFSHE", "CPI less food shelter and energy"},
        {"CM", "CPI less medcare"},
        {"CO", "communication"},
        {"COMM", "commodities"},
        {"CSH", "CPI less shelter"},
        {"DIAR", "dairy products"},
        {"DUR", "durables"},
        {"E", "energy"},
        {"EC", "education and communication"},
        {"ED", "education"},
        {"F", "food and beverages"},
        {"FB", "food less beverages"},
        {"FISH", "fish"},
        {"FOOT", "footwear"},
        {"FOTO", "photography"},
        {"FRUI", "fruits and vegetables"},
        {"FS", "financial services"},
        {"FU", "fuels and utilities (housing)"},
        {"H", "housing"},
        {"HFO", "household furnishing and operations"},
        {"HO", "household operations"},
        {"HOSP", "hospital services"},
        {"HS", "housekeeping supplies"},
        {"ITR", "intracity transportation"},
        {"JEW", "jewelry and watches"},
        {"LS", "legal services"},
        {"M", "medical care"},
        {"MAP", "men's and boy's apparel"},
        {"MCC", "medical care commodities"},
        {"MCS", "medical care services"},
        {"MEAT", "meats, poultry, and fish"},
        {"MF", "motor fuel"},
        {"MISG", "miscellaneous goods"},
        {"MISS", "miscellaneous services"},
        {"MVI", "motor vehicle insurance"},
        {"MVP", "motor vehicle parts"},
        {"MVR", "motor vehicle repairs"},
        {"NC", "new cars"},
        {"NDUR", "nondurables"},
        {"O", "other goods and services"},
        {"ORG", "other recreation goods"},
        {"OS", "other services"},
        {"PC", "personal care"},
        {"PDRUG", "prescription drugs"},
        {"PETS", "pets and related goods"},
        {"R", "recreation"},
        {"RENT", "rent"},
        {"RPR", "rent primary residence"},
        {"RRM", "recreational reading materials"},
        {"RS", "recreation services"},
        {"SEFV", "food away from home"},
        {"SERV", "services"},
        {"SH", "shelter"},
        {"SPO", "sporting goods (apparel)"},
        {"T", "transportation"},
        {"TOB", "tobacco"},
        {"TPR", "private transportation"},
        {"TPU", "public transportation"},
        {"TS", "transportation services"},
        {"TUIT", "tuition"},
        {"VAA", "video and audio"},
        {"WAP", "women's and girl's apparel"},
    };
    return entries;
}

std::optional<std::string_view> registry_description(std::string_view acronym) {
    const auto& entries = registry_entries();
    auto it = std::lower_bound(entries.begin(), entries.end(), acronym,
                               [](const auto& e, std::string_view a) { return e.first < a; });
    if (it == entries.end() || it->first != acronym) return std::nullopt;
    return it->second;
}

void CpiCatalog::add(CatalogEntry entry) {
    if (entries_.count(entry.acronym))
        throw DuplicateAcronym("duplicate acronym '" + entry.acronym + "'");
    std::string key = entry.acronym;
    entries_.emplace(std::move(key), std::move(entry));
}

const CatalogEntry& CpiCatalog::at(const std::string& acronym) const {
    auto it = entries_.find(acronym);
    if (it == entries_.end()) throw Error("unknown CPI component '" + acronym + "'");
    return it->second;
}

std::vector<std::string> CpiCatalog::acronyms() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [k, v] : entries_) out.push_back(k);
    return out;
}

CpiCatalog CpiCatalog::truncated_at(MonthlyIndex asof) const {
    CpiCatalog out;
    for (const auto& [k, e] : entries_) {
        if (e.series.start() > asof) continue;
        CatalogEntry t{e.acronym, e.description, e.user_defined, e.series.truncated_at(asof)};
        out.add(std::move(t));
    }
    return out;
}

}  // namespace cpilink
