#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "cpilink/catalog.hpp"
#include "cpilink/series.hpp"

namespace cpilink {

// One series per file, rows "YYYY-MM,<decimal>", optional header line,
// LF or CRLF, months strictly ascending with no gaps.
MonthlySeries load_series(const std::filesystem::path& path, const std::string& id);

// Observed share prices; rejects non-positive values.
MonthlySeries load_price_series(const std::filesystem::path& path, const std::string& ticker);

// Manifest rows "ACRONYM,path"; relative paths resolve against the manifest
// directory. Acronyms outside the built-in registry load with a user-defined flag.
CpiCatalog load_catalog(const std::filesystem::path& manifest_path);

// Rows "TICKER,shares"; shares must be positive.
std::map<std::string, double> load_shares(const std::filesystem::path& path);

// Every <TICKER>.csv under prices_dir, plus shares outstanding when a shares
// file is given.
PriceBook load_price_book(const std::filesystem::path& prices_dir,
                          const std::filesystem::path* shares_path = nullptr);

}  // namespace cpilink
