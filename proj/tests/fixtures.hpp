#pragma once

// Shared synthetic-data builders for the search, backtest and CLI tests.

#include <string>
#include <vector>

#include "cpilink/catalog.hpp"
#include "cpilink/model.hpp"
#include "cpilink/series.hpp"
#include "cpilink/simulate.hpp"

namespace fixtures {

using namespace cpilink;

inline const MonthlyIndex kCpiStart{2000, 1};
inline const MonthlyIndex kPriceStart{2003, 1};

// Registry acronyms used for synthetic components, in catalog order. Small
// catalogs draw from a hand-picked pool; larger ones take the whole registry.
inline std::vector<std::string> component_names(int n) {
    static const std::vector<std::string> pool = {"C",  "CC",   "F",  "FS",   "H",
                                                  "M",  "MEAT", "PDRUG", "RPR", "SEFV",
                                                  "TS", "E",    "HO", "AB",   "R"};
    if (n <= static_cast<int>(pool.size())) return {pool.begin(), pool.begin() + n};
    std::vector<std::string> names;
    for (const auto& [acronym, description] : registry_entries()) {
        names.emplace_back(acronym);
        if (static_cast<int>(names.size()) == n) break;
    }
    return names;
}

// Drifting random-walk components over 2000-01 .. 2009-12.
inline CpiCatalog make_catalog(int n_components, std::uint64_t seed, int months = 120) {
    CpiCatalog catalog;
    auto names = component_names(n_components);
    for (int i = 0; i < n_components; ++i) {
        sim::Rng rng(sim::derive_seed(seed, 100, static_cast<std::uint64_t>(i)));
        double level = 100.0 + 20.0 * i;
        double drift = 0.15 + 0.03 * i;
        auto desc = registry_description(names[static_cast<std::size_t>(i)]);
        catalog.add({names[static_cast<std::size_t>(i)],
                     desc ? std::string(*desc) : "user-defined", !desc.has_value(),
                     MonthlySeries(names[static_cast<std::size_t>(i)], kCpiStart,
                                   sim::random_walk(rng, months, level, drift, 0.7))});
    }
    return catalog;
}

struct Generator {
    ModelSpec spec;
    double b1, b2, c, d;
};

// Price series constructed exactly from the model form (plus optional noise).
inline MonthlySeries make_price(const CpiCatalog& catalog, const Generator& g, int months = 84,
                                double noise_sd = 0.0, std::uint64_t noise_seed = 0) {
    sim::Rng noise(sim::derive_seed(noise_seed, 200, 0));
    const MonthlySeries& s1 = catalog.series(g.spec.cpi1);
    const MonthlySeries& s2 = catalog.series(g.spec.cpi2);
    std::vector<double> p(static_cast<std::size_t>(months));
    for (int r = 0; r < months; ++r) {
        MonthlyIndex t = kPriceStart.plus_months(r);
        p[static_cast<std::size_t>(r)] = g.b1 * s1.at(t.plus_months(-g.spec.tau1)) +
                                         g.b2 * s2.at(t.plus_months(-g.spec.tau2)) +
                                         g.c * time_trend(t) + g.d;
        if (noise_sd > 0.0) p[static_cast<std::size_t>(r)] += noise_sd * noise.next_normal();
    }
    return MonthlySeries(g.spec.ticker, kPriceStart, std::move(p));
}

inline Generator default_generator(const std::string& ticker = "SYN") {
    return Generator{ModelSpec{ticker, "SEFV", 3, "PDRUG", 5}, 2.5, -1.3, 4.0, 100.0};
}

// Same shape but on the first two components actually present.
inline Generator default_generator_on(const CpiCatalog& catalog, const std::string& ticker = "SYN") {
    auto names = catalog.acronyms();
    return Generator{ModelSpec{ticker, names.at(0), 3, names.at(1), 5}, 2.5, -1.3, 4.0, 100.0};
}

}  // namespace fixtures
