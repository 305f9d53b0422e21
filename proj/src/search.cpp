#include "cpilink/search.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <tuple>

#include "cpilink/errors.hpp"

namespace cpilink {

void SearchConfig::validate() const {
    if (lag_min > lag_max)
        throw Error("search config: lag_min " + std::to_string(lag_min) + " > lag_max " +
                    std::to_string(lag_max));
    if (top_k < 1) throw Error("search config: top_k must be >= 1");
    if (min_obs < 8) throw Error("search config: min_obs must be >= 8");
}

Window SearchConfig::resolve_window(const MonthlySeries& prices) const {
    MonthlyIndex last = window_last.value_or(prices.last());
    if (last < window_first)
        throw Error("search window ends " + last.str() + " before it starts " +
                    window_first.str());
    return Window{window_first, last};
}

bool model_order_less(const FittedModel& a, const FittedModel& b) {
    return std::tie(a.sigma, a.spec.cpi1, a.spec.cpi2, a.spec.tau1, a.spec.tau2) <
           std::tie(b.sigma, b.spec.cpi1, b.spec.cpi2, b.spec.tau1, b.spec.tau2);
}

namespace {

struct WorkerResult {
    std::vector<FittedModel> top;  // sorted, at most top_k
    std::uint64_t evaluated = 0;
    std::uint64_t rejected = 0;
    std::exception_ptr failure;
};

void keep_top(std::vector<FittedModel>& top, FittedModel&& candidate, int k) {
    if (static_cast<int>(top.size()) == k && !model_order_less(candidate, top.back())) return;
    auto pos = std::upper_bound(top.begin(), top.end(), candidate, model_order_less);
    top.insert(pos, std::move(candidate));
    if (static_cast<int>(top.size()) > k) top.pop_back();
}

}  // namespace

SearchResult search_best(const MonthlySeries& prices, const CpiCatalog& catalog,
                         const SearchConfig& config) {
    config.validate();
    const std::vector<std::string> names = catalog.acronyms();
    const int n = static_cast<int>(names.size());
    if (n < 2) throw Error("search: catalog needs at least 2 components, has " + std::to_string(n));

    const Window requested = config.resolve_window(prices);
    if (!Window::intersect(requested, prices.window()))
        throw NoFeasibleCandidate("price series " + prices.window().str() +
                                  " does not overlap search window " + requested.str());

    // Strict mode: the one window every lag choice can serve.
    std::optional<Window> common = requested;
    if (config.strict_window) {
        common = Window::intersect(*common, prices.window());
        for (const auto& name : names) {
            if (!common) break;
            const MonthlySeries& s = catalog.series(name);
            Window worst{s.start().plus_months(config.lag_max),
                         s.last().plus_months(config.lag_min)};
            if (worst.last < worst.first)
                common = std::nullopt;
            else
                common = Window::intersect(*common, worst);
        }
        if (common && common->count() < config.min_obs) common = std::nullopt;
    }

    const int lag_count = config.lag_max - config.lag_min + 1;
    const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    const std::uint64_t per_pair = static_cast<std::uint64_t>(lag_count) * lag_count;

    // Candidates enumerate as (pair in lexicographic acronym order, tau1, tau2).
    // Workers claim whole pairs; merging sorted local top-k lists under the
    // total candidate order gives the same result for any thread count.
    std::atomic<std::uint64_t> next_pair{0};
    int n_threads = config.threads > 0 ? config.threads
                                       : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    n_threads = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(n_threads), std::max<std::uint64_t>(pairs, 1)));

    std::vector<WorkerResult> results(static_cast<std::size_t>(n_threads));

    auto run_pairs = [&](WorkerResult& out) {
        for (;;) {
            const std::uint64_t p = next_pair.fetch_add(1);
            if (p >= pairs) break;
            // Unrank p -> (i, j), i < j, pairs ordered (0,1), (0,2), ... (n-2,n-1).
            std::uint64_t rem = p;
            int i = 0;
            while (rem >= static_cast<std::uint64_t>(n - 1 - i)) {
                rem -= static_cast<std::uint64_t>(n - 1 - i);
                ++i;
            }
            const int j = i + 1 + static_cast<int>(rem);

            ModelSpec spec{prices.id(), names[static_cast<std::size_t>(i)], 0,
                           names[static_cast<std::size_t>(j)], 0};
            for (int tau1 = config.lag_min; tau1 <= config.lag_max; ++tau1) {
                for (int tau2 = config.lag_min; tau2 <= config.lag_max; ++tau2) {
                    spec.tau1 = tau1;
                    spec.tau2 = tau2;
                    std::optional<Window> w;
                    if (config.strict_window) {
                        w = common;
                    } else {
                        w = feasible_window(catalog, spec, &prices);
                        if (w) w = Window::intersect(*w, requested);
                        if (w && w->count() < config.min_obs) w = std::nullopt;
                    }
                    if (!w) {
                        ++out.rejected;
                        continue;
                    }
                    try {
                        keep_top(out.top, fit_model(prices, catalog, spec, *w), config.top_k);
                        ++out.evaluated;
                    } catch (const RankDeficient&) {
                        ++out.rejected;
                    }
                }
            }
        }
    };

    auto worker = [&](WorkerResult& out) {
        try {
            run_pairs(out);
        } catch (...) {
            out.failure = std::current_exception();
        }
    };

    if (n_threads == 1) {
        run_pairs(results[0]);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t)
            threads.emplace_back(worker, std::ref(results[static_cast<std::size_t>(t)]));
        for (auto& t : threads) t.join();
        for (const auto& r : results)
            if (r.failure) std::rethrow_exception(r.failure);
    }

    SearchResult out;
    out.window_requested = requested;
    for (auto& r : results) {
        out.evaluated_count += r.evaluated;
        out.rejected_count += r.rejected;
        for (auto& m : r.top) keep_top(out.ranked, std::move(m), config.top_k);
    }
    const std::uint64_t total = pairs * per_pair;
    if (out.evaluated_count + out.rejected_count != total)
        throw Error("search accounting error: evaluated " + std::to_string(out.evaluated_count) +
                    " + rejected " + std::to_string(out.rejected_count) + " != " +
                    std::to_string(total));
    if (out.ranked.empty())
        throw NoFeasibleCandidate("no candidate model over " + requested.str() + " (" +
                                  std::to_string(total) + " tried)");
    return out;
}

StabilityReport rolling_stability(const MonthlySeries& prices, const CpiCatalog& catalog,
                                  const SearchConfig& config, int months_back) {
    if (months_back < 1) throw Error("rolling_stability: months_back must be >= 1");
    const Window full = config.resolve_window(prices);

    StabilityReport report;
    report.entries.reserve(static_cast<std::size_t>(months_back));
    for (int k = months_back - 1; k >= 0; --k) {
        MonthlyIndex end = full.last.plus_months(-k);
        StabilityEntry entry{end, std::nullopt, ""};
        SearchConfig truncated = config;
        truncated.window_last = end;
        try {
            entry.winner = search_best(prices, catalog, truncated).ranked.front().spec;
        } catch (const Error& e) {
            entry.error = e.what();
        }
        report.entries.push_back(std::move(entry));
    }

    report.stable = true;
    for (const auto& e : report.entries) {
        if (!e.winner || !(*e.winner == *report.entries.front().winner)) {
            report.stable = false;
            break;
        }
    }
    return report;
}

}  // namespace cpilink
