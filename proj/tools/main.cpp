// cpilink command line: fit, validate, backtest and screen the lagged
// CPI-component share price models.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "cpilink/backtest.hpp"
#include "cpilink/csv.hpp"
#include "cpilink/distress.hpp"
#include "cpilink/errors.hpp"
#include "cpilink/persistence.hpp"
#include "cpilink/report_json.hpp"
#include "cpilink/selfcheck.hpp"

namespace fs = std::filesystem;
using namespace cpilink;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;     // input / IO / configuration error
constexpr int kExitAnalytic = 2;  // analytic infeasibility or degeneracy

constexpr int kHardLagCap = 14;

struct CommonPaths {
    std::string catalog;
    std::string prices_dir;
    std::string out_dir = ".";
};

struct SearchFlags {
    SearchConfig config;
    std::string window_first = "2003-07";
    std::string window_last;
    bool allow_extended_lags = false;
};

void add_common(CLI::App* cmd, CommonPaths& paths, bool need_prices = true) {
    cmd->add_option("--catalog", paths.catalog, "CPI catalog manifest (ACRONYM,path rows)")
        ->envname("CPILINK_CATALOG")
        ->required();
    if (need_prices)
        cmd->add_option("--prices-dir", paths.prices_dir, "directory of <TICKER>.csv price files")
            ->envname("CPILINK_PRICES_DIR")
            ->required();
    cmd->add_option("--out", paths.out_dir, "output directory")->envname("CPILINK_OUT");
}

void add_search_flags(CLI::App* cmd, SearchFlags& flags) {
    cmd->add_option("--lag-min", flags.config.lag_min, "smallest component lag in months");
    cmd->add_option("--lag-max", flags.config.lag_max, "largest component lag in months");
    cmd->add_flag("--allow-extended-lags", flags.allow_extended_lags,
                  "permit lags beyond the 14-month cap");
    cmd->add_option("--window-first", flags.window_first, "fit window start (YYYY-MM)");
    cmd->add_option("--window-last", flags.window_last,
                    "fit window end (YYYY-MM, default last available month)");
    cmd->add_option("--top-k", flags.config.top_k, "number of ranked models to keep");
    cmd->add_option("--min-obs", flags.config.min_obs, "minimum feasible window months");
    cmd->add_flag("--strict-window", flags.config.strict_window,
                  "fit every candidate on the one window feasible for all lags");
    cmd->add_option("--threads", flags.config.threads, "worker threads (0 = hardware)");
}

MonthlyIndex parse_month_arg(const std::string& text, const char* what) {
    auto m = MonthlyIndex::parse(text);
    if (!m) throw Error(std::string(what) + ": expected YYYY-MM, got '" + text + "'");
    return *m;
}

SearchConfig resolve_search_flags(const SearchFlags& flags) {
    SearchConfig config = flags.config;
    if (!flags.allow_extended_lags &&
        (config.lag_max > kHardLagCap || config.lag_min < -kHardLagCap))
        throw Error("lag range [" + std::to_string(config.lag_min) + ", " +
                    std::to_string(config.lag_max) + "] exceeds the " +
                    std::to_string(kHardLagCap) + "-month cap; pass --allow-extended-lags");
    config.window_first = parse_month_arg(flags.window_first, "--window-first");
    if (!flags.window_last.empty())
        config.window_last = parse_month_arg(flags.window_last, "--window-last");
    config.validate();
    return config;
}

MonthlySeries load_ticker(const CommonPaths& paths, const std::string& ticker) {
    fs::path file = fs::path(paths.prices_dir) / (ticker + ".csv");
    if (!fs::exists(file)) throw IoError("no price file for ticker '" + ticker + "': " + file.string());
    return load_price_series(file, ticker);
}

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------

int cmd_search(const CommonPaths& paths, const SearchFlags& flags, const std::string& ticker) {
    SearchConfig config = resolve_search_flags(flags);
    CpiCatalog catalog = load_catalog(paths.catalog);
    MonthlySeries prices = load_ticker(paths, ticker);

    auto t0 = std::chrono::steady_clock::now();
    SearchResult result = search_best(prices, catalog, config);
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;

    fs::create_directories(paths.out_dir);
    fs::path models_path = fs::path(paths.out_dir) / (ticker + ".models.json");
    atomic_write(models_path, search_result_to_json(result, config).dump(2) + "\n");

    const FittedModel& best = result.ranked.front();
    std::string fit_csv = "month,observed,predicted,residual\n";
    for (int r = 0; r < best.window.count(); ++r) {
        MonthlyIndex t = best.window.first.plus_months(r);
        double observed = prices.at(t);
        double residual = best.residuals[static_cast<std::size_t>(r)];
        fit_csv += t.str() + "," + csv_num(observed) + "," + csv_num(observed - residual) + "," +
                   csv_num(residual) + "\n";
    }
    fs::path fit_path = fs::path(paths.out_dir) / (ticker + ".fit.csv");
    atomic_write(fit_path, fit_csv);

    std::cout << ticker << ": best sigma " << best.sigma << " (" << best.spec.cpi1 << " lag "
              << best.spec.tau1 << ", " << best.spec.cpi2 << " lag " << best.spec.tau2 << "); "
              << result.evaluated_count << " evaluated, " << result.rejected_count
              << " rejected in " << elapsed.count() << " s\n"
              << "wrote " << models_path.string() << ", " << fit_path.string() << "\n";
    return kExitOk;
}

int cmd_cointegrate(const CommonPaths& paths, const std::string& ticker,
                    const std::string& model_file, int adf_max_lag, int pp_bandwidth,
                    int vecm_lag) {
    CpiCatalog catalog = load_catalog(paths.catalog);
    MonthlySeries prices = load_ticker(paths, ticker);
    FittedModel model = load_model(model_file);

    // The tests themselves run on the stored residuals; the catalog check
    // catches a model file paired with the wrong data set.
    if (!catalog.contains(model.spec.cpi1) || !catalog.contains(model.spec.cpi2))
        throw Error("catalog lacks the model components " + model.spec.cpi1 + "/" +
                    model.spec.cpi2);
    if (!prices.covers(model.window))
        throw Error("price data " + prices.window().str() + " does not cover the model window " +
                    model.window.str());

    MonthlySeries observed = prices.slice(model.window);
    std::vector<double> predicted_values(observed.values());
    for (std::size_t i = 0; i < predicted_values.size(); ++i)
        predicted_values[i] -= model.residuals[i];
    MonthlySeries predicted(ticker + ".predicted", model.window.first,
                            std::move(predicted_values));

    nlohmann::json report{{"ticker", ticker},
                          {"model", model_to_json(model)},
                          {"window", model.window.str()}};
    report["adf"] = unit_root_to_json(adf_test(model.residuals, adf_max_lag));
    report["pp"] = unit_root_to_json(pp_test(model.residuals, pp_bandwidth));
    report["engle_granger"] = unit_root_to_json(engle_granger(observed, predicted));
    report["johansen"] = johansen_to_json(johansen_test(observed, predicted, vecm_lag));

    fs::create_directories(paths.out_dir);
    fs::path out = fs::path(paths.out_dir) / (ticker + ".cointegration.json");
    atomic_write(out, report.dump(2) + "\n");
    std::cout << "wrote " << out.string() << "\n";
    return kExitOk;
}

int cmd_backtest(const CommonPaths& paths, const SearchFlags& flags, const std::string& ticker,
                 const std::string& asof_text, const std::string& through_text, bool cpi_lag,
                 double sigma_multiple, int consecutive) {
    SearchConfig config = resolve_search_flags(flags);
    CpiCatalog catalog = load_catalog(paths.catalog);
    MonthlySeries prices = load_ticker(paths, ticker);

    MonthlyIndex asof = parse_month_arg(asof_text, "--asof");
    MonthlyIndex through =
        through_text.empty() ? prices.last() : parse_month_arg(through_text, "--through");

    AsOfRun run = run_asof(prices, catalog, asof, through, config, cpi_lag);
    FittedModel later = search_best(prices, catalog, config).ranked.front();
    DivergenceRule rule{sigma_multiple, consecutive};
    ComparisonReport comparison = compare(run, later, prices, rule);

    fs::create_directories(paths.out_dir);
    std::string csv = "month,observed,asof_pred,later_pred\n";
    for (const auto& row : comparison.rows)
        csv += row.month.str() + "," + csv_num(row.observed) + "," + csv_num(row.asof_pred) + "," +
               csv_num(row.later_pred) + "\n";
    fs::path csv_path = fs::path(paths.out_dir) / (ticker + ".backtest.csv");
    atomic_write(csv_path, csv);

    nlohmann::json summary{{"ticker", ticker},
                           {"asof", asof.str()},
                           {"through", through.str()},
                           {"asof_model", model_to_json(run.model)},
                           {"later_model", model_to_json(later)},
                           {"projection_start",
                            run.projection ? nlohmann::json(run.projection->start().str())
                                           : nlohmann::json(nullptr)},
                           {"projection_end",
                            run.projection ? nlohmann::json(run.projection->last().str())
                                           : nlohmann::json(nullptr)},
                           {"rms_forward", run.rms_forward},
                           {"comparison", comparison_to_json(comparison)}};
    fs::path json_path = fs::path(paths.out_dir) / (ticker + ".backtest.json");
    atomic_write(json_path, summary.dump(2) + "\n");
    std::cout << "wrote " << csv_path.string() << ", " << json_path.string() << "\n";
    return kExitOk;
}

int cmd_distress(const CommonPaths& paths, const std::string& portfolio_file,
                 const std::string& shares_file, const std::string& through_text,
                 bool reference_first) {
    CpiCatalog catalog = load_catalog(paths.catalog);
    auto shares = load_shares(shares_file);

    // Portfolio rows: TICKER,model.json
    std::optional<MonthlyIndex> through;
    if (!through_text.empty()) through = parse_month_arg(through_text, "--through");

    std::ifstream in(portfolio_file);
    if (!in) throw IoError("cannot open " + portfolio_file);
    std::string csv = "ticker,shares,reference_price,debt,first_negative,trough_month,recovery_month\n";
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.find(',');
        if (comma == std::string::npos || comma == 0)
            throw ParseError(portfolio_file + ":" + std::to_string(line_no) +
                             ": expected 'TICKER,model.json'");
        std::string ticker = line.substr(0, comma);
        if (ticker == "TICKER" || ticker == "ticker") continue;
        fs::path model_path = line.substr(comma + 1);
        if (model_path.is_relative()) model_path = fs::path(portfolio_file).parent_path() / model_path;
        FittedModel model = load_model(model_path);

        auto feasible = feasible_window(catalog, model.spec, nullptr);
        if (!feasible) {
            std::cerr << "warning: " << ticker << ": model components not covered by catalog\n";
            continue;
        }
        Window range{std::max(model.window.first, feasible->first), feasible->last};
        if (through && *through < range.last) range.last = *through;
        if (range.last < range.first) {
            std::cerr << "warning: " << ticker << ": no predictable months in range\n";
            continue;
        }

        MonthlySeries path = predict(model, catalog, range);
        auto signal = detect_negative(path);
        if (!signal) continue;

        auto it = shares.find(ticker);
        if (it == shares.end())
            throw Error("shares file " + shares_file + " is missing ticker '" + ticker + "'");
        double reference =
            reference_first ? path.at(signal->first_negative) : signal->trough_price;
        DebtEstimate debt = estimate_debt(it->second, reference, ticker);
        csv += ticker + "," + csv_num(debt.shares_outstanding) + "," +
               csv_num(debt.reference_price) + "," + csv_num(debt.debt) + "," +
               signal->first_negative.str() + "," + signal->trough_month.str() + "," +
               (signal->recovery_month ? signal->recovery_month->str() : "") + "\n";
    }

    fs::create_directories(paths.out_dir);
    fs::path out = fs::path(paths.out_dir) / "distress.csv";
    atomic_write(out, csv);
    std::cout << "wrote " << out.string() << "\n";
    return kExitOk;
}

int cmd_selftest(std::uint64_t seed) {
    auto checks = selfcheck::run_statistical_checks(seed);
    bool all_pass = true;
    for (const auto& c : checks) {
        std::cout << (c.pass ? "PASS" : "FAIL") << " " << c.name << ": " << c.detail << "\n";
        all_pass = all_pass && c.pass;
    }
    std::cout << (all_pass ? "selftest passed" : "selftest FAILED") << "\n";
    return all_pass ? kExitOk : kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic share-price models from lagged CPI components"};
    app.require_subcommand(1);

    CommonPaths paths;
    SearchFlags flags;
    std::string ticker, model_file, asof_text, through_text, portfolio_file, shares_file;
    bool cpi_lag = false, reference_first = false;
    double sigma_multiple = 2.0;
    int consecutive = 3;
    int adf_max_lag = 12, pp_bandwidth = -1, vecm_lag = 2;
    std::uint64_t seed = 0;

    CLI::App* search = app.add_subcommand("search", "exhaustive best-fit model search");
    search->add_option("ticker", ticker)->required();
    add_common(search, paths);
    add_search_flags(search, flags);

    CLI::App* coint = app.add_subcommand("cointegrate", "residual unit-root and Johansen tests");
    coint->add_option("ticker", ticker)->required();
    coint->add_option("--model", model_file, "fitted model JSON")->required();
    coint->add_option("--adf-max-lag", adf_max_lag);
    coint->add_option("--pp-bandwidth", pp_bandwidth);
    coint->add_option("--vecm-lag", vecm_lag);
    add_common(coint, paths);

    CLI::App* backtest = app.add_subcommand("backtest", "as-of refit and forward comparison");
    backtest->add_option("ticker", ticker)->required();
    backtest->add_option("--asof", asof_text, "as-of month YYYY-MM")->required();
    backtest->add_option("--through", through_text, "projection end YYYY-MM");
    backtest->add_flag("--cpi-lag", cpi_lag, "hold back the latest CPI month (publication lag)");
    backtest->add_option("--sigma-multiple", sigma_multiple, "divergence threshold in sigmas");
    backtest->add_option("--consecutive", consecutive, "months above threshold for onset");
    add_common(backtest, paths);
    add_search_flags(backtest, flags);

    CLI::App* distress = app.add_subcommand("distress", "negative-price screen and implied debt");
    distress->add_option("--portfolio", portfolio_file, "CSV of TICKER,model.json rows")->required();
    distress->add_option("--shares", shares_file, "CSV of TICKER,shares rows")->required();
    distress->add_option("--through", through_text, "screen horizon YYYY-MM");
    distress->add_flag("--reference-first-negative", reference_first,
                       "use the first negative month's price instead of the trough");
    add_common(distress, paths, /*need_prices=*/false);

    CLI::App* selftest = app.add_subcommand("selftest", "Monte-Carlo statistical checks");
    selftest->add_option("--seed", seed, "root seed for the replication streams");

    CLI11_PARSE(app, argc, argv);

    try {
        if (search->parsed()) return cmd_search(paths, flags, ticker);
        if (coint->parsed())
            return cmd_cointegrate(paths, ticker, model_file, adf_max_lag, pp_bandwidth, vecm_lag);
        if (backtest->parsed())
            return cmd_backtest(paths, flags, ticker, asof_text, through_text, cpi_lag,
                                sigma_multiple, consecutive);
        if (distress->parsed())
            return cmd_distress(paths, portfolio_file, shares_file, through_text, reference_first);
        if (selftest->parsed()) return cmd_selftest(seed);
    } catch (const NoFeasibleCandidate& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAnalytic;
    } catch (const WindowUnavailable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAnalytic;
    } catch (const DegenerateSeries& e) {
        std::cerr << "error: degenerate input: " << e.what() << "\n";
        return kExitAnalytic;
    } catch (const SingularMoment& e) {
        std::cerr << "error: degenerate input: " << e.what() << "\n";
        return kExitAnalytic;
    } catch (const SeriesTooShort& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAnalytic;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
