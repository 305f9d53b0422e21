#include "cpilink/backtest.hpp"

#include <cmath>

#include "cpilink/errors.hpp"
#include "cpilink/regression.hpp"

namespace cpilink {

FittedModel fit_asof(const MonthlySeries& prices, const CpiCatalog& catalog, MonthlyIndex asof,
                     const SearchConfig& config, bool cpi_publication_lag) {
    if (asof < prices.start())
        throw NoFeasibleCandidate("asof " + asof.str() + " precedes price data " +
                                  prices.window().str());
    MonthlySeries prices_cut = prices.truncated_at(asof);
    MonthlyIndex cpi_cut = cpi_publication_lag ? asof.plus_months(-1) : asof;
    CpiCatalog catalog_cut = catalog.truncated_at(cpi_cut);
    if (catalog_cut.size() < 2)
        throw NoFeasibleCandidate("fewer than 2 CPI components have data at " + cpi_cut.str());

    SearchConfig truncated = config;
    MonthlyIndex last = config.window_last.value_or(prices_cut.last());
    truncated.window_last = std::min(last, asof);
    return search_best(prices_cut, catalog_cut, truncated).ranked.front();
}

MonthlyIndex max_projection_end(const FittedModel& model, const CpiCatalog& catalog) {
    const MonthlySeries& s1 = catalog.series(model.spec.cpi1);
    const MonthlySeries& s2 = catalog.series(model.spec.cpi2);
    return std::min(s1.last().plus_months(model.spec.tau1),
                    s2.last().plus_months(model.spec.tau2));
}

MonthlySeries project(const FittedModel& model, const CpiCatalog& catalog, MonthlyIndex through) {
    MonthlyIndex start = model.window.last.plus_months(1);
    MonthlyIndex feasible_end = max_projection_end(model, catalog);
    if (through < start)
        throw Error("projection through " + through.str() + " precedes fit window end " +
                    model.window.last.str());
    if (feasible_end < through) {
        std::optional<Window> feasible;
        if (start <= feasible_end) feasible = Window{start, feasible_end};
        throw WindowUnavailable("projection through " + through.str() +
                                    " exceeds CPI coverage; feasible horizon: " +
                                    (feasible ? feasible->str() : "none"),
                                feasible);
    }
    return predict(model, catalog, Window{start, through});
}

AsOfRun run_asof(const MonthlySeries& prices, const CpiCatalog& catalog, MonthlyIndex asof,
                 MonthlyIndex through, const SearchConfig& config, bool cpi_publication_lag) {
    AsOfRun run;
    run.asof = asof;
    run.model = fit_asof(prices, catalog, asof, config, cpi_publication_lag);

    MonthlyIndex start = run.model.window.last.plus_months(1);
    MonthlyIndex end = std::min(through, max_projection_end(run.model, catalog));
    if (start <= end) {
        run.projection = predict(run.model, catalog, Window{start, end});
        auto overlap = Window::intersect(run.projection->window(), prices.window());
        if (overlap) {
            double ss = 0.0;
            for (int r = 0; r < overlap->count(); ++r) {
                MonthlyIndex t = overlap->first.plus_months(r);
                double diff = prices.at(t) - run.projection->at(t);
                run.divergence.emplace_back(t, diff);
                ss += diff * diff;
            }
            run.rms_forward = std::sqrt(ss / overlap->count());
        }
    }
    return run;
}

ComparisonReport compare(const AsOfRun& asof_run, const FittedModel& later_model,
                         const MonthlySeries& observed, const DivergenceRule& rule) {
    ComparisonReport report;
    if (!asof_run.projection) return report;

    // The later model's fitted values come from its stored residuals:
    // fitted = observed - residual over the fit window.
    std::optional<Window> overlap =
        Window::intersect(asof_run.projection->window(), later_model.window);
    if (overlap) overlap = Window::intersect(*overlap, observed.window());
    if (!overlap) return report;

    double ss_asof = 0.0, ss_later = 0.0;
    for (int r = 0; r < overlap->count(); ++r) {
        MonthlyIndex t = overlap->first.plus_months(r);
        ComparisonRow row;
        row.month = t;
        row.observed = observed.at(t);
        row.asof_pred = asof_run.projection->at(t);
        int li = later_model.window.first.months_until(t);
        row.later_pred = row.observed - later_model.residuals[static_cast<std::size_t>(li)];
        report.rows.push_back(row);
        ss_asof += (row.observed - row.asof_pred) * (row.observed - row.asof_pred);
        ss_later += (row.observed - row.later_pred) * (row.observed - row.later_pred);
    }
    report.rms_asof = std::sqrt(ss_asof / report.rows.size());
    report.rms_later = std::sqrt(ss_later / report.rows.size());

    const double threshold = rule.sigma_multiple * asof_run.model.sigma;
    int run_len = 0;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        if (std::abs(report.rows[i].asof_pred - report.rows[i].observed) > threshold) {
            ++run_len;
            if (run_len >= rule.consecutive_months) {
                report.divergence_onset = report.rows[i + 1 - run_len].month;
                break;
            }
        } else {
            run_len = 0;
        }
    }
    return report;
}

}  // namespace cpilink
