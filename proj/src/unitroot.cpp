#include "cpilink/unitroot.hpp"

#include <array>
#include <cmath>

#include "cpilink/errors.hpp"
#include "cpilink/regression.hpp"

namespace cpilink {
namespace {

// ---------------------------------------------------------------------------
// Critical value tables
// ---------------------------------------------------------------------------

struct Bracket {
    int n;
    CvTriple cv;  // 1%, 5%, 10%
};

// Dickey-Fuller tau statistic, by deterministic case and sample size.
constexpr std::array<Bracket, 6> kTauNone = {{
    {25, {-2.66, -1.95, -1.60}},
    {50, {-2.62, -1.95, -1.61}},
    {100, {-2.60, -1.95, -1.61}},
    {250, {-2.58, -1.95, -1.62}},
    {500, {-2.58, -1.95, -1.62}},
    {100000, {-2.58, -1.95, -1.62}},
}};
constexpr std::array<Bracket, 6> kTauConstant = {{
    {25, {-3.75, -3.00, -2.63}},
    {50, {-3.58, -2.93, -2.60}},
    {100, {-3.51, -2.89, -2.58}},
    {250, {-3.46, -2.88, -2.57}},
    {500, {-3.44, -2.87, -2.57}},
    {100000, {-3.43, -2.86, -2.57}},
}};
constexpr std::array<Bracket, 6> kTauTrend = {{
    {25, {-4.38, -3.60, -3.24}},
    {50, {-4.15, -3.50, -3.18}},
    {100, {-4.04, -3.45, -3.15}},
    {250, {-3.99, -3.43, -3.13}},
    {500, {-3.98, -3.42, -3.13}},
    {100000, {-3.96, -3.41, -3.12}},
}};

// Normalized-bias statistic n*(rho - 1).
constexpr std::array<Bracket, 6> kRhoNone = {{
    {25, {-11.9, -7.7, -5.7}},
    {50, {-12.9, -7.9, -5.8}},
    {100, {-13.3, -8.0, -5.9}},
    {250, {-13.6, -8.1, -5.9}},
    {500, {-13.7, -8.1, -5.9}},
    {100000, {-13.8, -8.1, -5.9}},
}};
constexpr std::array<Bracket, 6> kRhoConstant = {{
    {25, {-17.2, -12.5, -10.2}},
    {50, {-18.9, -13.3, -10.7}},
    {100, {-19.8, -13.7, -11.0}},
    {250, {-20.3, -14.0, -11.2}},
    {500, {-20.5, -14.0, -11.2}},
    {100000, {-20.7, -14.1, -11.3}},
}};
constexpr std::array<Bracket, 6> kRhoTrend = {{
    {25, {-22.5, -17.9, -15.6}},
    {50, {-25.7, -19.8, -16.8}},
    {100, {-27.4, -20.7, -17.5}},
    {250, {-28.4, -21.3, -18.0}},
    {500, {-28.9, -21.5, -18.1}},
    {100000, {-29.5, -21.8, -18.3}},
}};

CvTriple interpolate(const std::array<Bracket, 6>& table, int n) {
    if (n <= table.front().n) return table.front().cv;
    for (std::size_t i = 1; i < table.size(); ++i) {
        if (n <= table[i].n) {
            const Bracket& lo = table[i - 1];
            const Bracket& hi = table[i];
            double f = static_cast<double>(n - lo.n) / (hi.n - lo.n);
            return CvTriple{lo.cv.cv1 + f * (hi.cv.cv1 - lo.cv.cv1),
                            lo.cv.cv5 + f * (hi.cv.cv5 - lo.cv.cv5),
                            lo.cv.cv10 + f * (hi.cv.cv10 - lo.cv.cv10)};
        }
    }
    return table.back().cv;
}

// Response surface cv = b0 + b1/n + b2/n^2 for the two-variable residual test.
struct Surface {
    double b0, b1, b2;
};
constexpr std::array<Surface, 3> kEgConstant = {{
    {-3.9001, -10.534, -30.03},  // 1%
    {-3.3377, -5.967, -8.98},    // 5%
    {-3.0462, -4.069, -5.73},    // 10%
}};
constexpr std::array<Surface, 3> kEgTrend = {{
    {-4.3266, -15.531, -34.03},
    {-3.7809, -9.421, -15.06},
    {-3.4959, -7.203, -4.01},
}};

// ---------------------------------------------------------------------------
// Regression cores
// ---------------------------------------------------------------------------

int det_columns(Deterministic det) {
    switch (det) {
        case Deterministic::none: return 0;
        case Deterministic::constant: return 1;
        case Deterministic::constant_trend: return 2;
    }
    return 1;
}

// Dickey-Fuller regression: dy_t on [det, y_{t-1}, dy_{t-1}..dy_{t-p}] for
// t in [t0, n). Rank failures surface as DegenerateSeries (constant input).
LeastSquares df_regression(const std::vector<double>& y, int p, int t0, Deterministic det) {
    const int n = static_cast<int>(y.size());
    const int rows = n - t0;
    const int dcols = det_columns(det);
    const int cols = dcols + 1 + p;

    Eigen::MatrixXd x(rows, cols);
    Eigen::VectorXd dy(rows);
    for (int r = 0; r < rows; ++r) {
        const int t = t0 + r;
        dy(r) = y[static_cast<std::size_t>(t)] - y[static_cast<std::size_t>(t - 1)];
        int col = 0;
        if (dcols >= 1) x(r, col++) = 1.0;
        if (dcols >= 2) x(r, col++) = static_cast<double>(t);
        x(r, col++) = y[static_cast<std::size_t>(t - 1)];
        for (int lag = 1; lag <= p; ++lag)
            x(r, col++) = y[static_cast<std::size_t>(t - lag)] -
                          y[static_cast<std::size_t>(t - lag - 1)];
    }
    try {
        return least_squares(x, dy);
    } catch (const RankDeficient& e) {
        throw DegenerateSeries(std::string("unit root regression degenerate: ") + e.what());
    }
}

std::optional<int> reject_level(double statistic, const CvTriple& cv) {
    if (statistic < cv.cv1) return 1;
    if (statistic < cv.cv5) return 5;
    if (statistic < cv.cv10) return 10;
    return std::nullopt;
}

std::map<int, double> to_map(const CvTriple& cv) {
    return {{1, cv.cv1}, {5, cv.cv5}, {10, cv.cv10}};
}

}  // namespace

CvTriple df_tau_critical_values(Deterministic det, int n) {
    switch (det) {
        case Deterministic::none: return interpolate(kTauNone, n);
        case Deterministic::constant: return interpolate(kTauConstant, n);
        case Deterministic::constant_trend: return interpolate(kTauTrend, n);
    }
    return interpolate(kTauConstant, n);
}

CvTriple df_rho_critical_values(Deterministic det, int n) {
    switch (det) {
        case Deterministic::none: return interpolate(kRhoNone, n);
        case Deterministic::constant: return interpolate(kRhoConstant, n);
        case Deterministic::constant_trend: return interpolate(kRhoTrend, n);
    }
    return interpolate(kRhoConstant, n);
}

CvTriple engle_granger_critical_values(Deterministic det, int n) {
    const auto& s = det == Deterministic::constant_trend ? kEgTrend : kEgConstant;
    auto eval = [n](const Surface& f) { return f.b0 + f.b1 / n + f.b2 / (static_cast<double>(n) * n); };
    return CvTriple{eval(s[0]), eval(s[1]), eval(s[2])};
}

UnitRootReport adf_test(const std::vector<double>& y, int max_lag, Deterministic det) {
    const int n = static_cast<int>(y.size());
    if (max_lag < 0) throw Error("adf: max_lag must be >= 0");
    if (n < 20 + max_lag)
        throw SeriesTooShort("adf: need at least " + std::to_string(20 + max_lag) +
                             " observations, got " + std::to_string(n));

    // Lag order by BIC over a common sample, then refit on the maximal sample.
    int best_p = 0;
    if (max_lag > 0) {
        const int t0 = max_lag + 1;
        const int rows = n - t0;
        double best_bic = 0.0;
        for (int p = 0; p <= max_lag; ++p) {
            LeastSquares ls = df_regression(y, p, t0, det);
            double rss = ls.residuals.squaredNorm();
            if (!(rss > 0.0))
                throw DegenerateSeries("adf: zero residual variance at lag " + std::to_string(p));
            double bic = rows * std::log(rss / rows) +
                         (det_columns(det) + 1 + p) * std::log(static_cast<double>(rows));
            if (p == 0 || bic < best_bic) {
                best_bic = bic;
                best_p = p;
            }
        }
    }

    LeastSquares ls = df_regression(y, best_p, best_p + 1, det);
    const int n_eff = n - best_p - 1;
    const int gi = det_columns(det);  // index of the y_{t-1} coefficient
    const double gamma = ls.beta(gi);
    const double se = ls.std_errors(gi);
    if (!(se > 0.0)) throw DegenerateSeries("adf: zero standard error on the level term");
    double phi_sum = 0.0;
    for (int lag = 1; lag <= best_p; ++lag) phi_sum += ls.beta(gi + lag);
    if (std::abs(1.0 - phi_sum) < 1e-10)
        throw DegenerateSeries("adf: unit sum of difference coefficients");

    UnitRootReport report;
    report.statistic_t = gamma / se;
    report.statistic_rho = n_eff * gamma / (1.0 - phi_sum);
    report.lags_used = best_p;
    report.nobs = n_eff;
    CvTriple cv_t = df_tau_critical_values(det, n_eff);
    report.critical_values = to_map(cv_t);
    report.critical_values_rho = to_map(df_rho_critical_values(det, n_eff));
    report.reject_unit_root_at = reject_level(report.statistic_t, cv_t);
    return report;
}

UnitRootReport adf_test(const MonthlySeries& series, int max_lag, Deterministic det) {
    return adf_test(series.values(), max_lag, det);
}

UnitRootReport pp_test(const std::vector<double>& y, int bandwidth, Deterministic det) {
    const int n = static_cast<int>(y.size());
    if (n < 20) throw SeriesTooShort("pp: need at least 20 observations, got " + std::to_string(n));

    LeastSquares ls = df_regression(y, 0, 1, det);
    const int m = n - 1;  // regression sample
    const int gi = det_columns(det);
    const double gamma = ls.beta(gi);
    const double se = ls.std_errors(gi);
    if (!(se > 0.0)) throw DegenerateSeries("pp: zero standard error on the level term");
    const double t_stat = gamma / se;
    const double s2 = ls.s2;

    const int q = bandwidth >= 0
                      ? bandwidth
                      : static_cast<int>(std::floor(4.0 * std::pow(n / 100.0, 2.0 / 9.0)));

    // Bartlett-weighted long-run variance of the residuals.
    const Eigen::VectorXd& u = ls.residuals;
    double gamma0 = u.squaredNorm() / m;
    if (!(gamma0 > 0.0)) throw DegenerateSeries("pp: zero residual variance");
    double lambda2 = gamma0;
    for (int j = 1; j <= q && j < m; ++j) {
        double acov = 0.0;
        for (int t = j; t < m; ++t) acov += u(t) * u(t - j);
        acov /= m;
        lambda2 += 2.0 * (1.0 - static_cast<double>(j) / (q + 1)) * acov;
    }
    if (!(lambda2 > 0.0)) throw DegenerateSeries("pp: non-positive long-run variance");

    UnitRootReport report;
    report.statistic_t = std::sqrt(gamma0 / lambda2) * t_stat -
                         (lambda2 - gamma0) * m * se / (2.0 * std::sqrt(lambda2) * std::sqrt(s2));
    report.statistic_rho = m * gamma - (static_cast<double>(m) * m * se * se / s2) *
                                           (lambda2 - gamma0) / 2.0;
    report.lags_used = q;
    report.nobs = m;
    CvTriple cv_t = df_tau_critical_values(det, m);
    report.critical_values = to_map(cv_t);
    report.critical_values_rho = to_map(df_rho_critical_values(det, m));
    report.reject_unit_root_at = reject_level(report.statistic_t, cv_t);
    return report;
}

UnitRootReport pp_test(const MonthlySeries& series, int bandwidth, Deterministic det) {
    return pp_test(series.values(), bandwidth, det);
}

UnitRootReport engle_granger(const MonthlySeries& observed, const MonthlySeries& predicted,
                             Deterministic det) {
    if (det == Deterministic::none)
        throw Error("engle_granger: deterministic terms must include a constant");
    auto [window, m] = align({observed, predicted});
    const int n = window.count();
    if (n < 30)
        throw SeriesTooShort("engle_granger: need at least 30 aligned months, got " +
                             std::to_string(n));

    const int dcols = det_columns(det);
    Eigen::MatrixXd x(n, dcols + 1);
    for (int r = 0; r < n; ++r) {
        int col = 0;
        x(r, col++) = 1.0;
        if (dcols == 2) x(r, col++) = static_cast<double>(r);
        x(r, col) = m(r, 1);  // predicted
    }
    Eigen::VectorXd yv = m.col(0);
    LeastSquares step1;
    try {
        step1 = least_squares(x, yv);
    } catch (const RankDeficient& e) {
        throw DegenerateSeries(std::string("engle_granger: step-1 regression degenerate: ") +
                               e.what());
    }
    if (step1.residuals.squaredNorm() < 1e-18 * std::max(1.0, yv.squaredNorm()))
        throw DegenerateSeries("engle_granger: residuals identically zero");

    std::vector<double> resid(step1.residuals.data(), step1.residuals.data() + n);
    const int max_lag = std::min(12, n - 20);
    UnitRootReport adf = adf_test(resid, std::max(0, max_lag), Deterministic::none);

    UnitRootReport report;
    report.statistic_t = adf.statistic_t;
    report.statistic_rho = adf.statistic_rho;
    report.lags_used = adf.lags_used;
    report.nobs = adf.nobs;
    CvTriple cv = engle_granger_critical_values(det, n);
    report.critical_values = to_map(cv);
    report.critical_values_rho = to_map(df_rho_critical_values(Deterministic::none, adf.nobs));
    report.reject_unit_root_at = reject_level(report.statistic_t, cv);
    return report;
}

}  // namespace cpilink
