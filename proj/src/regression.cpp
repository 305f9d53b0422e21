#include "cpilink/regression.hpp"

#include <cmath>

#include "cpilink/errors.hpp"

namespace cpilink {

ModelSpec ModelSpec::canonical() const {
    if (cpi1 <= cpi2) return *this;
    return ModelSpec{ticker, cpi2, tau2, cpi1, tau1};
}

void ModelSpec::validate() const {
    if (cpi1 == cpi2) throw Error("model spec: cpi1 and cpi2 must differ (got '" + cpi1 + "')");
}

double recompute_sigma(const std::vector<double>& residuals, int n_params) {
    const int j = static_cast<int>(residuals.size());
    if (j <= n_params) throw Error("sigma undefined: " + std::to_string(j) + " residuals");
    double ss = 0.0;
    for (double e : residuals) ss += e * e;
    return std::sqrt(ss / (j - n_params));
}

std::optional<Window> feasible_window(const CpiCatalog& catalog, const ModelSpec& spec,
                                      const MonthlySeries* prices) {
    spec.validate();
    const MonthlySeries& s1 = catalog.series(spec.cpi1);
    const MonthlySeries& s2 = catalog.series(spec.cpi2);
    // Window of component i shifted by tau_i.
    Window w1{s1.start().plus_months(spec.tau1), s1.last().plus_months(spec.tau1)};
    Window w2{s2.start().plus_months(spec.tau2), s2.last().plus_months(spec.tau2)};
    std::optional<Window> w = Window::intersect(w1, w2);
    if (w && prices) w = Window::intersect(*w, prices->window());
    return w;
}

DesignMatrix build_design(const MonthlySeries& prices, const CpiCatalog& catalog,
                          const ModelSpec& spec, const Window& window) {
    auto feasible = feasible_window(catalog, spec, &prices);
    if (!feasible || !feasible->contains(window)) {
        std::string msg = "window " + window.str() + " unavailable for (" + spec.cpi1 + " lag " +
                          std::to_string(spec.tau1) + ", " + spec.cpi2 + " lag " +
                          std::to_string(spec.tau2) + "); feasible: " +
                          (feasible ? feasible->str() : "none");
        throw WindowUnavailable(msg, feasible);
    }

    const MonthlySeries& s1 = catalog.series(spec.cpi1);
    const MonthlySeries& s2 = catalog.series(spec.cpi2);
    const int j = window.count();
    // Reading a series shifted by tau at month t yields the raw value at t - tau.
    const int off1 = s1.start().months_until(window.first) - spec.tau1;
    const int off2 = s2.start().months_until(window.first) - spec.tau2;
    const int offp = prices.start().months_until(window.first);

    DesignMatrix d;
    d.window = window;
    d.X.resize(j, 4);
    d.y.resize(j);
    for (int r = 0; r < j; ++r) {
        d.X(r, 0) = s1.values()[static_cast<std::size_t>(off1 + r)];
        d.X(r, 1) = s2.values()[static_cast<std::size_t>(off2 + r)];
        d.X(r, 2) = time_trend(window.first.plus_months(r));
        d.X(r, 3) = 1.0;
        d.y(r) = prices.values()[static_cast<std::size_t>(offp + r)];
    }
    return d;
}

LeastSquares least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double rank_tol) {
    const Eigen::Index rows = X.rows(), cols = X.cols();
    if (rows <= cols) throw SeriesTooShort("least squares: " + std::to_string(rows) + " rows for " +
                                           std::to_string(cols) + " coefficients");

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
    Eigen::MatrixXd r_factor =
        qr.matrixQR().topRows(cols).template triangularView<Eigen::Upper>();

    // Singular values of R equal those of X.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(r_factor);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(cols - 1);
    if (!(smax > 0.0) || smin < rank_tol * smax)
        throw RankDeficient("design matrix rank deficient (smin/smax = " +
                            std::to_string(smax > 0.0 ? smin / smax : 0.0) + ")");

    LeastSquares ls;
    ls.beta = qr.solve(y);
    ls.residuals = y - X * ls.beta;
    ls.df = static_cast<int>(rows - cols);
    ls.s2 = ls.residuals.squaredNorm() / ls.df;

    // (X'X)^-1 = R^-1 R^-T; diagonal from the rows of R^-1.
    Eigen::MatrixXd rinv =
        r_factor.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(cols, cols));
    ls.std_errors.resize(cols);
    for (Eigen::Index i = 0; i < cols; ++i)
        ls.std_errors(i) = std::sqrt(ls.s2 * rinv.row(i).squaredNorm());
    return ls;
}

OlsFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    if (X.rows() < 2 * X.cols())
        throw SeriesTooShort("ols: need at least " + std::to_string(2 * X.cols()) +
                             " observations, got " + std::to_string(X.rows()));
    LeastSquares ls = least_squares(X, y);
    OlsFit fit;
    fit.coefficients = std::move(ls.beta);
    fit.residuals = std::move(ls.residuals);
    fit.sigma = std::sqrt(ls.s2);
    return fit;
}

FittedModel fit_model(const MonthlySeries& prices, const CpiCatalog& catalog,
                      const ModelSpec& spec, const Window& window) {
    DesignMatrix d = build_design(prices, catalog, spec, window);
    OlsFit fit = ols_fit(d.X, d.y);
    FittedModel m;
    m.spec = spec;
    m.b1 = fit.coefficients(0);
    m.b2 = fit.coefficients(1);
    m.c = fit.coefficients(2);
    m.d = fit.coefficients(3);
    m.sigma = fit.sigma;
    m.window = window;
    m.residuals.assign(fit.residuals.data(), fit.residuals.data() + fit.residuals.size());
    return m;
}

MonthlySeries predict(const FittedModel& model, const CpiCatalog& catalog, const Window& range) {
    auto feasible = feasible_window(catalog, model.spec, nullptr);
    std::optional<Window> usable;
    if (feasible) usable = Window::intersect(*feasible, range);
    if (!usable || !(usable->first == range.first && usable->last == range.last)) {
        throw WindowUnavailable("prediction range " + range.str() + " unavailable; feasible: " +
                                    (usable ? usable->str() : "none"),
                                usable);
    }

    const MonthlySeries& s1 = catalog.series(model.spec.cpi1);
    const MonthlySeries& s2 = catalog.series(model.spec.cpi2);
    const int off1 = s1.start().months_until(range.first) - model.spec.tau1;
    const int off2 = s2.start().months_until(range.first) - model.spec.tau2;

    std::vector<double> values(static_cast<std::size_t>(range.count()));
    for (int r = 0; r < range.count(); ++r) {
        MonthlyIndex t = range.first.plus_months(r);
        values[static_cast<std::size_t>(r)] =
            model.b1 * s1.values()[static_cast<std::size_t>(off1 + r)] +
            model.b2 * s2.values()[static_cast<std::size_t>(off2 + r)] +
            model.c * time_trend(t) + model.d;
    }
    return MonthlySeries(model.spec.ticker + ".predicted", range.first, std::move(values));
}

}  // namespace cpilink
