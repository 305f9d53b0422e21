#include <doctest.h>

#include "cpilink/errors.hpp"
#include "cpilink/regression.hpp"
#include "cpilink/simulate.hpp"

using namespace cpilink;

namespace {

// Two-component catalog plus prices generated exactly by the model form.
struct Fixture {
    CpiCatalog catalog;
    MonthlySeries prices;
    ModelSpec spec;
    double b1, b2, c, d;

    static Fixture make(std::uint64_t seed, double noise_sd = 0.0) {
        Fixture f{{}, MonthlySeries("T", {2003, 1}, {1.0}), {}, 2.5, -1.3, 4.0, 100.0};
        const MonthlyIndex cpi_start{2000, 1};
        MonthlySeries s1 = sim::walk_series("SEFV", cpi_start, 120, seed * 31 + 1, 150.0, 0.3, 0.7);
        MonthlySeries s2 = sim::walk_series("PDRUG", cpi_start, 120, seed * 31 + 2, 250.0, 0.4, 0.9);
        f.catalog.add({"SEFV", "food away from home", false, s1});
        f.catalog.add({"PDRUG", "prescription drugs", false, s2});
        f.spec = ModelSpec{"T", "SEFV", 3, "PDRUG", 5};

        sim::Rng noise(seed * 31 + 3);
        const MonthlyIndex price_start{2003, 1};
        std::vector<double> p(84);
        for (int r = 0; r < 84; ++r) {
            MonthlyIndex t = price_start.plus_months(r);
            p[static_cast<std::size_t>(r)] = f.b1 * s1.at(t.plus_months(-f.spec.tau1)) +
                                             f.b2 * s2.at(t.plus_months(-f.spec.tau2)) +
                                             f.c * time_trend(t) + f.d;
            if (noise_sd > 0.0) p[static_cast<std::size_t>(r)] += noise_sd * noise.next_normal();
        }
        f.prices = MonthlySeries("T", price_start, std::move(p));
        return f;
    }
};

Eigen::MatrixXd random_design(sim::Rng& rng, int rows, int cols) {
    Eigen::MatrixXd x(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) x(r, c) = rng.next_normal();
    x.col(cols - 1).setOnes();
    return x;
}

}  // namespace

TEST_CASE("build_design column order and content") {
    Fixture f = Fixture::make(1);
    ModelSpec raw{"T", "SEFV", 0, "PDRUG", 0};
    Window w{{2003, 7}, {2008, 12}};
    DesignMatrix d = build_design(f.prices, f.catalog, raw, w);
    CHECK(d.X.rows() == w.count());
    CHECK(d.X(0, 0) == f.catalog.series("SEFV").at({2003, 7}));
    CHECK(d.X(0, 1) == f.catalog.series("PDRUG").at({2003, 7}));
    CHECK(d.X(0, 2) == time_trend({2003, 7}));
    CHECK(d.X(0, 3) == 1.0);
    CHECK(d.y(0) == f.prices.at({2003, 7}));
}

TEST_CASE("build_design respects shifted coverage") {
    CpiCatalog catalog;
    catalog.add({"A", "", true, sim::walk_series("A", {2002, 1}, 60, 10)});
    catalog.add({"B", "", true, sim::walk_series("B", {2000, 1}, 120, 11)});
    MonthlySeries prices = sim::walk_series("T", {2002, 1}, 60, 12);

    // lag 14 on data starting 2002-01 only covers from 2003-03 onward
    ModelSpec spec{"T", "A", 14, "B", 0};
    try {
        build_design(prices, catalog, spec, Window{{2003, 1}, {2005, 12}});
        FAIL("expected WindowUnavailable");
    } catch (const WindowUnavailable& e) {
        REQUIRE(e.feasible.has_value());
        CHECK(e.feasible->first == MonthlyIndex{2003, 3});
    }
    CHECK_NOTHROW(build_design(prices, catalog, spec, Window{{2003, 3}, {2005, 12}}));
}

TEST_CASE("negative lag consumes data from the recent edge") {
    CpiCatalog catalog;
    catalog.add({"A", "", true, sim::walk_series("A", {2000, 1}, 120, 20)});  // through 2009-12
    catalog.add({"B", "", true, sim::walk_series("B", {2000, 1}, 120, 21)});
    MonthlySeries prices = sim::walk_series("T", {2000, 1}, 120, 22);

    ModelSpec spec{"T", "A", -2, "B", 6};
    auto feasible = feasible_window(catalog, spec, &prices);
    REQUIRE(feasible.has_value());
    CHECK(feasible->last == MonthlyIndex{2009, 10});  // 2009-12 shifted by -2
    CHECK(feasible->first == MonthlyIndex{2000, 7});
}

TEST_CASE("the AFL-shaped window holds 78 rows") {
    // FS lag -2, TS lag +6 over July 2003 .. December 2009.
    CpiCatalog catalog;
    catalog.add({"FS", "financial services", false, sim::walk_series("FS", {2000, 1}, 122, 30)});
    catalog.add({"TS", "transportation services", false, sim::walk_series("TS", {2000, 1}, 122, 31)});
    MonthlySeries prices = sim::walk_series("AFL", {2003, 1}, 84, 32);

    ModelSpec spec{"AFL", "FS", -2, "TS", 6};
    DesignMatrix d = build_design(prices, catalog, spec, Window{{2003, 7}, {2009, 12}});
    CHECK(d.X.rows() == 78);
}

TEST_CASE("ols recovers an exact generator") {
    sim::Rng rng(77);
    Eigen::MatrixXd x = random_design(rng, 40, 4);
    Eigen::Vector4d beta(1.5, -2.25, 0.75, 10.0);
    Eigen::VectorXd y = x * beta;

    OlsFit fit = ols_fit(x, y);
    CHECK(fit.sigma == doctest::Approx(0.0).epsilon(1e-9));
    for (int i = 0; i < 4; ++i)
        CHECK(fit.coefficients(i) == doctest::Approx(beta(i)).epsilon(1e-9));
    CHECK(fit.residuals.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("ols rejects duplicated columns") {
    sim::Rng rng(78);
    Eigen::MatrixXd x = random_design(rng, 40, 4);
    x.col(1) = x.col(0);
    Eigen::VectorXd y = x.rowwise().sum();
    CHECK_THROWS_AS(ols_fit(x, y), RankDeficient);
}

TEST_CASE("ols requires twice as many rows as coefficients") {
    sim::Rng rng(79);
    Eigen::MatrixXd x = random_design(rng, 7, 4);
    Eigen::VectorXd y = Eigen::VectorXd::Ones(7);
    CHECK_THROWS_AS(ols_fit(x, y), SeriesTooShort);
}

TEST_CASE("ols beats a dense grid around its own solution") {
    // Brute-force oracle: no point on a shrinking coordinate grid around the
    // QR solution attains a lower sum of squares.
    sim::Rng rng(80);
    Eigen::MatrixXd x = random_design(rng, 80, 4);
    Eigen::VectorXd y(80);
    for (int r = 0; r < 80; ++r) y(r) = 3.0 * x(r, 0) - x(r, 2) + 5.0 + rng.next_normal();

    OlsFit fit = ols_fit(x, y);
    const double best = (y - x * fit.coefficients).squaredNorm();

    for (double radius : {1.0, 0.1, 0.01}) {
        for (int a = -2; a <= 2; ++a)
            for (int b = -2; b <= 2; ++b)
                for (int c = -2; c <= 2; ++c)
                    for (int d = -2; d <= 2; ++d) {
                        Eigen::Vector4d probe = fit.coefficients;
                        probe(0) += radius * a / 2.0;
                        probe(1) += radius * b / 2.0;
                        probe(2) += radius * c / 2.0;
                        probe(3) += radius * d / 2.0;
                        CHECK((y - x * probe).squaredNorm() >= best - 1e-9);
                    }
    }
}

TEST_CASE("residuals are orthogonal to the design") {
    sim::Rng rng(81);
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::MatrixXd x = random_design(rng, 80, 4);
        Eigen::VectorXd y(80);
        for (int r = 0; r < 80; ++r) y(r) = rng.next_normal() * 5.0;
        OlsFit fit = ols_fit(x, y);
        CHECK((x.transpose() * fit.residuals).norm() <= 1e-8 * (x.transpose() * y).norm());
    }
}

TEST_CASE("sigma is invariant under component swap") {
    Fixture f = Fixture::make(3, 0.5);
    Window w{{2003, 7}, {2009, 12}};
    FittedModel m1 = fit_model(f.prices, f.catalog, f.spec, w);
    ModelSpec swapped{"T", f.spec.cpi2, f.spec.tau2, f.spec.cpi1, f.spec.tau1};
    FittedModel m2 = fit_model(f.prices, f.catalog, swapped, w);
    CHECK(m1.sigma == doctest::Approx(m2.sigma).epsilon(1e-12));
    CHECK(m1.b1 == doctest::Approx(m2.b2).epsilon(1e-9));
    CHECK(m1.b2 == doctest::Approx(m2.b1).epsilon(1e-9));
}

TEST_CASE("adding a constant to prices shifts only the intercept") {
    Fixture f = Fixture::make(4, 0.5);
    Window w{{2003, 7}, {2009, 12}};
    FittedModel base = fit_model(f.prices, f.catalog, f.spec, w);

    std::vector<double> shifted = f.prices.values();
    for (double& v : shifted) v += 17.5;
    MonthlySeries prices2("T", f.prices.start(), shifted);
    FittedModel moved = fit_model(prices2, f.catalog, f.spec, w);

    CHECK(moved.d == doctest::Approx(base.d + 17.5).epsilon(1e-9));
    CHECK(moved.b1 == doctest::Approx(base.b1).epsilon(1e-9));
    CHECK(moved.b2 == doctest::Approx(base.b2).epsilon(1e-9));
    CHECK(moved.c == doctest::Approx(base.c).epsilon(1e-9));
    CHECK(moved.sigma == doctest::Approx(base.sigma).epsilon(1e-12));
}

TEST_CASE("scaling a component rescales its coefficient only") {
    Fixture f = Fixture::make(5, 0.5);
    Window w{{2003, 7}, {2009, 12}};
    FittedModel base = fit_model(f.prices, f.catalog, f.spec, w);

    CpiCatalog scaled;
    const double s = 4.0;
    std::vector<double> vals = f.catalog.series("SEFV").values();
    for (double& v : vals) v *= s;
    scaled.add({"SEFV", "", false, MonthlySeries("SEFV", f.catalog.series("SEFV").start(), vals)});
    scaled.add(f.catalog.at("PDRUG"));

    FittedModel m = fit_model(f.prices, scaled, f.spec, w);
    CHECK(m.b1 == doctest::Approx(base.b1 / s).epsilon(1e-9));
    CHECK(m.b2 == doctest::Approx(base.b2).epsilon(1e-9));
    CHECK(m.sigma == doctest::Approx(base.sigma).epsilon(1e-12));
}

TEST_CASE("sigma recomputes from stored residuals") {
    Fixture f = Fixture::make(6, 1.0);
    FittedModel m = fit_model(f.prices, f.catalog, f.spec, Window{{2003, 7}, {2009, 12}});
    CHECK(static_cast<int>(m.residuals.size()) == m.window.count());
    CHECK(m.sigma == doctest::Approx(recompute_sigma(m.residuals)).epsilon(1e-12));
}

TEST_CASE("predict over the fit window reproduces fitted values") {
    Fixture f = Fixture::make(7, 0.8);
    Window w{{2003, 7}, {2009, 12}};
    FittedModel m = fit_model(f.prices, f.catalog, f.spec, w);
    MonthlySeries fitted = predict(m, f.catalog, w);
    for (int r = 0; r < w.count(); ++r) {
        MonthlyIndex t = w.first.plus_months(r);
        CHECK(f.prices.at(t) - fitted.at(t) ==
              doctest::Approx(m.residuals[static_cast<std::size_t>(r)]).epsilon(1e-12));
    }
}

TEST_CASE("constant model predicts a constant") {
    Fixture f = Fixture::make(8);
    FittedModel m;
    m.spec = f.spec;
    m.b1 = m.b2 = m.c = 0.0;
    m.d = 5.0;
    m.window = Window{{2003, 7}, {2004, 6}};
    m.residuals.assign(12, 0.0);
    MonthlySeries out = predict(m, f.catalog, Window{{2004, 1}, {2004, 12}});
    for (double v : out.values()) CHECK(v == 5.0);
}

TEST_CASE("prediction extends the generator beyond the fit window") {
    Fixture f = Fixture::make(9);  // zero noise
    Window fit_w{{2003, 7}, {2008, 6}};
    FittedModel m = fit_model(f.prices, f.catalog, f.spec, fit_w);
    Window beyond{{2008, 7}, {2009, 12}};
    MonthlySeries out = predict(m, f.catalog, beyond);
    for (int r = 0; r < beyond.count(); ++r) {
        MonthlyIndex t = beyond.first.plus_months(r);
        CHECK(out.at(t) == doctest::Approx(f.prices.at(t)).epsilon(1e-8));
    }
}

TEST_CASE("predict reports the feasible sub-range") {
    Fixture f = Fixture::make(10);
    FittedModel m = fit_model(f.prices, f.catalog, f.spec, Window{{2003, 7}, {2009, 12}});
    // CPI data ends 2009-12; with lags (+3, +5) prediction reaches 2010-03.
    try {
        predict(m, f.catalog, Window{{2009, 1}, {2010, 12}});
        FAIL("expected WindowUnavailable");
    } catch (const WindowUnavailable& e) {
        REQUIRE(e.feasible.has_value());
        CHECK(e.feasible->last == MonthlyIndex{2010, 3});
    }
}
