#pragma once

#include <Eigen/Dense>
#include <optional>

#include "cpilink/catalog.hpp"
#include "cpilink/model.hpp"
#include "cpilink/series.hpp"

namespace cpilink {

struct DesignMatrix {
    Eigen::MatrixXd X;  // J x 4, columns [cpi1 shifted, cpi2 shifted, time trend, 1]
    Eigen::VectorXd y;  // observed prices
    Window window{};
};

// Window over which both shifted components and the price series are all
// defined; nullopt when they share no month. Pass prices = nullptr to
// constrain by CPI coverage only (prediction).
std::optional<Window> feasible_window(const CpiCatalog& catalog, const ModelSpec& spec,
                                      const MonthlySeries* prices);

// Throws WindowUnavailable (carrying the maximal feasible window) when the
// requested window is not fully covered.
DesignMatrix build_design(const MonthlySeries& prices, const CpiCatalog& catalog,
                          const ModelSpec& spec, const Window& window);

// Generic least squares via Householder QR. Rank is checked on the singular
// values of the R factor: smin < rank_tol * smax raises RankDeficient.
struct LeastSquares {
    Eigen::VectorXd beta;
    Eigen::VectorXd residuals;
    Eigen::VectorXd std_errors;  // per coefficient
    double s2 = 0.0;             // residual variance, df = rows - cols
    int df = 0;
};
LeastSquares least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           double rank_tol = 1e-10);

struct OlsFit {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd residuals;
    double sigma = 0.0;
};
// Requires rows >= 2 * cols (J >= 8 for the 4-parameter model).
OlsFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

FittedModel fit_model(const MonthlySeries& prices, const CpiCatalog& catalog,
                      const ModelSpec& spec, const Window& window);

// Model evaluated over `range` with actual CPI data; values may be negative.
MonthlySeries predict(const FittedModel& model, const CpiCatalog& catalog, const Window& range);

}  // namespace cpilink
