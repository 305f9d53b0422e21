#pragma once

#include <string>
#include <vector>

#include "cpilink/monthly.hpp"

namespace cpilink {

// Identity of a candidate two-component model: share ticker plus the two CPI
// components and their month lags. Positive lag = component leads the price.
struct ModelSpec {
    std::string ticker;
    std::string cpi1;
    int tau1 = 0;
    std::string cpi2;
    int tau2 = 0;

    // Components ordered so that cpi1 < cpi2; the model is symmetric in them.
    ModelSpec canonical() const;
    void validate() const;  // cpi1 != cpi2

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

// ModelSpec plus the estimated coefficients, residuals and standard error.
// sigma = sqrt(sum(e^2) / (J - 4)) with J the window month count.
struct FittedModel {
    ModelSpec spec;
    double b1 = 0.0;  // dollars per index point of cpi1
    double b2 = 0.0;
    double c = 0.0;  // dollars per year (time trend)
    double d = 0.0;  // dollars (intercept)
    double sigma = 0.0;
    Window window{};
    std::vector<double> residuals;  // one per month in window, dollars

    friend bool operator==(const FittedModel&, const FittedModel&) = default;
};

double recompute_sigma(const std::vector<double>& residuals, int n_params = 4);

}  // namespace cpilink
