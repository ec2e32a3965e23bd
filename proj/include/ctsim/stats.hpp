#pragma once

#include <span>

namespace ctsim {

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;  // two-sided
};

double mean(std::span<const double> xs);

/// Sample standard deviation (n - 1 denominator); 0 for a single sample.
double sample_std(std::span<const double> xs);

/// Welch's unequal-variance t-test with Welch-Satterthwaite degrees of
/// freedom; the two-sided p-value comes from the t-distribution survival
/// function. Throws std::invalid_argument if either sample has fewer than
/// two values or zero variance.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

/// Regularized incomplete beta function I_x(a, b), continued-fraction
/// evaluation. Exposed for the t-distribution tail it powers.
double incomplete_beta(double a, double b, double x);

}  // namespace ctsim
