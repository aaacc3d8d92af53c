#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <vector>

#include "tailvar/series.hpp"

namespace tailvar {

enum class Innovations { StudentT4, Normal };

/// AR(1)-GARCH(1,1) parameters:
///   mu_t    = c + phi * r_{t-1}
///   sigma_t^2 = a0 + a1 * r_{t-1}^2 + b1 * sigma_{t-1}^2
/// Constraints: a0 > 0, a1 >= 0, b1 >= 0, a1 + b1 < 1, |phi| < 1. The
/// innovation df is fixed at 4 for Student-t fits (0 marks a normal fit in
/// persisted models).
struct GarchParams {
    double c = 0;
    double phi = 0;
    double a0 = 0;
    double a1 = 0;
    double b1 = 0;
    double df = 4;
};

/// Log-density of the unit-variance standardized t(4):
///   g(z) = Gamma(2.5)/(Gamma(2) sqrt(2 pi)) * (1 + z^2/2)^(-5/2).
double std_t_logdensity(double z);

/// Conditional log-likelihood, terms t = 2..n (the first observation only
/// conditions the AR recursion). The variance recursion is seeded with
/// pre-sample values r_0^2 = sigma_0^2 = sample variance, i.e.
/// sigma_1^2 = a0 + (a1 + b1) * s^2. Throws std::invalid_argument on
/// constraint violations and EstimationError if the likelihood is not
/// finite for these inputs.
double garch_loglik(const GarchParams& params, const ReturnSeries& series,
                    Innovations innovations = Innovations::StudentT4);

/// Central-difference gradient of garch_loglik in natural parameter order
/// (c, phi, a0, a1, b1). Used by diagnostics and tests.
std::array<double, 5> loglik_gradient(const GarchParams& params,
                                      const ReturnSeries& series,
                                      Innovations innovations = Innovations::StudentT4);

/// The closed-form gradient the optimizer actually climbs, same order as
/// loglik_gradient. Exposed so the derivative recursions can be pinned
/// against finite differences.
std::array<double, 5> loglik_gradient_analytic(
    const GarchParams& params, const ReturnSeries& series,
    Innovations innovations = Innovations::StudentT4);

struct FilterResult {
    std::vector<double> sigma;  // conditional sd path, length n
    std::vector<double> z;      // standardized residuals, length n
    double mu_next = 0;         // one-step mean forecast
    double sigma_next = 0;      // one-step sd forecast
};

/// Run the mean/variance recursions at fixed parameters. The residuals
/// reconstruct the series exactly: r_t = mu_t + sigma_t * z_t.
FilterResult garch_filter(const GarchParams& params, const ReturnSeries& series);

struct GarchFit {
    GarchParams params;
    Innovations innovations = Innovations::StudentT4;
    std::array<double, 5> param_se{};  // (c, phi, a0, a1, b1), NaN if Hessian fails
    double loglik = 0;
    std::vector<double> sigma;
    std::vector<double> z;
    double mu_next = 0;
    double sigma_next = 0;
    std::size_t n = 0;
};

/// Maximum likelihood fit by BFGS with analytic gradients in an
/// unconstrained transform space (phi = tanh, a0 = exp, (a1,b1) = softmax on
/// the open simplex), from three deterministic starting points, best
/// likelihood wins. Standard errors come from the inverse central-difference
/// Hessian. Deterministic: refitting identical input reproduces the result
/// bit for bit. Throws EstimationError on non-convergence (500-iteration
/// cap) or a boundary solution a1 + b1 >= 1 - 1e-6.
GarchFit garch_fit(const ReturnSeries& series,
                   Innovations innovations = Innovations::StudentT4);

struct StationarityCheck {
    bool sum_ok = false;        // a1 + b1 < 1
    double eq12_integral = 0;   // E[ln(a1 Z^2 + b1)], Z standardized t(4)
    bool eq12_ok = false;       // integral < 0 (strict stationarity)
    bool degenerate = false;    // a1 = b1 = 0: integrand is -inf everywhere
};

/// Moment and log-moment stationarity checks. The integral is evaluated by
/// adaptive quadrature over [-60, 60] (tail truncation far below the
/// tolerances any caller uses). Degenerate a1 = b1 = 0 is signaled with
/// eq12_integral = -inf and eq12_ok vacuously true.
StationarityCheck stationarity_check(const GarchParams& params);

/// A persisted fit: everything var-style consumers need to reproduce
/// forecasts without refitting. Round-trips through JSON at full precision.
struct GarchModel {
    GarchParams params;
    Innovations innovations = Innovations::StudentT4;
    double loglik = 0;
    double mu_next = 0;
    double sigma_next = 0;
    std::size_t n = 0;
    double eq12_integral = 0;
};

void save_model(const GarchFit& fit, const std::filesystem::path& path);
GarchModel load_model(const std::filesystem::path& path);

}  // namespace tailvar
