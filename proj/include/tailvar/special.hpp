#pragma once

// Scalar special functions used across the library. Everything here is
// deterministic, dependency-free, and accurate to near machine precision in
// the ranges the estimators use.

namespace tailvar {

/// Standard normal CDF via erfc. Absolute error ~1e-16.
double norm_cdf(double x);

/// Standard normal log-density.
double norm_logpdf(double x);

/// Standard normal quantile. Rational initial guess refined with one Newton
/// step on norm_cdf; absolute error below 1e-12 on (1e-300, 1-1e-16).
/// Throws std::invalid_argument outside (0, 1).
double norm_quantile(double p);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
/// Series expansion for x < a+1, Lentz continued fraction otherwise.
double gamma_p(double a, double x);

/// Chi-square CDF with k degrees of freedom.
double chisq_cdf(double x, int k);

// ---- Student t with 4 degrees of freedom -----------------------------------
// The nu = 4 case has closed-form CDF and quantile:
//   F(t) = 1/2 + s(3 - s^2)/4,  s = t / sqrt(4 + t^2)
//   Q(p) = 2 s / sqrt(1 - s^2), s = 2 sin(asin(2p - 1)/3)
// The *standardized* variant is scaled to unit variance (t4 variance is 2).

/// CDF of the (unstandardized) t(4) distribution.
double t4_cdf(double t);

/// Quantile of the (unstandardized) t(4) distribution, p in (0, 1).
double t4_quantile(double p);

/// Quantile of the unit-variance standardized t(4): t4_quantile(p)/sqrt(2).
double std_t4_quantile(double p);

}  // namespace tailvar
