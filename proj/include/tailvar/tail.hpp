#pragma once

#include <utility>
#include <vector>

#include "tailvar/series.hpp"

namespace tailvar {

enum class Tail { Lower, Upper };
enum class TailMethod { Fixed, Phillips, Huisman };

/// A power-law tail estimate. gamma is the tail *exponent* (inverse index),
/// alpha = 1/gamma the tail index; threshold is the signed m-th most extreme
/// observation anchoring quantile extrapolation; implied_scale approximates
/// the Pareto scale a in P(|R| > x) ~ a x^(-alpha) as (m/n)|r_(m)|^alpha.
struct TailEstimate {
    double gamma = 0;
    double alpha = 0;
    int m = 0;
    double threshold = 0;
    double se_gamma = 0;
    double implied_scale = 0;
    Tail tail = Tail::Lower;
    TailMethod method = TailMethod::Fixed;
};

/// Hill estimator over the m most extreme observations of the chosen tail:
/// gamma = mean_{i<m}(ln|r_(i)|) - ln|r_(m)| with order statistics ranked by
/// decreasing magnitude; se = gamma/sqrt(m) (Hall's asymptotic). Requires
/// 2 <= m and at least m observations strictly on the chosen side of zero.
TailEstimate hill_estimate(const ReturnSeries& series, int m, Tail tail);

struct HillTrace {
    struct Entry {
        int m;
        double gamma;
        double se;
    };
    std::vector<Entry> entries;  // m = 2..eta in order
};

/// Hill estimates for every threshold count m = 2..eta (the Hill plot).
HillTrace hill_trace(const ReturnSeries& series, int eta, Tail tail);

/// Phillips adaptive threshold count: m = round(lambda * n^(2/3)) with
/// lambda = |(g1/sqrt(2)) * (n^(1/3)/m2) / (g1 - g2)|^(2/3) from pilot Hill
/// estimates g1 at m1 = floor(n^(2/3)) and g2 at m2 = floor(n^(4/5)),
/// clamped to [2, n/2]. Equal pilots fall back to floor(n^(2/3)).
/// Requires n >= 100.
int phillips_threshold(const ReturnSeries& series, Tail tail);

/// Huisman-style small-sample correction: weighted least squares of the Hill
/// trace gamma(m) on m over m = 2..eta (rows scaled by sqrt(m)); the
/// intercept is the bias-corrected gamma, its WLS standard error is
/// se_gamma, and the reported m is argmin_m |gamma(m) - intercept| with the
/// matching threshold. Requires 10 <= eta <= n/2 and eta qualifying tail
/// observations; throws EstimationError when the intercept is not positive.
TailEstimate huisman_estimate(const ReturnSeries& series, int eta, Tail tail);

/// Default regression window for huisman_estimate given the number of
/// observations in the chosen tail: half the tail, capped at 250 points and
/// floored at 10. The linear bias approximation behind the regression is a
/// small-sample device; past a few hundred thresholds the curvature of the
/// Hill trace drags the intercept down (eventually below zero), so the
/// window is kept inside the regime the correction was built for.
int default_huisman_eta(int tail_count);

struct FiniteVarianceTest {
    double se_alpha = 0;  // delta method: alpha^2 * se_gamma
    double z_stat = 0;    // (alpha - 2) / se_alpha
    bool finite_variance = false;  // one-sided 5%: z > 1.645
};

/// One-sided test of alpha > 2 (finite variance) from a tail estimate.
FiniteVarianceTest finite_variance_test(const TailEstimate& est);

/// Normal Q-Q data: (mu + sd * Phi^-1((i-0.5)/n), x_(i)) for i = 1..n with
/// mu, sd the sample moments. First = theoretical quantile, second = order
/// statistic.
std::vector<std::pair<double, double>> qq_normal_data(const ReturnSeries& series);

}  // namespace tailvar
