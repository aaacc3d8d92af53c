#include "tailvar/tail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tailvar/errors.hpp"
#include "tailvar/special.hpp"

namespace tailvar {

namespace {

// Magnitudes of the chosen tail, largest first. Throws if fewer than `need`
// observations lie strictly on the required side of zero.
std::vector<double> tail_magnitudes(const ReturnSeries& series, int need, Tail tail) {
    std::vector<double> mags;
    mags.reserve(series.size());
    for (double v : series.values) {
        if (tail == Tail::Lower ? (v < 0.0) : (v > 0.0))
            mags.push_back(std::fabs(v));
    }
    if (static_cast<int>(mags.size()) < need)
        throw std::invalid_argument(
            tail == Tail::Lower
                ? "tail estimate: window reaches a nonnegative value in the lower tail"
                : "tail estimate: window reaches a nonpositive value in the upper tail");
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    mags.resize(static_cast<std::size_t>(need));
    return mags;
}

double signed_threshold(double magnitude, Tail tail) {
    return tail == Tail::Lower ? -magnitude : magnitude;
}

// gamma(m) for m = 2..eta from a single pass over log-magnitudes.
std::vector<double> hill_gammas(const std::vector<double>& mags, int eta) {
    std::vector<double> logs(mags.size());
    for (std::size_t i = 0; i < mags.size(); ++i) logs[i] = std::log(mags[i]);
    std::vector<double> gammas(static_cast<std::size_t>(eta) + 1, 0.0);
    double prefix = logs[0];
    for (int m = 2; m <= eta; ++m) {
        // prefix holds sum of logs over ranks 1..m-1
        gammas[static_cast<std::size_t>(m)] =
            prefix / (m - 1) - logs[static_cast<std::size_t>(m - 1)];
        prefix += logs[static_cast<std::size_t>(m - 1)];
    }
    return gammas;
}

TailEstimate finish_estimate(double gamma, double se, int m, double threshold_mag,
                             std::size_t n, Tail tail, TailMethod method) {
    TailEstimate est;
    est.gamma = gamma;
    est.alpha = gamma > 0.0 ? 1.0 / gamma : std::numeric_limits<double>::infinity();
    est.m = m;
    est.threshold = signed_threshold(threshold_mag, tail);
    est.se_gamma = se;
    est.implied_scale =
        gamma > 0.0 ? (static_cast<double>(m) / static_cast<double>(n)) *
                          std::pow(threshold_mag, est.alpha)
                    : std::numeric_limits<double>::infinity();
    est.tail = tail;
    est.method = method;
    return est;
}

int floor_power(std::size_t n, double exponent) {
    return static_cast<int>(std::floor(std::pow(static_cast<double>(n), exponent) + 1e-9));
}

}  // namespace

TailEstimate hill_estimate(const ReturnSeries& series, int m, Tail tail) {
    if (m < 2) throw std::invalid_argument("hill_estimate: need m >= 2");
    if (static_cast<std::size_t>(m) > series.size())
        throw std::invalid_argument("hill_estimate: m exceeds series length");
    auto mags = tail_magnitudes(series, m, tail);
    double sum = 0;
    double log_thr = std::log(mags[static_cast<std::size_t>(m - 1)]);
    for (int i = 0; i < m - 1; ++i) sum += std::log(mags[static_cast<std::size_t>(i)]);
    double gamma = sum / (m - 1) - log_thr;
    double se = gamma / std::sqrt(static_cast<double>(m));
    return finish_estimate(gamma, se, m, mags[static_cast<std::size_t>(m - 1)],
                           series.size(), tail, TailMethod::Fixed);
}

HillTrace hill_trace(const ReturnSeries& series, int eta, Tail tail) {
    if (eta < 2) throw std::invalid_argument("hill_trace: need eta >= 2");
    if (static_cast<std::size_t>(eta) > series.size())
        throw std::invalid_argument("hill_trace: eta exceeds series length");
    auto mags = tail_magnitudes(series, eta, tail);
    auto gammas = hill_gammas(mags, eta);
    HillTrace trace;
    trace.entries.reserve(static_cast<std::size_t>(eta) - 1);
    for (int m = 2; m <= eta; ++m) {
        double g = gammas[static_cast<std::size_t>(m)];
        trace.entries.push_back({m, g, g / std::sqrt(static_cast<double>(m))});
    }
    return trace;
}

int phillips_threshold(const ReturnSeries& series, Tail tail) {
    const std::size_t n = series.size();
    if (n < 100) throw std::invalid_argument("phillips_threshold: need n >= 100");
    const int m1 = floor_power(n, 2.0 / 3.0);
    const int m2 = floor_power(n, 4.0 / 5.0);
    const double g1 = hill_estimate(series, m1, tail).gamma;
    const double g2 = hill_estimate(series, m2, tail).gamma;
    const double n23 = std::pow(static_cast<double>(n), 2.0 / 3.0);
    int m;
    if (g1 == g2) {
        m = m1;
    } else {
        double lambda = std::pow(
            std::fabs((g1 / std::sqrt(2.0)) *
                      (std::cbrt(static_cast<double>(n)) / static_cast<double>(m2)) /
                      (g1 - g2)),
            2.0 / 3.0);
        m = static_cast<int>(std::lround(lambda * n23));
    }
    const int hi = static_cast<int>(n / 2);
    return std::clamp(m, 2, hi);
}

TailEstimate huisman_estimate(const ReturnSeries& series, int eta, Tail tail) {
    const std::size_t n = series.size();
    if (eta < 10) throw std::invalid_argument("huisman_estimate: need eta >= 10");
    if (static_cast<std::size_t>(eta) > n / 2)
        throw std::invalid_argument("huisman_estimate: eta exceeds n/2");

    auto mags = tail_magnitudes(series, eta, tail);
    auto gammas = hill_gammas(mags, eta);

    // WLS of gamma(m) = b0 + b1*m, rows scaled by sqrt(m) (weight w = m).
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (int m = 2; m <= eta; ++m) {
        double w = static_cast<double>(m);
        double x = static_cast<double>(m);
        double y = gammas[static_cast<std::size_t>(m)];
        sw += w;
        swx += w * x;
        swy += w * y;
        swxx += w * x * x;
        swxy += w * x * y;
    }
    double det = sw * swxx - swx * swx;
    if (!(det > 0))
        throw EstimationError("huisman_estimate: degenerate trace regression");
    double b1 = (sw * swxy - swx * swy) / det;
    double b0 = (swy - b1 * swx) / sw;
    if (!(b0 > 0))
        throw EstimationError(
            "huisman_estimate: small-sample correction produced a non-positive "
            "tail exponent");

    int k = eta - 1;  // number of regression points
    double rss = 0;
    for (int m = 2; m <= eta; ++m) {
        double r = gammas[static_cast<std::size_t>(m)] - b0 - b1 * m;
        rss += static_cast<double>(m) * r * r;
    }
    double sigma2 = k > 2 ? rss / (k - 2) : 0.0;
    double se_b0 = std::sqrt(sigma2 * swxx / det);

    int m_sel = 2;
    double best = std::numeric_limits<double>::infinity();
    for (int m = 2; m <= eta; ++m) {
        double d = std::fabs(gammas[static_cast<std::size_t>(m)] - b0);
        if (d < best) {
            best = d;
            m_sel = m;
        }
    }

    auto est = finish_estimate(b0, se_b0, m_sel,
                               mags[static_cast<std::size_t>(m_sel - 1)], n, tail,
                               TailMethod::Huisman);
    return est;
}

int default_huisman_eta(int tail_count) {
    return std::max(10, std::min(250, tail_count / 2));
}

FiniteVarianceTest finite_variance_test(const TailEstimate& est) {
    if (!(est.gamma > 0) || !(est.se_gamma > 0))
        throw std::invalid_argument(
            "finite_variance_test: needs a positive gamma estimate with a "
            "positive standard error");
    FiniteVarianceTest t;
    t.se_alpha = est.alpha * est.alpha * est.se_gamma;
    t.z_stat = (est.alpha - 2.0) / t.se_alpha;
    t.finite_variance = t.z_stat > 1.645;
    return t;
}

std::vector<std::pair<double, double>> qq_normal_data(const ReturnSeries& series) {
    auto stats = summary_stats(series);
    std::vector<double> sorted(series.values);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    std::vector<std::pair<double, double>> pairs(n);
    for (std::size_t i = 0; i < n; ++i) {
        double p = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        pairs[i] = {stats.mean + stats.sd * norm_quantile(p), sorted[i]};
    }
    return pairs;
}

}  // namespace tailvar
