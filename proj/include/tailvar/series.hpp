#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace tailvar {

/// A return series in percent log-return units: r_t = 100 * ln(P_t / P_{t-1}).
/// Labels, when present, are date strings aligned one-to-one with values and
/// strictly increasing (ISO-8601 dates sort lexicographically).
struct ReturnSeries {
    std::vector<double> values;
    std::vector<std::string> labels;

    std::size_t size() const { return values.size(); }
};

enum class SeriesColumn { Price, Return };

/// Build a validated series from raw values (finite, labels consistent).
ReturnSeries make_series(std::vector<double> values,
                         std::vector<std::string> labels = {});

/// Load a two-column CSV (`date,price` or `date,return`). Price mode converts
/// levels to percent log-returns and drops the first date; return mode takes
/// the column as already being percent log-returns. Throws
/// std::invalid_argument on missing file, missing column, malformed rows,
/// non-positive prices, or fewer than two data rows.
ReturnSeries load_series(const std::filesystem::path& path, SeriesColumn column);

struct SummaryStats {
    std::size_t n = 0;
    double mean = 0;
    double sd = 0;       // sample sd, denominator n-1
    double min = 0;
    double max = 0;
    double skewness = 0;         // moment-based m3 / m2^(3/2)
    double excess_kurtosis = 0;  // m4 / m2^2 - 3
    double ks_stat = 0;  // sup |F_n - Phi((x-mean)/sd)|, normal fitted by moments
};

/// Moment summary plus the Kolmogorov-Smirnov distance from a normal fitted
/// by sample mean/sd. Requires n >= 4 and a non-degenerate series.
SummaryStats summary_stats(const ReturnSeries& series);

struct LjungBoxResult {
    int lags = 0;
    double statistic = 0;
    double p_value = 0;  // chi-square tail with df = lags
};

/// Ljung-Box portmanteau test: Q = n(n+2) * sum_j rho_j^2 / (n-j).
/// With squared=true the test runs on the squared, then demeaned, series
/// (ARCH-effects form). Requires n > lags >= 1.
LjungBoxResult ljung_box(const ReturnSeries& series, int lags, bool squared);

}  // namespace tailvar
