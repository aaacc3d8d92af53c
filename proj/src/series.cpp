#include "tailvar/series.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tailvar/special.hpp"

namespace tailvar {

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace / CR
        auto b = field.find_first_not_of(" \t\r");
        auto e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_number(const std::string& s, std::size_t row) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("load_series: malformed numeric field '" + s +
                                    "' at data row " + std::to_string(row));
    }
}

void check_labels(const std::vector<std::string>& labels, std::size_t n) {
    if (labels.empty()) return;
    if (labels.size() != n)
        throw std::invalid_argument("series labels must match values in length");
    for (std::size_t i = 1; i < labels.size(); ++i)
        if (!(labels[i - 1] < labels[i]))
            throw std::invalid_argument(
                "series labels must be strictly increasing (row " +
                std::to_string(i + 1) + ": '" + labels[i] + "')");
}

}  // namespace

ReturnSeries make_series(std::vector<double> values,
                         std::vector<std::string> labels) {
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("series values must be finite");
    check_labels(labels, values.size());
    return ReturnSeries{std::move(values), std::move(labels)};
}

ReturnSeries load_series(const std::filesystem::path& path, SeriesColumn column) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("load_series: cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("load_series: empty file " + path.string());

    auto header = split_csv_row(line);
    const std::string wanted = (column == SeriesColumn::Price) ? "price" : "return";
    std::size_t value_col = header.size();
    std::size_t date_col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::string h = header[i];
        std::transform(h.begin(), h.end(), h.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (h == wanted) value_col = i;
        if (h == "date") date_col = i;
    }
    if (value_col == header.size())
        throw std::invalid_argument("load_series: no '" + wanted + "' column in " +
                                    path.string());

    std::vector<double> raw;
    std::vector<std::string> dates;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        ++row;
        auto fields = split_csv_row(line);
        if (fields.size() <= value_col ||
            (date_col < header.size() && fields.size() <= date_col))
            throw std::invalid_argument("load_series: short row " +
                                        std::to_string(row));
        raw.push_back(parse_number(fields[value_col], row));
        if (date_col < header.size()) dates.push_back(fields[date_col]);
    }
    if (raw.size() < 2)
        throw std::invalid_argument("load_series: need at least two data rows");

    if (column == SeriesColumn::Return)
        return make_series(std::move(raw), std::move(dates));

    std::vector<double> returns(raw.size() - 1);
    for (std::size_t t = 1; t < raw.size(); ++t) {
        if (!(raw[t] > 0.0) || !(raw[t - 1] > 0.0))
            throw std::invalid_argument(
                "load_series: non-positive price at data row " + std::to_string(t + 1));
        returns[t - 1] = 100.0 * (std::log(raw[t]) - std::log(raw[t - 1]));
    }
    if (!dates.empty()) dates.erase(dates.begin());
    return make_series(std::move(returns), std::move(dates));
}

SummaryStats summary_stats(const ReturnSeries& series) {
    const auto& x = series.values;
    const std::size_t n = x.size();
    if (n < 4)
        throw std::invalid_argument("summary_stats: need n >= 4");

    double mean = 0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);

    double m2 = 0, m3 = 0, m4 = 0;
    double lo = x[0], hi = x[0];
    for (double v : x) {
        double d = v - mean;
        double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    if (!(m2 > 0))
        throw std::invalid_argument("summary_stats: degenerate (zero variance) series");

    SummaryStats s;
    s.n = n;
    s.mean = mean;
    s.sd = std::sqrt(m2 * static_cast<double>(n) / static_cast<double>(n - 1));
    s.min = lo;
    s.max = hi;
    s.skewness = m3 / std::pow(m2, 1.5);
    s.excess_kurtosis = m4 / (m2 * m2) - 3.0;

    // KS distance against N(mean, sd^2); sup is attained at a sample point,
    // approaching from either side.
    std::vector<double> sorted(x);
    std::sort(sorted.begin(), sorted.end());
    double ks = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double z = (sorted[i] - mean) / s.sd;
        double F = norm_cdf(z);
        double hi_step = static_cast<double>(i + 1) / static_cast<double>(n);
        double lo_step = static_cast<double>(i) / static_cast<double>(n);
        ks = std::max({ks, std::fabs(hi_step - F), std::fabs(F - lo_step)});
    }
    s.ks_stat = ks;
    return s;
}

LjungBoxResult ljung_box(const ReturnSeries& series, int lags, bool squared) {
    const std::size_t n = series.size();
    if (lags < 1)
        throw std::invalid_argument("ljung_box: need lags >= 1");
    if (n <= static_cast<std::size_t>(lags))
        throw std::invalid_argument("ljung_box: need n > lags");

    std::vector<double> x(series.values);
    if (squared)
        for (double& v : x) v *= v;

    double mean = 0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    for (double& v : x) v -= mean;

    double denom = 0;
    for (double v : x) denom += v * v;
    if (!(denom > 0))
        throw std::invalid_argument("ljung_box: degenerate series");

    double q = 0;
    const double nd = static_cast<double>(n);
    for (int j = 1; j <= lags; ++j) {
        double acf = 0;
        for (std::size_t t = static_cast<std::size_t>(j); t < n; ++t)
            acf += x[t] * x[t - j];
        acf /= denom;
        q += acf * acf / (nd - j);
    }
    q *= nd * (nd + 2.0);

    LjungBoxResult r;
    r.lags = lags;
    r.statistic = q;
    r.p_value = 1.0 - chisq_cdf(q, lags);
    return r;
}

}  // namespace tailvar
