#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tailvar/errors.hpp"
#include "tailvar/garch.hpp"
#include "tailvar/mc.hpp"
#include "tailvar/series.hpp"
#include "tailvar/tail.hpp"
#include "tailvar/var.hpp"

namespace {

using nlohmann::json;

// Shortest decimal string that round-trips the double exactly.
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Stdout unless --output names a file.
class OutputTarget {
  public:
    explicit OutputTarget(const std::string& path) {
        if (path.empty()) {
            os_ = &std::cout;
            return;
        }
        file_.open(path);
        if (!file_) throw std::invalid_argument("cannot write " + path);
        os_ = &file_;
    }
    std::ostream& stream() { return *os_; }

  private:
    std::ofstream file_;
    std::ostream* os_ = nullptr;
};

tailvar::SeriesColumn parse_column(const std::string& s) {
    return s == "price" ? tailvar::SeriesColumn::Price
                        : tailvar::SeriesColumn::Return;
}

int count_tail_side(const tailvar::ReturnSeries& series, tailvar::Tail tail) {
    int n = 0;
    for (double v : series.values) {
        if (tail == tailvar::Tail::Lower ? v < 0.0 : v > 0.0) ++n;
    }
    return n;
}

// Tail estimation dispatch shared by `tail`, `var`, and `hillplot` defaults.
tailvar::TailEstimate estimate_tail(const tailvar::ReturnSeries& series,
                                    const std::string& method, int m, int eta,
                                    tailvar::Tail tail) {
    if (method == "fixed") {
        if (m <= 0)
            throw std::invalid_argument("tail method 'fixed' requires --m");
        return tailvar::hill_estimate(series, m, tail);
    }
    if (method == "phillips") {
        int mm = tailvar::phillips_threshold(series, tail);
        return tailvar::hill_estimate(series, mm, tail);
    }
    if (eta <= 0) eta = tailvar::default_huisman_eta(count_tail_side(series, tail));
    return tailvar::huisman_estimate(series, eta, tail);
}

const char* method_name(tailvar::VarMethod m) {
    switch (m) {
        case tailvar::VarMethod::EvtUnconditional: return "evt_unconditional";
        case tailvar::VarMethod::EvtConditional: return "evt_conditional";
        case tailvar::VarMethod::GaussianConditional: return "gaussian";
    }
    return "?";
}

void warn_estimate(const tailvar::VarEstimate& v) {
    if (v.boundary_p)
        std::cerr << "warning: p = m/n at p=" << v.p
                  << "; quantile equals the threshold (no extrapolation)\n";
    if (v.interior_p)
        std::cerr << "warning: p above the tail fraction m/n at p=" << v.p
                  << "; interpolating inside the sample\n";
    if (v.zero_loss)
        std::cerr << "warning: forecast return is nonnegative at p=" << v.p
                  << " h=" << v.horizon_n << "; loss quantile reported as 0\n";
}

// ---- stats -----------------------------------------------------------------

struct StatsOpts {
    std::string input, column = "return", format = "json", output;
    int lags = 12;
};

int run_stats(const StatsOpts& o) {
    auto series = tailvar::load_series(o.input, parse_column(o.column));
    auto s = tailvar::summary_stats(series);
    auto lb_raw = tailvar::ljung_box(series, o.lags, false);
    auto lb_sq = tailvar::ljung_box(series, o.lags, true);

    OutputTarget out(o.output);
    if (o.format == "table") {
        out.stream() << "n               " << s.n << "\n"
                     << "mean            " << fmt(s.mean) << "\n"
                     << "sd              " << fmt(s.sd) << "\n"
                     << "min             " << fmt(s.min) << "\n"
                     << "max             " << fmt(s.max) << "\n"
                     << "skewness        " << fmt(s.skewness) << "\n"
                     << "excess_kurtosis " << fmt(s.excess_kurtosis) << "\n"
                     << "ks_stat         " << fmt(s.ks_stat) << "\n"
                     << "ljung_box(" << o.lags << ")   Q=" << fmt(lb_raw.statistic)
                     << " p=" << fmt(lb_raw.p_value) << "\n"
                     << "ljung_box(" << o.lags << ")^2 Q=" << fmt(lb_sq.statistic)
                     << " p=" << fmt(lb_sq.p_value) << "\n";
        return 0;
    }
    json j{
        {"n", s.n},
        {"mean", s.mean},
        {"sd", s.sd},
        {"min", s.min},
        {"max", s.max},
        {"skewness", s.skewness},
        {"excess_kurtosis", s.excess_kurtosis},
        {"ks_stat", s.ks_stat},
        {"ljung_box",
         json::array({json{{"lags", lb_raw.lags},
                           {"statistic", lb_raw.statistic},
                           {"p_value", lb_raw.p_value},
                           {"squared", false}},
                      json{{"lags", lb_sq.lags},
                           {"statistic", lb_sq.statistic},
                           {"p_value", lb_sq.p_value},
                           {"squared", true}}})},
    };
    out.stream() << j.dump(2) << "\n";
    return 0;
}

// ---- tail ------------------------------------------------------------------

struct TailOpts {
    std::string input, column = "return", tail = "lower", method = "huisman";
    std::string format = "table", output;
    int m = 0, eta = 0;
};

int run_tail(const TailOpts& o) {
    auto series = tailvar::load_series(o.input, parse_column(o.column));
    auto side = o.tail == "upper" ? tailvar::Tail::Upper : tailvar::Tail::Lower;
    auto est = estimate_tail(series, o.method, o.m, o.eta, side);
    auto fv = tailvar::finite_variance_test(est);

    OutputTarget out(o.output);
    if (o.format == "csv") {
        out.stream() << "method,tail,m,gamma,se_gamma,alpha,threshold,"
                        "implied_scale,se_alpha,z_stat,finite_variance\n"
                     << o.method << ',' << o.tail << ',' << est.m << ','
                     << fmt(est.gamma) << ',' << fmt(est.se_gamma) << ','
                     << fmt(est.alpha) << ',' << fmt(est.threshold) << ','
                     << fmt(est.implied_scale) << ',' << fmt(fv.se_alpha) << ','
                     << fmt(fv.z_stat) << ','
                     << (fv.finite_variance ? "true" : "false") << "\n";
        return 0;
    }
    if (o.format == "json") {
        json j{
            {"method", o.method},
            {"tail", o.tail},
            {"m", est.m},
            {"gamma", est.gamma},
            {"se_gamma", est.se_gamma},
            {"alpha", est.alpha},
            {"threshold", est.threshold},
            {"implied_scale", est.implied_scale},
            {"se_alpha", fv.se_alpha},
            {"z_stat", fv.z_stat},
            {"finite_variance", fv.finite_variance},
        };
        out.stream() << j.dump(2) << "\n";
        return 0;
    }
    out.stream() << "method          " << o.method << " (" << o.tail << " tail)\n"
                 << "m               " << est.m << "\n"
                 << "gamma           " << fmt(est.gamma) << "  (se "
                 << fmt(est.se_gamma) << ")\n"
                 << "alpha           " << fmt(est.alpha) << "\n"
                 << "threshold       " << fmt(est.threshold) << "\n"
                 << "implied_scale   " << fmt(est.implied_scale) << "\n"
                 << "finite variance " << (fv.finite_variance ? "yes" : "no")
                 << "  (z " << fmt(fv.z_stat) << ")\n";
    return 0;
}

// ---- fit -------------------------------------------------------------------

struct FitOpts {
    std::string input, column = "return", innovations = "t4";
    std::string format = "table", output, out_model, paths;
};

json model_json(const tailvar::GarchFit& fit) {
    auto chk = tailvar::stationarity_check(fit.params);
    return json{
        {"c", fit.params.c},
        {"phi", fit.params.phi},
        {"a0", fit.params.a0},
        {"a1", fit.params.a1},
        {"b1", fit.params.b1},
        {"df", fit.innovations == tailvar::Innovations::StudentT4 ? 4.0 : 0.0},
        {"loglik", fit.loglik},
        {"mu_next", fit.mu_next},
        {"sigma_next", fit.sigma_next},
        {"n", fit.n},
        {"eq12_integral", chk.eq12_integral},
    };
}

int run_fit(const FitOpts& o) {
    auto series = tailvar::load_series(o.input, parse_column(o.column));
    auto innov = o.innovations == "normal" ? tailvar::Innovations::Normal
                                           : tailvar::Innovations::StudentT4;
    auto fit = tailvar::garch_fit(series, innov);

    if (!o.out_model.empty()) tailvar::save_model(fit, o.out_model);
    if (!o.paths.empty()) {
        std::ofstream ps(o.paths);
        if (!ps) throw std::invalid_argument("cannot write " + o.paths);
        ps << "t,sigma,z\n";
        for (std::size_t t = 0; t < fit.sigma.size(); ++t)
            ps << (t + 1) << ',' << fmt(fit.sigma[t]) << ',' << fmt(fit.z[t])
               << "\n";
    }

    OutputTarget out(o.output);
    if (o.format == "json") {
        out.stream() << model_json(fit).dump(2) << "\n";
        return 0;
    }
    auto chk = tailvar::stationarity_check(fit.params);
    const char* names[5] = {"c", "phi", "a0", "a1", "b1"};
    const double values[5] = {fit.params.c, fit.params.phi, fit.params.a0,
                              fit.params.a1, fit.params.b1};
    out.stream() << "innovations     "
                 << (innov == tailvar::Innovations::StudentT4 ? "t(4)" : "normal")
                 << "\n";
    for (int i = 0; i < 5; ++i)
        out.stream() << names[i] << (std::string("               ").substr(
                            0, 16 - std::string(names[i]).size()))
                     << fmt(values[i]) << "  (se " << fmt(fit.param_se[i])
                     << ")\n";
    out.stream() << "loglik          " << fmt(fit.loglik) << "\n"
                 << "n               " << fit.n << "\n"
                 << "mu_next         " << fmt(fit.mu_next) << "\n"
                 << "sigma_next      " << fmt(fit.sigma_next) << "\n"
                 << "a1+b1           " << fmt(fit.params.a1 + fit.params.b1)
                 << (chk.sum_ok ? "  (< 1)" : "  (NOT < 1)") << "\n"
                 << "log-moment      " << fmt(chk.eq12_integral)
                 << (chk.eq12_ok ? "  (strictly stationary)" : "  (NOT stationary)")
                 << "\n";
    return 0;
}

// ---- var -------------------------------------------------------------------

struct VarOpts {
    std::string mode = "unconditional";
    std::string input, column = "return", model;
    std::string tail_method = "huisman", format = "csv", output;
    int m = 0, eta = 0;
    std::vector<double> probs = {0.05, 0.005};
    std::vector<int> horizons = {1, 2, 4, 5};
};

tailvar::GarchFit fit_from_model(const tailvar::GarchModel& model,
                                 const tailvar::ReturnSeries& series) {
    auto filter = tailvar::garch_filter(model.params, series);
    tailvar::GarchFit fit;
    fit.params = model.params;
    fit.innovations = model.innovations;
    fit.loglik = model.loglik;
    fit.sigma = std::move(filter.sigma);
    fit.z = std::move(filter.z);
    fit.mu_next = filter.mu_next;
    fit.sigma_next = filter.sigma_next;
    fit.n = series.size();
    return fit;
}

int run_var(const VarOpts& o) {
    std::vector<tailvar::VarEstimate> rows;
    std::optional<double> alpha_used;

    if (o.mode == "unconditional") {
        if (o.input.empty())
            throw std::invalid_argument("--mode unconditional requires --input");
        auto series = tailvar::load_series(o.input, parse_column(o.column));
        auto est = estimate_tail(series, o.tail_method, o.m, o.eta,
                                 tailvar::Tail::Lower);
        alpha_used = est.alpha;
        for (double p : o.probs) {
            auto single = tailvar::evt_var_unconditional(est, series.size(), p);
            for (int h : o.horizons)
                rows.push_back(h == 1 ? single
                                      : tailvar::scale_var(single, h, est.alpha));
        }
    } else if (o.mode == "conditional") {
        if (o.input.empty())
            throw std::invalid_argument(
                "--mode conditional requires --input (and optionally --model)");
        auto series = tailvar::load_series(o.input, parse_column(o.column));
        tailvar::GarchFit fit =
            o.model.empty()
                ? tailvar::garch_fit(series, tailvar::Innovations::StudentT4)
                : fit_from_model(tailvar::load_model(o.model), series);
        auto z_series = tailvar::make_series(fit.z);
        auto z_est = estimate_tail(z_series, o.tail_method, o.m, o.eta,
                                   tailvar::Tail::Lower);
        alpha_used = z_est.alpha;
        for (double p : o.probs)
            for (int h : o.horizons)
                rows.push_back(
                    tailvar::evt_var_conditional(fit, z_est, series.size(), p, h));
    } else {  // gaussian
        tailvar::GarchFit fit;
        if (!o.model.empty()) {
            // Only the one-step forecasts matter here; no series needed.
            auto model = tailvar::load_model(o.model);
            fit.params = model.params;
            fit.innovations = model.innovations;
            fit.loglik = model.loglik;
            fit.mu_next = model.mu_next;
            fit.sigma_next = model.sigma_next;
            fit.n = model.n;
        } else {
            if (o.input.empty())
                throw std::invalid_argument(
                    "--mode gaussian requires --input or --model");
            auto series = tailvar::load_series(o.input, parse_column(o.column));
            fit = tailvar::garch_fit(series, tailvar::Innovations::Normal);
        }
        for (double p : o.probs)
            for (int h : o.horizons)
                rows.push_back(tailvar::gaussian_var_conditional(fit, p, h));
    }

    for (const auto& v : rows) warn_estimate(v);

    OutputTarget out(o.output);
    if (o.format == "json") {
        json jrows = json::array();
        for (std::size_t pi = 0; pi < o.probs.size(); ++pi) {
            json cells = json::array();
            for (std::size_t hi = 0; hi < o.horizons.size(); ++hi) {
                const auto& v = rows[pi * o.horizons.size() + hi];
                cells.push_back(json{{"horizon", v.horizon_n},
                                     {"var_pct", v.var_pct},
                                     {"scale_q", v.scale_q}});
            }
            jrows.push_back(json{{"p", o.probs[pi]}, {"cells", cells}});
        }
        json j{{"method", method_name(rows.front().method)},
               {"alpha_used", alpha_used ? json(*alpha_used) : json(nullptr)},
               {"rows", jrows}};
        out.stream() << j.dump(2) << "\n";
        return 0;
    }
    if (o.format == "table") {
        out.stream() << "method " << method_name(rows.front().method);
        if (alpha_used) out.stream() << "  (alpha " << fmt(*alpha_used) << ")";
        out.stream() << "\n      p";
        for (int h : o.horizons) out.stream() << "      h=" << h;
        out.stream() << "\n";
        char buf[32];
        for (std::size_t pi = 0; pi < o.probs.size(); ++pi) {
            std::snprintf(buf, sizeof buf, "%7.4f", o.probs[pi]);
            out.stream() << buf;
            for (std::size_t hi = 0; hi < o.horizons.size(); ++hi) {
                std::snprintf(buf, sizeof buf, "%9.4f",
                              rows[pi * o.horizons.size() + hi].var_pct);
                out.stream() << buf;
            }
            out.stream() << "\n";
        }
        return 0;
    }
    out.stream() << "method,p,horizon,var_pct,scale_q,alpha_used\n";
    for (const auto& v : rows) {
        out.stream() << method_name(v.method) << ',' << fmt(v.p) << ','
                     << v.horizon_n << ',' << fmt(v.var_pct) << ','
                     << fmt(v.scale_q) << ','
                     << (v.alpha_used ? fmt(*v.alpha_used) : "") << "\n";
    }
    return 0;
}

// ---- simulate --------------------------------------------------------------

struct SimOpts {
    tailvar::McConfig config;
    std::string format = "csv", output;
};

int run_simulate(const SimOpts& o) {
    auto report = tailvar::run_mc(o.config);
    if (report.failures > 0)
        std::cerr << "warning: " << report.failures
                  << " replication(s) failed estimation and were excluded\n";

    OutputTarget out(o.output);
    if (o.format == "json") {
        json cells = json::array();
        for (const auto& c : report.cells) {
            cells.push_back(json{
                {"p", c.p},
                {"horizon", c.horizon},
                {"mean_pred", c.mean_pred},
                {"sd_pred", c.sd_pred},
                {"empirical", c.empirical},
                {"paper_ref", c.paper_ref ? json(*c.paper_ref) : json(nullptr)},
                {"paper_true", c.paper_true ? json(*c.paper_true) : json(nullptr)},
                {"per_rep", c.per_rep},
            });
        }
        json j{
            {"config",
             json{{"a0", o.config.a0},
                  {"a1", o.config.a1},
                  {"b1", o.config.b1},
                  {"n", o.config.n},
                  {"reps", o.config.reps},
                  {"horizons", o.config.horizons},
                  {"seed", o.config.seed},
                  {"burn_in", o.config.burn_in}}},
            {"failures", report.failures},
            {"alpha_per_rep", report.alpha_per_rep},
            {"cells", cells},
        };
        out.stream() << j.dump(2) << "\n";
        return 0;
    }
    out.stream() << "p,horizon,mean_pred,sd_pred,empirical,paper_ref\n";
    for (const auto& c : report.cells) {
        out.stream() << fmt(c.p) << ',' << c.horizon << ',' << fmt(c.mean_pred)
                     << ',' << fmt(c.sd_pred) << ',' << fmt(c.empirical) << ','
                     << (c.paper_ref ? fmt(*c.paper_ref) : "") << "\n";
    }
    return 0;
}

// ---- hillplot / qqplot -----------------------------------------------------

struct PlotOpts {
    std::string input, column = "return", tail = "lower", output;
    int eta = 0;
};

int run_hillplot(const PlotOpts& o) {
    auto series = tailvar::load_series(o.input, parse_column(o.column));
    auto side = o.tail == "upper" ? tailvar::Tail::Upper : tailvar::Tail::Lower;
    int eta = o.eta > 0
                  ? o.eta
                  : tailvar::default_huisman_eta(count_tail_side(series, side));
    auto trace = tailvar::hill_trace(series, eta, side);
    OutputTarget out(o.output);
    out.stream() << "m,gamma,se\n";
    for (const auto& e : trace.entries)
        out.stream() << e.m << ',' << fmt(e.gamma) << ',' << fmt(e.se) << "\n";
    return 0;
}

int run_qqplot(const PlotOpts& o) {
    auto series = tailvar::load_series(o.input, parse_column(o.column));
    auto points = tailvar::qq_normal_data(series);
    OutputTarget out(o.output);
    out.stream() << "normal_q,empirical_q\n";
    for (const auto& [q, x] : points)
        out.stream() << fmt(q) << ',' << fmt(x) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tailvar: heavy-tail Value-at-Risk estimation"};
    app.require_subcommand(1);

    const auto formats3 =
        CLI::IsMember({std::string("table"), std::string("csv"), std::string("json")});
    const auto columns =
        CLI::IsMember({std::string("price"), std::string("return")});
    const auto tails = CLI::IsMember({std::string("lower"), std::string("upper")});
    const auto tail_methods = CLI::IsMember(
        {std::string("fixed"), std::string("phillips"), std::string("huisman")});

    StatsOpts stats;
    auto* cmd_stats = app.add_subcommand("stats", "series summary diagnostics");
    cmd_stats->add_option("--input", stats.input, "input CSV")->required();
    cmd_stats->add_option("--column", stats.column)->check(columns);
    cmd_stats->add_option("--lags", stats.lags)->check(CLI::PositiveNumber);
    cmd_stats->add_option("--format", stats.format)
        ->check(CLI::IsMember({std::string("table"), std::string("json")}));
    cmd_stats->add_option("--output", stats.output, "write here instead of stdout");

    TailOpts tail;
    auto* cmd_tail = app.add_subcommand("tail", "power-law tail estimation");
    cmd_tail->add_option("--input", tail.input, "input CSV")->required();
    cmd_tail->add_option("--column", tail.column)->check(columns);
    cmd_tail->add_option("--tail", tail.tail)->check(tails);
    cmd_tail->add_option("--method", tail.method)->check(tail_methods);
    cmd_tail->add_option("--m", tail.m, "threshold count (method fixed)");
    cmd_tail->add_option("--eta", tail.eta, "regression window (method huisman)");
    cmd_tail->add_option("--format", tail.format)->check(formats3);
    cmd_tail->add_option("--output", tail.output);

    FitOpts fit;
    auto* cmd_fit = app.add_subcommand("fit", "AR(1)-GARCH(1,1) maximum likelihood");
    cmd_fit->add_option("--input", fit.input, "input CSV")->required();
    cmd_fit->add_option("--column", fit.column)->check(columns);
    cmd_fit->add_option("--innovations", fit.innovations)
        ->check(CLI::IsMember({std::string("t4"), std::string("normal")}));
    cmd_fit->add_option("--out", fit.out_model, "persist fitted model as JSON");
    cmd_fit->add_option("--paths", fit.paths, "write t,sigma,z CSV");
    cmd_fit->add_option("--format", fit.format)
        ->check(CLI::IsMember({std::string("table"), std::string("json")}));
    cmd_fit->add_option("--output", fit.output);

    VarOpts var;
    auto* cmd_var = app.add_subcommand("var", "Value-at-Risk tables");
    cmd_var->add_option("--mode", var.mode)
        ->check(CLI::IsMember({std::string("unconditional"),
                               std::string("conditional"),
                               std::string("gaussian")}));
    cmd_var->add_option("--input", var.input, "input CSV");
    cmd_var->add_option("--column", var.column)->check(columns);
    cmd_var->add_option("--model", var.model, "fitted model JSON (from `fit --out`)");
    cmd_var->add_option("--tail-method", var.tail_method)->check(tail_methods);
    cmd_var->add_option("--m", var.m);
    cmd_var->add_option("--eta", var.eta);
    cmd_var->add_option("--p", var.probs, "probability levels")
        ->expected(-1)
        ->check(CLI::Range(1e-12, 0.5));
    cmd_var->add_option("--horizons", var.horizons)->expected(-1);
    cmd_var->add_option("--format", var.format)->check(formats3);
    cmd_var->add_option("--output", var.output);

    SimOpts sim;
    auto* cmd_sim = app.add_subcommand("simulate", "GARCH-t(4) simulation study");
    cmd_sim->add_option("--a0", sim.config.a0);
    cmd_sim->add_option("--a1", sim.config.a1);
    cmd_sim->add_option("--b1", sim.config.b1);
    cmd_sim->add_option("--n", sim.config.n);
    cmd_sim->add_option("--reps", sim.config.reps);
    cmd_sim->add_option("--seed", sim.config.seed);
    cmd_sim->add_option("--burn-in", sim.config.burn_in);
    cmd_sim->add_option("--horizons", sim.config.horizons)->expected(-1);
    cmd_sim->add_option("--format", sim.format)
        ->check(CLI::IsMember({std::string("csv"), std::string("json")}));
    cmd_sim->add_option("--output", sim.output);

    PlotOpts hill;
    auto* cmd_hill = app.add_subcommand("hillplot", "threshold-sweep trace CSV");
    cmd_hill->add_option("--input", hill.input, "input CSV")->required();
    cmd_hill->add_option("--column", hill.column)->check(columns);
    cmd_hill->add_option("--tail", hill.tail)->check(tails);
    cmd_hill->add_option("--eta", hill.eta, "largest threshold count");
    cmd_hill->add_option("--output", hill.output);

    PlotOpts qq;
    auto* cmd_qq = app.add_subcommand("qqplot", "normal Q-Q data CSV");
    cmd_qq->add_option("--input", qq.input, "input CSV")->required();
    cmd_qq->add_option("--column", qq.column)->check(columns);
    cmd_qq->add_option("--output", qq.output);

    int rc = 0;
    cmd_stats->callback([&] { rc = run_stats(stats); });
    cmd_tail->callback([&] { rc = run_tail(tail); });
    cmd_fit->callback([&] { rc = run_fit(fit); });
    cmd_var->callback([&] { rc = run_var(var); });
    cmd_sim->callback([&] { rc = run_simulate(sim); });
    cmd_hill->callback([&] { rc = run_hillplot(hill); });
    cmd_qq->callback([&] { rc = run_qqplot(qq); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const tailvar::EstimationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
