// Acceptance gate: every criterion below runs against the library exactly as
// shipped, prints supporting detail, and ends with one [PASS]/[FAIL] line.
// Run all with no arguments or one with --criterion N. Exit 0 iff everything
// requested passed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "reference_tables.hpp"
#include "tailvar/garch.hpp"
#include "tailvar/mc.hpp"
#include "tailvar/rng.hpp"
#include "tailvar/series.hpp"
#include "tailvar/tail.hpp"
#include "tailvar/var.hpp"

using namespace tailvar;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

VarEstimate single_period(double var_pct) {
    VarEstimate v;
    v.horizon_n = 1;
    v.var_pct = var_pct;
    return v;
}

// Exact Pareto(alpha) sample on [1, inf): X = U^(-1/alpha).
ReturnSeries pareto_sample(double alpha, int n, std::uint64_t seed) {
    SplitMix64 rng = substream(seed, 0);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        values.push_back(std::pow(rng.next_uniform(), -1.0 / alpha));
    return make_series(std::move(values));
}

// ---------------------------------------------------------------------------
// 1. Published-table scaling consistency, all three table blocks, < 1 s.

bool criterion1() {
    double t_start = now_seconds();
    int checked = 0, misses = 0;

    for (const auto& row : refdata::kVarTableRows) {
        for (int pi = 0; pi < 2; ++pi) {
            for (int hi = 0; hi < 3; ++hi) {
                int h = refdata::kHorizons[hi];
                struct Block {
                    const char* name;
                    double single, printed, got;
                } blocks[3] = {
                    {"unconditional", row.uncond_single[pi],
                     row.uncond_multi[pi][hi],
                     scale_var(single_period(row.uncond_single[pi]), h,
                               row.alpha_returns)
                         .var_pct},
                    {"conditional", row.cond_single[pi], row.cond_multi[pi][hi],
                     scale_var(single_period(row.cond_single[pi]), h,
                               row.alpha_filtered)
                         .var_pct},
                    {"gaussian", row.gauss_single[pi], row.gauss_multi[pi][hi],
                     row.gauss_single[pi] * std::sqrt(static_cast<double>(h))},
                };
                for (const auto& b : blocks) {
                    ++checked;
                    double diff = std::fabs(b.got - b.printed);
                    if (diff > 0.03) {
                        ++misses;
                        std::printf(
                            "  miss: %s %s p=%s h=%d printed %.4f scaled %.4f "
                            "(diff %.4f)\n",
                            row.contract, b.name, pi == 0 ? "5%" : "0.5%", h,
                            b.printed, b.got, diff);
                    }
                }
            }
        }
    }

    double elapsed = now_seconds() - t_start;
    std::printf("  %d table entries checked, %d outside +/-0.03, %.3fs\n",
                checked, misses, elapsed);
    return misses == 0 && checked == 216 && elapsed < 1.0;
}

// ---------------------------------------------------------------------------
// 2. Reference true-row arithmetic at tail index 4, +/-0.0001.

bool criterion2() {
    int bad = 0;
    for (int pi = 0; pi < 2; ++pi) {
        double base = refdata::kStudyReference[pi][0];
        for (int hi = 0; hi < 3; ++hi) {
            int h = refdata::kHorizons[hi];
            double got = scale_var(single_period(base), h, 4.0).var_pct;
            double want = refdata::kStudyReference[pi][hi + 1];
            double diff = std::fabs(got - want);
            std::printf("  %.4f * %d^(1/4) = %.4f vs %.4f (diff %.6f)\n", base,
                        h, got, want, diff);
            if (diff > 1e-4) ++bad;
        }
    }
    return bad == 0;
}

// ---------------------------------------------------------------------------
// 3. Simulation-study structure at full scale (n = 2000, 200 reps, seed 42).

bool criterion3() {
    double t_start = now_seconds();
    McConfig c;  // (0.1, 0.15, 0.8), n = 2000 — the study configuration
    c.reps = 200;
    c.seed = 42;
    auto report = run_mc(c);
    double elapsed = now_seconds() - t_start;

    std::printf("  %d replications, %d failures, %.1fs\n", c.reps,
                report.failures, elapsed);
    std::printf("  %-6s %-3s %10s %10s %10s %10s %10s\n", "p", "h", "pred",
                "sd", "empirical", "ref_pred", "ref_true");
    for (const auto& cell : report.cells) {
        std::printf("  %-6.2f %-3d %10.4f %10.4f %10.4f %10.4f %10.4f\n",
                    cell.p, cell.horizon, cell.mean_pred, cell.sd_pred,
                    cell.empirical, cell.paper_ref.value_or(0.0),
                    cell.paper_true.value_or(0.0));
    }

    // (a) overestimation at horizons 4 and 5
    int over = 0, over_total = 0;
    for (const auto& cell : report.cells) {
        if (cell.horizon == 4 || cell.horizon == 5) {
            ++over_total;
            if (cell.mean_pred > cell.empirical) ++over;
        }
    }
    bool a_ok = over == over_total;
    std::printf("  (a) prediction exceeds empirical at h in {4,5}: %d/%d %s\n",
                over, over_total, a_ok ? "" : "<- NOT the published direction");

    // (b) relative error grows moving to the deeper probability level
    double rel[2] = {0, 0};
    int cnt[2] = {0, 0};
    for (const auto& cell : report.cells) {
        int pi = cell.p == 0.05 ? 0 : 1;
        rel[pi] += std::fabs(cell.mean_pred / cell.empirical - 1.0);
        ++cnt[pi];
    }
    rel[0] /= cnt[0];
    rel[1] /= cnt[1];
    bool b_ok = rel[1] >= rel[0];
    std::printf("  (b) mean relative error: p=0.05 %.4f, p=0.01 %.4f\n", rel[0],
                rel[1]);

    // (c) single-period prediction within 15% of the pooled empirical
    double base_ratio = 0;
    for (const auto& cell : report.cells)
        if (cell.p == 0.05 && cell.horizon == 1)
            base_ratio = cell.mean_pred / cell.empirical - 1.0;
    bool c_ok = std::fabs(base_ratio) <= 0.15;
    std::printf("  (c) single-period p=0.05 prediction vs empirical: %+.2f%%\n",
                100.0 * base_ratio);

    bool time_ok = elapsed < 120.0;
    std::printf("  clauses: (a) %s  (b) %s  (c) %s  runtime %s\n",
                a_ok ? "pass" : "FAIL", b_ok ? "pass" : "FAIL",
                c_ok ? "pass" : "FAIL", time_ok ? "pass" : "FAIL");
    return a_ok && b_ok && c_ok && time_ok;
}

// ---------------------------------------------------------------------------
// 4. Tail estimators on exact Pareto samples, 200 seeds per tail index.

bool criterion4() {
    const int n = 10000;
    const int seeds = 200;
    const int m_hill = static_cast<int>(std::pow(n, 2.0 / 3.0));  // 464
    bool all_ok = true;

    for (double alpha : {2.0, 3.0, 4.0}) {
        int hill_cover = 0, huisman_closer = 0;
        for (int s = 0; s < seeds; ++s) {
            auto series = pareto_sample(alpha, n, 1000 * alpha + s);
            auto hill = hill_estimate(series, m_hill, Tail::Upper);
            if (std::fabs(hill.gamma - 1.0 / alpha) <= 3.0 * hill.se_gamma)
                ++hill_cover;

            auto deep = hill_estimate(series, n / 2, Tail::Upper);
            auto huis = huisman_estimate(series, default_huisman_eta(n),
                                         Tail::Upper);
            if (std::fabs(huis.gamma - 1.0 / alpha) <
                std::fabs(deep.gamma - 1.0 / alpha))
                ++huisman_closer;
        }
        bool cover_ok = hill_cover >= static_cast<int>(0.95 * seeds);
        bool closer_ok = huisman_closer >= static_cast<int>(0.70 * seeds);
        std::printf(
            "  alpha=%.0f: Hill within 3se at m=%d: %d/%d (need >=190)%s; "
            "Huisman closer than Hill at m=%d: %d/%d (need >=140)%s\n",
            alpha, m_hill, hill_cover, seeds, cover_ok ? "" : " FAIL", n / 2,
            huisman_closer, seeds, closer_ok ? "" : " FAIL");
        all_ok = all_ok && cover_ok && closer_ok;
    }
    if (!all_ok)
        std::printf(
            "  note: on EXACT Pareto data the deep-threshold Hill estimator is "
            "unbiased with se ~ gamma/sqrt(n/2), so a bias correction cannot "
            "beat it; the regression intercept only wins on curved tails\n");
    return all_ok;
}

// ---------------------------------------------------------------------------
// 5. Parameter recovery and residual whiteness at n = 5000, 50 seeds.

bool criterion5() {
    McConfig c;
    c.n = 5000;
    c.seed = 101;
    const GarchParams truth{0.0, 0.0, 0.1, 0.15, 0.8, 4};
    const double truth_vec[5] = {truth.c, truth.phi, truth.a0, truth.a1,
                                 truth.b1};
    const int seeds = 50;

    int recovered = 0, white = 0, fitted = 0;
    for (int s = 0; s < seeds; ++s) {
        auto series = simulate_garch_t(c, s);
        GarchFit fit;
        try {
            fit = garch_fit(series, Innovations::StudentT4);
        } catch (const std::exception& e) {
            std::printf("  seed %d: fit failed (%s)\n", s, e.what());
            continue;
        }
        ++fitted;

        const double est[5] = {fit.params.c, fit.params.phi, fit.params.a0,
                               fit.params.a1, fit.params.b1};
        bool ok = true;
        for (int i = 0; i < 5; ++i) {
            double tol = std::max(3.0 * fit.param_se[i],
                                  0.20 * std::fabs(truth_vec[i]));
            if (std::fabs(est[i] - truth_vec[i]) > tol) ok = false;
        }
        if (ok) ++recovered;

        auto z = make_series(fit.z);
        if (ljung_box(z, 12, false).p_value > 0.05 &&
            ljung_box(z, 12, true).p_value > 0.05)
            ++white;
    }

    bool recover_ok = recovered >= static_cast<int>(0.90 * seeds);
    bool white_ok = white >= static_cast<int>(0.90 * seeds);
    std::printf(
        "  fits converged: %d/%d; parameters within max(3SE, 20%%): %d/%d "
        "(need >=45)%s\n",
        fitted, seeds, recovered, seeds, recover_ok ? "" : " FAIL");
    std::printf("  Ljung-Box(12) p>0.05 on z AND z^2: %d/%d (need >=45)%s\n",
                white, seeds, white_ok ? "" : " FAIL");
    if (!white_ok)
        std::printf(
            "  note: the squared-residual test is oversized under t(4) - z^2 "
            "has an infinite fourth moment, so its sample autocorrelations are "
            "overdispersed against the chi-square null; the TRUE parameters "
            "pass the same joint test at only ~85%%\n");
    return recover_ok && white_ok;
}

// ---------------------------------------------------------------------------
// 6. Log-moment integral: sign and agreement with brute-force Monte Carlo.

bool criterion6() {
    GarchParams p;
    p.a0 = 0.1;
    p.a1 = 0.15;
    p.b1 = 0.8;
    auto chk = stationarity_check(p);
    bool negative = chk.eq12_integral < 0.0;

    SplitMix64 rng = substream(987, 0);
    const std::size_t draws = 10000000;
    double sum = 0;
    for (std::size_t i = 0; i < draws; ++i) {
        double z = rng.next_std_t4();
        sum += std::log(p.a1 * z * z + p.b1);
    }
    double mc = sum / static_cast<double>(draws);
    double diff = std::fabs(mc - chk.eq12_integral);

    std::printf(
        "  quadrature E[ln(0.15 Z^2 + 0.8)] = %.6f (strictly negative: %s)\n",
        chk.eq12_integral, negative ? "yes" : "NO");
    std::printf("  1e7-draw Monte Carlo          = %.6f (diff %.2e, need "
                "<= 1e-3)\n",
                mc, diff);
    return negative && diff <= 1e-3;
}

// ---------------------------------------------------------------------------
// 7. Gaussian-vs-EVT ordering at the 99.5% level, 100 seeds.

bool criterion7() {
    McConfig c;
    c.n = 2000;
    c.seed = 55;
    const int seeds = 100;
    int evt_higher = 0, fitted = 0;
    bool ordering_ok = true;

    for (int s = 0; s < seeds; ++s) {
        auto series = simulate_garch_t(c, s);
        try {
            auto fit_t = garch_fit(series, Innovations::StudentT4);
            auto fit_n = garch_fit(series, Innovations::Normal);
            ++fitted;

            auto z = make_series(fit_t.z);
            int negatives = 0;
            for (double v : z.values)
                if (v < 0.0) ++negatives;
            auto z_est =
                huisman_estimate(z, default_huisman_eta(negatives), Tail::Lower);

            auto evt = evt_var_conditional(fit_t, z_est, series.size(), 0.005, 1);
            auto gauss = gaussian_var_conditional(fit_n, 0.005, 1);
            if (gauss.var_pct < evt.var_pct) ++evt_higher;

            if (z_est.alpha > 2.0) {
                for (int h : {2, 4, 5}) {
                    double root = std::sqrt(static_cast<double>(h));
                    double power = std::pow(static_cast<double>(h),
                                            1.0 / z_est.alpha);
                    if (!(root > power)) {
                        ordering_ok = false;
                        std::printf("  ordering violated: h=%d alpha=%.3f\n", h,
                                    z_est.alpha);
                    }
                }
            }
        } catch (const std::exception& e) {
            std::printf("  seed %d: %s\n", s, e.what());
        }
    }

    bool rate_ok = evt_higher >= 90;
    std::printf(
        "  fits: %d/%d; Gaussian 99.5%% VaR below EVT: %d/%d (need >= 90)%s\n",
        fitted, seeds, evt_higher, seeds, rate_ok ? "" : " FAIL");
    std::printf("  sqrt(h) > h^(1/alpha) for every fitted alpha > 2: %s\n",
                ordering_ok ? "yes" : "VIOLATED");
    return rate_ok && ordering_ok;
}

// ---------------------------------------------------------------------------
// 8. Module invariants, re-asserted exhaustively.

bool criterion8() {
    int bad = 0;

    // Hill scale invariance: gamma identical under positive rescaling.
    {
        auto series = pareto_sample(3.0, 2000, 7);
        for (double cmul : {0.01, 3.7, 250.0}) {
            std::vector<double> scaled(series.values);
            for (double& v : scaled) v *= cmul;
            auto a = hill_estimate(series, 200, Tail::Upper);
            auto b = hill_estimate(make_series(std::move(scaled)), 200,
                                   Tail::Upper);
            if (std::fabs(a.gamma - b.gamma) > 1e-12) ++bad;
        }
    }

    // Quantile homogeneity: negating and scaling the sample by 4.5 scales
    // the loss quantile by 4.5.
    {
        auto series = pareto_sample(3.0, 2000, 8);
        auto est = hill_estimate(series, 150, Tail::Upper);
        auto as_losses = est;  // mirror the upper-tail fit into loss units
        as_losses.threshold = -est.threshold;
        as_losses.tail = Tail::Lower;

        std::vector<double> neg(series.values);
        for (double& v : neg) v = -4.5 * v;
        auto est2 = hill_estimate(make_series(std::move(neg)), 150, Tail::Lower);

        double v_scaled = evt_var_unconditional(est2, 2000, 0.005).var_pct;
        double v_base = evt_var_unconditional(as_losses, 2000, 0.005).var_pct;
        if (std::fabs(v_scaled / (4.5 * v_base) - 1.0) > 1e-9) ++bad;
    }

    // Filter reconstruction identity on a full path.
    {
        McConfig c;
        c.n = 3000;
        c.seed = 9;
        auto series = simulate_garch_t(c, 0);
        GarchParams p;
        p.c = 0.02;
        p.phi = 0.05;
        p.a0 = 0.1;
        p.a1 = 0.15;
        p.b1 = 0.8;
        auto filt = garch_filter(p, series);
        for (std::size_t t = 0; t < series.size(); ++t) {
            // The first mean is seeded at the stationary AR level.
            double mu = t == 0 ? p.c / (1.0 - p.phi)
                               : p.c + p.phi * series.values[t - 1];
            double rec = mu + filt.sigma[t] * filt.z[t];
            if (std::fabs(rec - series.values[t]) >
                1e-12 * std::max(1.0, std::fabs(series.values[t])))
                ++bad;
        }
    }

    // VaR monotonicity in p and horizon.
    {
        TailEstimate est;
        est.gamma = 0.35;
        est.alpha = 1.0 / 0.35;
        est.m = 80;
        est.threshold = -2.2;
        est.se_gamma = est.gamma / std::sqrt(80.0);
        double prev = 1e300;
        for (double p : {0.001, 0.002, 0.005, 0.01, 0.02, 0.04}) {
            double v = evt_var_unconditional(est, 4000, p).var_pct;
            if (!(v < prev)) ++bad;
            prev = v;
        }
        auto single = evt_var_unconditional(est, 4000, 0.005);
        prev = 0.0;
        for (int h : {1, 2, 3, 4, 5, 10, 20}) {
            double v = scale_var(single, h, est.alpha).var_pct;
            if (!(v > prev)) ++bad;
            prev = v;
        }
    }

    // RNG and pipeline determinism.
    {
        SplitMix64 a = substream(4242, 17), b = substream(4242, 17);
        for (int i = 0; i < 1000; ++i)
            if (a.next_uniform() != b.next_uniform()) ++bad;

        McConfig c;
        c.n = 300;
        c.reps = 4;
        c.seed = 12;
        auto r1 = run_mc(c);
        auto r2 = run_mc(c);
        for (std::size_t i = 0; i < r1.cells.size(); ++i) {
            if (r1.cells[i].mean_pred != r2.cells[i].mean_pred) ++bad;
            if (r1.cells[i].empirical != r2.cells[i].empirical) ++bad;
        }
    }

    std::printf("  invariant violations: %d\n", bad);
    return bad == 0;
}

}  // namespace

int main(int argc, char** argv) {
    int which = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            which = std::atoi(argv[++i]);
    }

    struct Entry {
        int id;
        const char* label;
        bool (*fn)();
    };
    const Entry entries[] = {
        {1, "published multi-period tables reproduced by the scaling law",
         criterion1},
        {2, "reference true-row fourth-root arithmetic", criterion2},
        {3, "simulation-study structure at full scale", criterion3},
        {4, "tail estimators on exact Pareto samples", criterion4},
        {5, "GARCH parameter recovery and residual whiteness", criterion5},
        {6, "log-moment integral vs Monte Carlo", criterion6},
        {7, "Gaussian-vs-EVT ordering at the 99.5% level", criterion7},
        {8, "module invariant property suite", criterion8},
    };

    int failures = 0;
    for (const auto& e : entries) {
        if (which != 0 && e.id != which) continue;
        bool ok = e.fn();
        std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", e.id,
                    e.label);
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
