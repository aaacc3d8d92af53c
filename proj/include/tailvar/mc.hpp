#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tailvar/series.hpp"

namespace tailvar {

/// Monte Carlo study configuration: GARCH(1,1) paths with unit-variance
/// standardized t(4) innovations, R_t = sigma_t * Z_t.
struct McConfig {
    double a0 = 0.1;
    double a1 = 0.15;
    double b1 = 0.8;
    std::size_t n = 2000;   // kept observations per path
    int reps = 200;
    std::vector<int> horizons = {1, 2, 4, 5};
    std::uint64_t seed = 1;
    int burn_in = 1000;     // discarded leading observations
};

/// One simulated path. Deterministic in (config.seed, rep_index): each
/// replication draws from its own SplitMix64 substream via inverse-CDF
/// sampling, so results are identical however replications are scheduled.
ReturnSeries simulate_garch_t(const McConfig& config, int rep_index);

/// One (p, horizon) cell of the study report.
struct McCell {
    double p = 0;
    int horizon = 1;
    double mean_pred = 0;   // average predicted quantile across replications
    double sd_pred = 0;     // sd across replications
    double empirical = 0;   // pooled non-overlapping horizon-sum quantile
    std::optional<double> paper_ref;   // published average prediction, when matching
    std::optional<double> paper_true;  // published theoretical value, when matching
    std::vector<double> per_rep;       // per-replication predictions
};

struct McReport {
    McConfig config;
    std::vector<McCell> cells;          // p-major, horizon-minor order
    std::vector<double> alpha_per_rep;  // tail index per successful replication
    int failures = 0;                   // replications whose estimation failed
};

/// The simulation study: per replication, a Huisman lower-tail estimate of
/// the path, power-law quantiles at p in {0.05, 0.01}, and alpha-root
/// scaling to each horizon with the replication's own alpha. The empirical
/// oracle pools non-overlapping horizon sums across successful replications.
/// Replication failures are excluded and counted; more than 10% aborts with
/// EstimationError. Runs replications in parallel under TAILVAR_THREADS.
McReport run_mc(const McConfig& config);

}  // namespace tailvar
