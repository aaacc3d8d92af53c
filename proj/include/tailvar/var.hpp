#pragma once

#include <cstddef>
#include <optional>

#include "tailvar/garch.hpp"
#include "tailvar/tail.hpp"

namespace tailvar {

enum class VarMethod { EvtUnconditional, EvtConditional, GaussianConditional };

/// A VaR figure in percent-return units (positive = loss magnitude).
struct VarEstimate {
    double p = 0;             // lower-tail probability
    double confidence = 0;    // 1 - p
    int horizon_n = 1;        // holding period in days
    double var_pct = 0;       // loss threshold, percent
    VarMethod method = VarMethod::EvtUnconditional;
    double scale_q = 1;       // multi-period multiplier applied (1 at horizon 1)
    std::optional<double> alpha_used;  // tail index behind scale_q; absent for Gaussian
    bool boundary_p = false;  // p == m/n: estimate collapses to the threshold
    bool interior_p = false;  // p > m/n: formula interpolates inside the threshold
    bool zero_loss = false;   // conditional forecast was a gain; VaR floored at 0
};

/// Tail quantile from a power-law estimate:
///   var_pct = |r_(m)| * (m / (n p))^gamma.
/// Extrapolates beyond the threshold for p < m/n (the regime the method
/// serves); p == m/n collapses to the threshold (boundary_p warning) and
/// p > m/n interpolates inside it (interior_p warning — the empirical
/// quantile is the conventional choice there). Requires a valid estimate
/// with gamma > 0 and 0 < p <= 0.5.
VarEstimate evt_var_unconditional(const TailEstimate& est, std::size_t n, double p);

/// Alpha-root scaling of a single-period estimate to an n-day horizon:
/// var_pct(n) = var_pct(1) * n^(1/alpha). Self-additivity of heavy tails
/// makes this the correct growth law; alpha > 2 implies a multiplier below
/// sqrt(n).
VarEstimate scale_var(const VarEstimate& single, int horizon_n, double alpha);

/// Conditional EVT VaR: the one-step forecast r = mu_next + sigma_next * z_p
/// with z_p the (negative) EVT quantile of the standardized residuals, taken
/// from z_est via the same power-law formula. A nonnegative forecast is
/// reported as zero-loss VaR with a warning flag. Horizons beyond one day
/// scale the whole single-period figure by horizon^(1/alpha_z).
VarEstimate evt_var_conditional(const GarchFit& fit, const TailEstimate& z_est,
                                std::size_t n, double p, int horizon_n);

/// Conditional Gaussian VaR from a normal-innovation fit:
/// var_pct = -(mu_next + sigma_next * Phi^-1(p)), scaled by sqrt(horizon).
VarEstimate gaussian_var_conditional(const GarchFit& fit, double p, int horizon_n);

}  // namespace tailvar
