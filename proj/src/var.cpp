#include "tailvar/var.hpp"

#include <cmath>
#include <stdexcept>

#include "tailvar/special.hpp"

namespace tailvar {

namespace {

void check_probability(double p) {
    if (!(p > 0.0) || !(p <= 0.5))
        throw std::invalid_argument("var: p must lie in (0, 0.5]");
}

void check_estimate(const TailEstimate& est) {
    if (!(est.gamma > 0.0) || est.m < 2 || !(std::fabs(est.threshold) > 0.0))
        throw std::invalid_argument("var: invalid tail estimate");
}

}  // namespace

VarEstimate evt_var_unconditional(const TailEstimate& est, std::size_t n, double p) {
    check_probability(p);
    check_estimate(est);
    if (n < static_cast<std::size_t>(est.m))
        throw std::invalid_argument("evt_var_unconditional: n smaller than m");

    const double ratio =
        static_cast<double>(est.m) / (static_cast<double>(n) * p);
    VarEstimate v;
    v.p = p;
    v.confidence = 1.0 - p;
    v.horizon_n = 1;
    v.var_pct = std::fabs(est.threshold) * std::pow(ratio, est.gamma);
    v.method = VarMethod::EvtUnconditional;
    v.scale_q = 1.0;
    v.alpha_used = est.alpha;
    v.boundary_p = ratio == 1.0;
    v.interior_p = ratio < 1.0;
    return v;
}

VarEstimate scale_var(const VarEstimate& single, int horizon_n, double alpha) {
    if (single.horizon_n != 1)
        throw std::invalid_argument("scale_var: input must be a single-period estimate");
    if (horizon_n < 1)
        throw std::invalid_argument("scale_var: horizon must be >= 1");
    if (!(alpha > 0.0))
        throw std::invalid_argument("scale_var: alpha must be positive");
    VarEstimate v = single;
    v.horizon_n = horizon_n;
    v.scale_q = std::pow(static_cast<double>(horizon_n), 1.0 / alpha);
    v.var_pct = single.var_pct * v.scale_q;
    v.alpha_used = alpha;
    return v;
}

VarEstimate evt_var_conditional(const GarchFit& fit, const TailEstimate& z_est,
                                std::size_t n, double p, int horizon_n) {
    check_probability(p);
    check_estimate(z_est);
    if (horizon_n < 1)
        throw std::invalid_argument("evt_var_conditional: horizon must be >= 1");
    if (n < static_cast<std::size_t>(z_est.m))
        throw std::invalid_argument("evt_var_conditional: n smaller than m");

    const double ratio =
        static_cast<double>(z_est.m) / (static_cast<double>(n) * p);
    const double z_p = -std::fabs(z_est.threshold) * std::pow(ratio, z_est.gamma);
    const double forecast = fit.mu_next + fit.sigma_next * z_p;

    VarEstimate v;
    v.p = p;
    v.confidence = 1.0 - p;
    v.horizon_n = 1;
    v.method = VarMethod::EvtConditional;
    v.alpha_used = z_est.alpha;
    v.boundary_p = ratio == 1.0;
    v.interior_p = ratio < 1.0;
    v.scale_q = 1.0;
    if (forecast >= 0.0) {
        v.var_pct = 0.0;
        v.zero_loss = true;
    } else {
        v.var_pct = -forecast;
    }
    if (horizon_n > 1) {
        double q = std::pow(static_cast<double>(horizon_n), 1.0 / z_est.alpha);
        v.horizon_n = horizon_n;
        v.scale_q = q;
        v.var_pct *= q;
    }
    return v;
}

VarEstimate gaussian_var_conditional(const GarchFit& fit, double p, int horizon_n) {
    check_probability(p);
    if (horizon_n < 1)
        throw std::invalid_argument("gaussian_var_conditional: horizon must be >= 1");
    const double forecast = fit.mu_next + fit.sigma_next * norm_quantile(p);

    VarEstimate v;
    v.p = p;
    v.confidence = 1.0 - p;
    v.horizon_n = 1;
    v.method = VarMethod::GaussianConditional;
    v.scale_q = 1.0;
    if (forecast >= 0.0) {
        v.var_pct = 0.0;
        v.zero_loss = true;
    } else {
        v.var_pct = -forecast;
    }
    if (horizon_n > 1) {
        double q = std::sqrt(static_cast<double>(horizon_n));
        v.horizon_n = horizon_n;
        v.scale_q = q;
        v.var_pct *= q;
    }
    return v;
}

}  // namespace tailvar
