#pragma once

#include <functional>

namespace tailvar {

/// Adaptive Simpson integration of f over [a, b] to absolute tolerance tol.
/// Recursion splits until the Richardson error estimate is below the local
/// tolerance budget; depth is capped so pathological integrands terminate.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10);

}  // namespace tailvar
