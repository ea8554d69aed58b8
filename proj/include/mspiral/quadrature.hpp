#pragma once

#include <functional>

namespace mspiral {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b] to an absolute
/// tolerance. Throws NumericError naming the location when a subinterval cannot
/// be resolved (typically a nonintegrable singularity).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_depth = 40);

}  // namespace mspiral
