#pragma once

#include <functional>
#include <vector>

namespace rffso::specfun {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;     // Kronrod error estimate
    double abs_mass = 0.0;  // integral of |f|, for roundoff floors
    int nodes = 0;
    bool converged = false;
};

// Globally adaptive 7/15-point Gauss-Kronrod on [points.front(), points.back()],
// starting from the panels given by consecutive breakpoints.
// Stops when error <= max(abs_tol, rel_tol*|value|), when the error reaches the
// roundoff floor max(50 eps, roundoff_rel) * abs_mass, or when max_nodes evaluations are used
// (converged = false).
QuadratureResult gauss_kronrod_adaptive(const std::function<double(double)>& f,
                                        const std::vector<double>& points, double abs_tol,
                                        double rel_tol, int max_nodes, double roundoff_rel = 0.0);

}  // namespace rffso::specfun
