#pragma once
// Integrals over (0, inf) of densities with very wide support, via t = ln(gamma).

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

// int_0^inf f(g) dg; the t-range is found by scanning for where g f(g) is non-negligible
inline double integrate_positive(const std::function<double(double)>& f, double* err_out = nullptr) {
    auto w = [&](double t) {
        const double g = std::exp(t);
        return g * f(g);
    };
    constexpr double lo = -80.0, hi = 60.0, step = 0.25;
    double peak = 0.0;
    for (double t = lo; t <= hi; t += step) peak = std::max(peak, std::abs(w(t)));
    if (!(peak > 0.0)) throw std::runtime_error("integrate_positive: zero integrand");
    double a = hi, b = lo;
    for (double t = lo; t <= hi; t += step)
        if (std::abs(w(t)) > 1e-20 * peak) {
            a = std::min(a, t);
            b = std::max(b, t);
        }
    a = std::max(lo, a - 4 * step);
    b = std::min(hi, b + 4 * step);
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(w, a, b, 20, 1e-12, &err);
    if (err_out) *err_out = err;
    return v;
}

}  // namespace oracle
