#pragma once
// Gamma-Gamma turbulence with pointing error, written from the textbook densities:
// h = X Y with X ~ Gamma(alpha, 1/alpha), Y ~ Gamma(beta, 1/beta) (unit mean),
// I = h * I_p with I_p = V^{1/eps^2}, V uniform; SNR = U (I / E[I])^s.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

namespace oracle {

struct GammaGammaPointing {
    double alpha, beta, eps;
    int s;
    double U;

    // f_h(h) = 2 (ab)^{(a+b)/2} / (G(a) G(b)) h^{(a+b)/2-1} K_{a-b}(2 sqrt(ab h))
    double turbulence_pdf(double h) const {
        const double ab = alpha * beta;
        const double lg = std::log(2.0) + 0.5 * (alpha + beta) * std::log(ab) - std::lgamma(alpha) -
                          std::lgamma(beta) + (0.5 * (alpha + beta) - 1.0) * std::log(h);
        const double k = boost::math::cyl_bessel_k(alpha - beta, 2.0 * std::sqrt(ab * h));
        return k > 0.0 ? std::exp(lg + std::log(k)) : 0.0;  // far tail: K underflows first
    }

    // f_I(I) = eps^2 I^{eps^2-1} int_I^inf h^{-eps^2} f_h(h) dh
    double irradiance_pdf(double I) const {
        const double e2 = eps * eps;
        boost::math::quadrature::exp_sinh<double> integrator;
        auto f = [&](double u) {
            const double h = I + u;
            return std::pow(h, -e2) * turbulence_pdf(h);
        };
        const double tail = integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-14);
        return e2 * std::pow(I, e2 - 1.0) * tail;
    }

    double mean_irradiance() const { return eps * eps / (1.0 + eps * eps); }

    double snr_pdf(double gamma) const {
        const double I = mean_irradiance() * std::pow(gamma / U, 1.0 / s);
        return irradiance_pdf(I) * I / (s * gamma);
    }
};

}  // namespace oracle
