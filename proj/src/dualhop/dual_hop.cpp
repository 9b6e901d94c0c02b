#include "rffso/dualhop/dual_hop.hpp"

#include <algorithm>
#include <cmath>

#include "rffso/errors.hpp"
#include "rffso/specfun/summation.hpp"

namespace rffso::dualhop {

double min_combine_cdf(const DualHopChannel& ch, double gamma) {
    if (!(gamma >= 0.0)) throw DomainError("min_combine_cdf: gamma must be >= 0");
    if (gamma == 0.0) return 0.0;
    const auto& rf = ch.rf;
    const double ff = ch.fso.cdf(gamma);
    specfun::CompensatedSum acc;
    for (int N = 1; N <= 2; ++N) {
        const double lg = rf.l(N) * gamma;
        for (int v = 0; v < rf.mu(); ++v)
            for (int x = 0; x < rf.mu() - v; ++x)
                acc += std::exp(x * std::log(lg) - lg - std::lgamma(x + 1.0)) * rf.Y(N, v) * (1.0 - ff);
    }
    return std::clamp(1.0 - rf.coeff_A() * acc.value(), 0.0, 1.0);
}

double min_combine_pdf(const DualHopChannel& ch, double gamma) {
    if (!(gamma > 0.0)) throw DomainError("min_combine_pdf: gamma must be > 0");
    const auto& rf = ch.rf;
    const double f_f = ch.fso.pdf(gamma);
    const double ccdf_f = ch.fso.ccdf(gamma);
    specfun::CompensatedSum acc;
    for (int N = 1; N <= 2; ++N) {
        const double lg = rf.l(N) * gamma;
        for (int v = 0; v < rf.mu(); ++v) {
            for (int x = 0; x < rf.mu() - v; ++x)
                acc += f_f * std::exp(x * std::log(lg) - lg - std::lgamma(x + 1.0)) * rf.Y(N, v);
            acc += rf.X(N, v) * std::pow(gamma, rf.mu() - v - 1) * std::exp(-lg) * ccdf_f;
        }
    }
    return std::max(0.0, rf.coeff_A() * acc.value());
}

double instantaneous_sc_scenario1(double gamma_d, double gamma_re) {
    if (!(gamma_d > gamma_re)) return 0.0;
    return std::log2(1.0 + gamma_d) - std::log2(1.0 + gamma_re);
}

double instantaneous_sc_scenario2(double gamma_r0, double gamma_d0, double gamma_de) {
    const double first = 0.5 * std::log2(1.0 + gamma_r0);
    const double second = std::max(0.0, 0.5 * (std::log2(1.0 + gamma_d0) - std::log2(1.0 + gamma_de)));
    return std::min(first, second);
}

}  // namespace rffso::dualhop
