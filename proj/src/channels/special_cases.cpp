#include "rffso/channels/special_cases.hpp"

#include "rffso/errors.hpp"

namespace rffso::channels {

EtaMuLink rayleigh(double avg_snr) { return EtaMuLink(kSurrogateEta, 1, avg_snr); }

EtaMuLink nakagami_m(double m, double avg_snr) { return EtaMuLink(kSurrogateEta, m, avg_snr); }

void one_sided_gaussian(double) {
    throw UnsupportedCaseError("one-sided Gaussian needs mu = 0.5; only integer mu is representable");
}

void hoyt(double, double) {
    throw UnsupportedCaseError("Hoyt (Nakagami-q) needs mu = 0.5; only integer mu is representable");
}

DggLink double_weibull(double a1, double a2, double omega1, double omega2, int lambda1, int lambda2, double eps,
                       Detection det, double U) {
    return DggLink({a1, a2, 1.0, 1.0, omega1, omega2, lambda1, lambda2, eps}, det, U);
}

DggLink gamma_gamma(double b1, double b2, double eps, Detection det, double U) {
    return DggLink({1.0, 1.0, b1, b2, 1.0, 1.0, 1, 1, eps}, det, U);
}

DggLink k_distribution(double b1, double eps, Detection det, double U) {
    return DggLink({1.0, 1.0, b1, 1.0, 1.0, 1.0, 1, 1, eps}, det, U);
}

void lognormal() {
    throw UnsupportedCaseError(
        "lognormal turbulence is the a -> 0, b -> infinity limit of the DGG model; it is not reachable "
        "with finite lambda1, lambda2 and finite gamma-function arguments");
}

DggParams turbulence_preset(const std::string& name, double eps) {
    if (name == "st") return {1.86, 1.0, 0.5, 1.8, 1.51, 1.0, 17, 9, eps};
    if (name == "mt") return {2.17, 1.0, 0.55, 2.35, 1.58, 0.97, 28, 13, eps};
    if (name == "wt") return {2.1, 2.1, 4.0, 4.5, 1.07, 1.06, 1, 1, eps};
    throw InvalidParameterError("unknown turbulence preset '" + name + "' (expected st, mt or wt)");
}

}  // namespace rffso::channels
