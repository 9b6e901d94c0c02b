#pragma once

#include <string>

#include "rffso/channels/dgg.hpp"
#include "rffso/channels/eta_mu.hpp"

namespace rffso::channels {

// eta used to realise the eta -> 0 limit of the eta-mu family
inline constexpr double kSurrogateEta = 1e-6;

EtaMuLink rayleigh(double avg_snr);
EtaMuLink nakagami_m(double m, double avg_snr);
[[noreturn]] void one_sided_gaussian(double avg_snr);  // mu = 0.5
[[noreturn]] void hoyt(double q, double avg_snr);      // mu = 0.5

DggLink double_weibull(double a1, double a2, double omega1, double omega2, int lambda1, int lambda2, double eps,
                       Detection det, double U);
DggLink gamma_gamma(double b1, double b2, double eps, Detection det, double U);
// a1 = a2 = b2 = omega1 = omega2 = 1
DggLink k_distribution(double b1, double eps, Detection det, double U);
[[noreturn]] void lognormal();

// "st", "mt", "wt" (eps defaults to 1)
DggParams turbulence_preset(const std::string& name, double eps = 1.0);

}  // namespace rffso::channels
