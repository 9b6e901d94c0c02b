#pragma once

#include <string>
#include <vector>

#include "rffso/secrecy/scenario.hpp"
#include "rffso/specfun/mellin_barnes.hpp"

namespace rffso::secrecy {

inline constexpr double kClampFlagThreshold = 1e-9;

struct Metric {
    double value = 0.0;         // clamped to [0, 1]
    double raw = 0.0;           // before clamping
    double clamp_excess = 0.0;  // distance of raw outside [0, 1]
    bool clamp_flagged = false; // excess > 1e-9
    std::vector<std::string> notes;
};

struct AsymptoticMetric : Metric {
    // asymptote minus lower bound, computed directly from the omitted poles
    // (no subtraction of two nearly equal probabilities)
    double gap = 0.0;
};

Metric sop1_lower(const Scenario1Config& cfg, const specfun::EvalOptions& opts = {});
AsymptoticMetric sop1_asymptotic(const Scenario1Config& cfg, const specfun::EvalOptions& opts = {});
Metric spsc1(const Scenario1Config& cfg, const specfun::EvalOptions& opts = {});
Metric sop1_exact_quadrature(const Scenario1Config& cfg);

Metric sop2_lower(const Scenario2Config& cfg, const specfun::EvalOptions& opts = {});
AsymptoticMetric sop2_asymptotic(const Scenario2Config& cfg, const specfun::EvalOptions& opts = {});
Metric spsc2(const Scenario2Config& cfg, const specfun::EvalOptions& opts = {});
Metric sop2_exact_quadrature(const Scenario2Config& cfg);

// building blocks, exposed for tests

// int_0^inf g^{z-1} e^{-F g} F_f(phi g) dg / (B3 F^{-z}) for the main FSO link:
// Fox-H integral with Gamma(j4+u) Gamma(-u) Gamma(z - tau u) / (Gamma(j3+u) Gamma(1-u))
specfun::MellinBarnesIntegral q2_kernel(const channels::DggLink& fso, double z, double F, double phi);
// complementary kernels of the SPSC terms
specfun::MellinBarnesIntegral r_ccdf_kernel(const channels::DggLink& fso, double z, double l);  // R1, R3
specfun::MellinBarnesIntegral r_pdf_kernel(const channels::DggLink& fso, double x, double l);   // R2, R4
// G^{de+1, d0}_{se+d0+1, s0+de+1}[(B6/B4)(Ud/(Ue phi))^tau | 1-j4, 1, j5; j6, 0, 1-j3]
specfun::MellinBarnesIntegral scenario2_kernel(const channels::DggLink& main, const channels::DggLink& eve,
                                               double phi);

// Pr{gamma_d0 < phi * gamma_de} = B3 B5 G(...)
double fso_ratio_probability(const channels::DggLink& main, const channels::DggLink& eve, double phi,
                             const specfun::EvalOptions& opts = {});

}  // namespace rffso::secrecy
