#pragma once

#include "rffso/channels/dgg.hpp"
#include "rffso/channels/eta_mu.hpp"

namespace rffso::dualhop {

// DF relaying: end-to-end SNR is min(gamma_r0, gamma_d0)
struct DualHopChannel {
    channels::EtaMuLink rf;
    channels::DggLink fso;
};

// expanded finite-sum form: 1 - A sum (l g)^x/x! e^{-l g} Y (1 - F_f)
double min_combine_cdf(const DualHopChannel& ch, double gamma);
// A sum e^{-l g} [ f_f (l g)^x/x! Y + X g^{mu-v-1} (1 - F_f) ]
double min_combine_pdf(const DualHopChannel& ch, double gamma);

// bits/s/Hz
double instantaneous_sc_scenario1(double gamma_d, double gamma_re);
double instantaneous_sc_scenario2(double gamma_r0, double gamma_d0, double gamma_de);

}  // namespace rffso::dualhop
