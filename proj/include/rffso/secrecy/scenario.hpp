#pragma once

#include "rffso/channels/dgg.hpp"
#include "rffso/channels/eta_mu.hpp"

namespace rffso::secrecy {

// Eavesdropper taps the RF hop (S - E1).
struct Scenario1Config {
    channels::EtaMuLink rf_main;
    channels::EtaMuLink rf_eve;
    channels::DggLink fso_main;
    double target_rate = 0.5;  // bits/s/Hz

    double phi1() const;  // 2^rate
    void validate() const;
};

// Eavesdropper taps the FSO hop (R - E2); both FSO links share turbulence and
// pointing-error parameters and may differ in detection and electrical SNR.
struct Scenario2Config {
    channels::EtaMuLink rf_main;
    channels::DggLink fso_main;
    channels::DggLink fso_eve;
    double target_rate = 0.5;

    double phi2() const;  // 2^(2 rate)
    void validate() const;
};

}  // namespace rffso::secrecy
