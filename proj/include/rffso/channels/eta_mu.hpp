#pragma once

#include <array>
#include <vector>

#include "rffso/channels/rng.hpp"

namespace rffso::channels {

// eta-mu faded RF hop with integer mu (finite-sum form of the density).
class EtaMuLink {
public:
    // mu must be a positive integer; eta > 0 with |K| >= 1e-9; avg_snr linear > 0
    EtaMuLink(double eta, double mu, double avg_snr);

    double eta() const { return eta_; }
    int mu() const { return mu_; }
    double avg_snr() const { return avg_snr_; }

    double k() const { return k_; }
    double bigK() const { return K_; }
    double coeff_A() const { return A_; }  // k^mu / (K^mu Gamma(mu))
    double X(int N, int v) const { return X_[N - 1][v]; }
    double Y(int N, int v) const { return Y_[N - 1][v]; }
    double l(int N) const { return l_[N - 1]; }

    double pdf(double gamma) const;
    double cdf(double gamma) const;
    double ccdf(double gamma) const;  // 1 - cdf without cancellation

    double sample(RngStream& rng) const;
    std::vector<double> sample(RngStream& rng, std::size_t n) const;

private:
    double eta_;
    int mu_;
    double avg_snr_;
    double k_, K_, A_;
    std::array<std::vector<double>, 2> X_, Y_;
    std::array<double, 2> l_;
};

}  // namespace rffso::channels
