#include "rffso/channels/eta_mu.hpp"

#include <cmath>
#include <string>

#include "rffso/errors.hpp"
#include "rffso/specfun/summation.hpp"

namespace rffso::channels {
namespace {

// x^n e^{-x} / n!
double poisson_term(double x, int n) {
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(n * std::log(x) - x - std::lgamma(n + 1.0));
}

}  // namespace

EtaMuLink::EtaMuLink(double eta, double mu, double avg_snr) : eta_(eta), avg_snr_(avg_snr) {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidParameterError("EtaMuLink: eta must be positive");
    if (!(mu >= 1.0) || mu != std::floor(mu) || mu > 1000)
        throw InvalidParameterError("EtaMuLink: mu must be a positive integer (got " + std::to_string(mu) +
                                    "); the finite-sum density has no non-integer form");
    if (!(avg_snr > 0.0) || !std::isfinite(avg_snr))
        throw InvalidParameterError("EtaMuLink: average SNR must be positive");
    mu_ = static_cast<int>(mu);
    k_ = (2.0 + 1.0 / eta + eta) / 4.0;
    K_ = (1.0 / eta - eta) / 4.0;
    if (std::abs(K_) < 1e-9)
        throw InvalidParameterError("EtaMuLink: eta = 1 makes K = 0 and the finite-sum form singular");
    // k - K and k + K in closed form, no cancellation for extreme eta
    const double kmK = (1.0 + eta) / 2.0;
    const double kpK = (1.0 + 1.0 / eta) / 2.0;
    const double m = mu_;
    A_ = std::pow(k_ / K_, m) / std::tgamma(m);
    l_ = {2.0 * m * kmK / avg_snr, 2.0 * m * kpK / avg_snr};

    for (auto& v : X_) v.assign(mu_, 0.0);
    for (auto& v : Y_) v.assign(mu_, 0.0);
    const double sign_mu = (mu_ % 2 == 0) ? 1.0 : -1.0;
    for (int v = 0; v < mu_; ++v) {
        const double sign_v = (v % 2 == 0) ? 1.0 : -1.0;
        const double lg = std::lgamma(m + v) - std::lgamma(v + 1.0);
        const double base = std::exp(lg + (m - v) * std::log(m) - std::lgamma(m - v) - v * std::log(4.0) -
                                     (m - v) * std::log(avg_snr)) /
                            std::pow(K_, v);
        X_[0][v] = base * sign_v;
        X_[1][v] = base * sign_mu;
        const double ybase = std::exp(lg - (m + v) * std::log(2.0)) / std::pow(K_, v);
        Y_[0][v] = ybase * sign_v / std::pow(kmK, m - v);
        Y_[1][v] = ybase * sign_mu / std::pow(kpK, m - v);
    }
    if (!(l_[0] > 0.0 && l_[1] > 0.0)) throw InvalidParameterError("EtaMuLink: decay rates must be positive");
}

double EtaMuLink::pdf(double gamma) const {
    if (!(gamma >= 0.0)) throw DomainError("eta_mu_pdf: gamma must be >= 0");
    specfun::CompensatedSum acc;
    for (int N = 0; N < 2; ++N)
        for (int v = 0; v < mu_; ++v) {
            const int p = mu_ - v - 1;
            const double g = (p == 0) ? 1.0 : std::pow(gamma, p);
            acc += X_[N][v] * g * std::exp(-l_[N] * gamma);
        }
    return std::max(0.0, A_ * acc.value());
}

double EtaMuLink::ccdf(double gamma) const {
    if (!(gamma >= 0.0)) throw DomainError("eta_mu_cdf: gamma must be >= 0");
    specfun::CompensatedSum acc;
    for (int N = 0; N < 2; ++N)
        for (int v = 0; v < mu_; ++v)
            for (int x = 0; x < mu_ - v; ++x) acc += poisson_term(l_[N] * gamma, x) * Y_[N][v];
    return std::clamp(A_ * acc.value(), 0.0, 1.0);
}

double EtaMuLink::cdf(double gamma) const {
    if (gamma == 0.0) return 0.0;
    return std::clamp(1.0 - ccdf(gamma), 0.0, 1.0);
}

double EtaMuLink::sample(RngStream& rng) const {
    // in-phase and quadrature powers: each the sum of 2*mu squared unit normals / 2,
    // i.e. Gamma(mu, 1), drawn directly; weighted by eta and 1 and normalised to mean avg_snr
    const double xi = rng.gamma(mu_);
    const double xq = rng.gamma(mu_);
    return avg_snr_ * (eta_ * xi + xq) / (mu_ * (1.0 + eta_));
}

std::vector<double> EtaMuLink::sample(RngStream& rng, std::size_t n) const {
    std::vector<double> out(n);
    for (auto& x : out) x = sample(rng);
    return out;
}

}  // namespace rffso::channels
