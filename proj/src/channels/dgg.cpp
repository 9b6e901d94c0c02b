#include "rffso/channels/dgg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rffso/errors.hpp"
#include "rffso/specfun/delta.hpp"
#include "rffso/specfun/log_gamma.hpp"

namespace rffso::channels {

using specfun::GammaTerm;
using specfun::MellinBarnesIntegral;

namespace {

constexpr double kSnapTolerance = 0.02;
constexpr double kExactTolerance = 1e-9;

double lgam(double x) { return specfun::log_gamma_real(x); }

}  // namespace

bool DggParams::same_shape(const DggParams& o) const {
    return a1 == o.a1 && a2 == o.a2 && b1 == o.b1 && b2 == o.b2 && omega1 == o.omega1 && omega2 == o.omega2 &&
           lambda1 == o.lambda1 && lambda2 == o.lambda2 && eps == o.eps;
}

DggLink::DggLink(const DggParams& p, Detection det, double electrical_snr)
    : p_(p), det_(det), s_(detection_exponent(det)), U_(electrical_snr), table_(std::make_shared<Table>()) {
    for (double v : {p.a1, p.a2, p.b1, p.b2, p.omega1, p.omega2, p.eps})
        if (!(v > 0.0) || !std::isfinite(v)) throw InvalidParameterError("DggLink: a, b, omega, eps must be positive");
    if (p.lambda1 < 1 || p.lambda2 < 1) throw InvalidParameterError("DggLink: lambda1, lambda2 must be positive integers");
    if (p.lambda1 + p.lambda2 > 400) throw InvalidParameterError("DggLink: lambda1 + lambda2 too large");
    if (!(electrical_snr > 0.0) || !std::isfinite(electrical_snr))
        throw InvalidParameterError("DggLink: electrical SNR must be positive");

    const double l1 = p.lambda1, l2 = p.lambda2;
    const double mismatch = std::abs(l1 * p.a2 - l2 * p.a1) / (l1 * p.a2);
    a1_eff_ = p.a1;
    if (mismatch > kExactTolerance) {
        if (mismatch > kSnapTolerance) {
            std::ostringstream os;
            os << "DggLink: lambda1/lambda2 = " << p.lambda1 << "/" << p.lambda2 << " does not match a1/a2 = "
               << p.a1 << "/" << p.a2 << " (relative mismatch " << mismatch << ")";
            throw InvalidParameterError(os.str());
        }
        a1_eff_ = p.a2 * l1 / l2;
        snapped_ = true;
    }

    tau_ = p.a2 * l1;
    const double e2 = p.eps * p.eps;
    psi_ = specfun::delta_expand(p.lambda2, p.b1);
    const auto psi2 = specfun::delta_expand(p.lambda1, p.b2);
    psi_.insert(psi_.end(), psi2.begin(), psi2.end());
    j1_ = {e2 / tau_};
    j1_.insert(j1_.end(), psi_.begin(), psi_.end());
    j2_ = (tau_ + e2) / tau_;
    j3_ = specfun::delta_expand(s_, j2_);
    j4_ = specfun::delta_expand_list(s_, j1_);

    const double ln2pi = std::log(2.0 * std::numbers::pi);
    lnB1_ = std::log(e2) + (p.b1 - 0.5) * std::log(l2) + (p.b2 - 0.5) * std::log(l1) +
            (1.0 - (l1 + l2) / 2.0) * ln2pi - lgam(p.b1) - lgam(p.b2);
    lnB2_ = l2 * std::log(p.b1) + l1 * std::log(p.b2) - l1 * std::log(l1) - l2 * std::log(l2) -
            l2 * std::log(p.omega1) - l1 * std::log(p.omega2);
    double ln_zeta = 0.0;
    for (double x : psi_) ln_zeta += lgam(1.0 / tau_ + x);
    zeta_ = std::exp(ln_zeta);
    const double ln_t = lnB1_ + ln_zeta - std::log(1.0 + e2) - lnB2_ / tau_;
    t_ = std::exp(ln_t);
    const double s = s_;
    lnB3_ = std::log(e2) + (p.b1 - 0.5) * std::log(l2) + (p.b2 - 0.5) * std::log(l1) +
            (1.0 - s * (l1 + l2) / 2.0) * ln2pi + (p.b1 + p.b2 - 2.0) * std::log(s) - std::log(tau_) - lgam(p.b1) -
            lgam(p.b2);
    lnB4_ = s * (lnB2_ + tau_ * ln_t - (l1 + l2) * std::log(s));

    // first moment of the physical irradiance model (with the effective a1)
    mean_I_ = e2 / (1.0 + e2) *
              std::exp(lgam(p.b1 + 1.0 / a1_eff_) - lgam(p.b1) + std::log(p.omega1 / p.b1) / a1_eff_ +
                       lgam(p.b2 + 1.0 / p.a2) - lgam(p.b2) + std::log(p.omega2 / p.b2) / p.a2);
}

MellinBarnesIntegral DggLink::cdf_integral(double gamma) const {
    MellinBarnesIntegral mb;
    for (double b : j4_) mb.num.push_back({b, 1.0});
    mb.num.push_back({0.0, -1.0});
    for (double a : j3_) mb.den.push_back({a, 1.0});
    mb.den.push_back({1.0, -1.0});
    mb.log_arg = lnB4_ + tau_ * std::log(gamma / U_);
    return mb;
}

double DggLink::pdf(double gamma, const specfun::EvalOptions& opts) const {
    if (!(gamma > 0.0)) throw DomainError("dgg_pdf: gamma must be > 0");
    MellinBarnesIntegral mb;
    for (double b : j1_) mb.num.push_back({b, 1.0});
    mb.den.push_back({j2_, 1.0});
    mb.log_arg = lnB2_ + tau_ * std::log(t_) + tau_ / s_ * std::log(gamma / U_);
    const double g = specfun::evaluate(mb, opts).value;
    return std::max(0.0, std::exp(lnB1_) / (s_ * gamma) * g);
}

double DggLink::cdf(double gamma, const specfun::EvalOptions& opts) const {
    if (!(gamma >= 0.0)) throw DomainError("dgg_cdf: gamma must be >= 0");
    if (gamma == 0.0) return 0.0;
    if (std::isinf(gamma)) return 1.0;
    const double g = specfun::evaluate(cdf_integral(gamma), opts).value;
    return std::clamp(std::exp(lnB3_) * g, 0.0, 1.0);
}

double DggLink::ccdf(double gamma, const specfun::EvalOptions& opts) const {
    if (!(gamma >= 0.0)) throw DomainError("dgg_cdf: gamma must be >= 0");
    if (gamma == 0.0) return 1.0;
    if (std::isinf(gamma)) return 0.0;
    // 1 - F = B3 (1/2 pi i) int Phi(u) / u * w^{-u} du on Re u > 0, with 1/u = Gamma(u)/Gamma(1+u)
    MellinBarnesIntegral mb;
    for (double b : j4_) mb.num.push_back({b, 1.0});
    mb.num.push_back({0.0, 1.0});
    for (double a : j3_) mb.den.push_back({a, 1.0});
    mb.den.push_back({1.0, 1.0});
    mb.log_arg = lnB4_ + tau_ * std::log(gamma / U_);
    const double g = specfun::evaluate(mb, opts).value;
    return std::clamp(std::exp(lnB3_) * g, 0.0, 1.0);
}

double DggLink::sample(RngStream& rng) const {
    // X^a ~ Gamma(b, omega/b)
    const double gx = rng.gamma(p_.b1);
    const double gy = rng.gamma(p_.b2);
    const double ix = std::pow(p_.omega1 / p_.b1 * gx, 1.0 / a1_eff_);
    const double iy = std::pow(p_.omega2 / p_.b2 * gy, 1.0 / p_.a2);
    const double ip = std::pow(rng.uniform(), 1.0 / (p_.eps * p_.eps));
    const double i = ix * iy * ip / mean_I_;
    return U_ * (s_ == 1 ? i : i * i);
}

std::vector<double> DggLink::sample(RngStream& rng, std::size_t n) const {
    std::vector<double> out(n);
    for (auto& x : out) x = sample(rng);
    return out;
}

const DggLink::Table& DggLink::table() const {
    std::call_once(table_->once, [this] {
        // bracket the bulk of the distribution, then tabulate on a log grid
        double lo = std::log(U_), hi = std::log(U_);
        while (cdf(std::exp(lo)) > 1e-10 && lo > std::log(U_) - 200) lo -= 2.0;
        while (ccdf(std::exp(hi)) > 1e-10 && hi < std::log(U_) + 200) hi += 1.0;
        const int n = 801;
        auto& t = *table_;
        t.log_gamma.resize(n);
        t.cdf.resize(n);
        for (int i = 0; i < n; ++i) {
            const double lg = lo + (hi - lo) * i / (n - 1);
            t.log_gamma[i] = lg;
            t.cdf[i] = cdf(std::exp(lg));
        }
        for (int i = 1; i < n; ++i) t.cdf[i] = std::max(t.cdf[i], t.cdf[i - 1]);
    });
    return *table_;
}

double DggLink::sample_inverse_cdf(RngStream& rng) const {
    const Table& t = table();
    const double u = rng.uniform();
    auto it = std::lower_bound(t.cdf.begin(), t.cdf.end(), u);
    if (it == t.cdf.begin()) return std::exp(t.log_gamma.front());
    if (it == t.cdf.end()) return std::exp(t.log_gamma.back());
    const std::size_t i = static_cast<std::size_t>(it - t.cdf.begin());
    const double c0 = t.cdf[i - 1], c1 = t.cdf[i];
    const double w = c1 > c0 ? (u - c0) / (c1 - c0) : 0.5;
    return std::exp(t.log_gamma[i - 1] + w * (t.log_gamma[i] - t.log_gamma[i - 1]));
}

std::string DggLink::describe() const {
    std::ostringstream os;
    os << "DGG(a1=" << p_.a1 << (snapped_ ? " [eff " + std::to_string(a1_eff_) + "]" : std::string()) << ", a2="
       << p_.a2 << ", b1=" << p_.b1 << ", b2=" << p_.b2 << ", O1=" << p_.omega1 << ", O2=" << p_.omega2
       << ", l1=" << p_.lambda1 << ", l2=" << p_.lambda2 << ", eps=" << p_.eps << ", s=" << s_ << ", U=" << U_
       << ")";
    return os.str();
}

}  // namespace rffso::channels
