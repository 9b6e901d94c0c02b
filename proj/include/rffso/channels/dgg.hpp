#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "rffso/channels/rng.hpp"
#include "rffso/specfun/mellin_barnes.hpp"

namespace rffso::channels {

enum class Detection { HD = 1, IMDD = 2 };

inline int detection_exponent(Detection d) { return d == Detection::HD ? 1 : 2; }

struct DggParams {
    double a1 = 1, a2 = 1;
    double b1 = 1, b2 = 1;
    double omega1 = 1, omega2 = 1;
    int lambda1 = 1, lambda2 = 1;
    double eps = 1;  // pointing-error ratio

    bool same_shape(const DggParams& o) const;
};

// FSO hop: double generalized Gamma turbulence with pointing error.
// The closed forms depend on a1 only through lambda1/lambda2 = a1/a2; a nominal a1
// within 2% of a2*lambda1/lambda2 is snapped to that value (see snapped()).
class DggLink {
public:
    DggLink(const DggParams& p, Detection det, double electrical_snr);

    const DggParams& params() const { return p_; }
    Detection detection() const { return det_; }
    int s() const { return s_; }
    double electrical_snr() const { return U_; }
    double effective_a1() const { return a1_eff_; }
    bool snapped() const { return snapped_; }

    double tau() const { return tau_; }
    double log_B1() const { return lnB1_; }
    double log_B2() const { return lnB2_; }
    double log_B3() const { return lnB3_; }
    double log_B4() const { return lnB4_; }
    double t() const { return t_; }
    double zeta() const { return zeta_; }
    const std::vector<double>& psi() const { return psi_; }
    const std::vector<double>& j1() const { return j1_; }
    double j2() const { return j2_; }
    const std::vector<double>& j3() const { return j3_; }
    const std::vector<double>& j4() const { return j4_; }
    int delta() const { return static_cast<int>(j4_.size()); }

    // E[I_x I_y I_p]; the sampler normalises irradiance by it (equals t)
    double mean_irradiance() const { return mean_I_; }

    double pdf(double gamma, const specfun::EvalOptions& opts = {}) const;
    double cdf(double gamma, const specfun::EvalOptions& opts = {}) const;
    double ccdf(double gamma, const specfun::EvalOptions& opts = {}) const;

    // G^{delta,1}_{s+1,delta+1} kernel of the CDF: Gamma(j4+u) Gamma(-u) / (Gamma(j3+u) Gamma(1-u))
    // with argument B4 (gamma/U)^tau; exposed for the secrecy closed forms.
    specfun::MellinBarnesIntegral cdf_integral(double gamma) const;

    // physical sampler: product of two generalized-Gamma irradiances and V^{1/eps^2}
    double sample(RngStream& rng) const;
    std::vector<double> sample(RngStream& rng, std::size_t n) const;
    // inverse-CDF sampler through a tabulated analytic CDF (built once per link)
    double sample_inverse_cdf(RngStream& rng) const;

    std::string describe() const;

private:
    DggParams p_;
    Detection det_;
    int s_;
    double U_;
    double a1_eff_;
    bool snapped_ = false;
    double tau_, lnB1_, lnB2_, lnB3_, lnB4_, t_, zeta_, mean_I_;
    std::vector<double> psi_, j1_, j3_, j4_;
    double j2_;

    // lazily built inverse-CDF table, shared between copies of the same link
    struct Table {
        std::once_flag once;
        std::vector<double> log_gamma, cdf;
    };
    std::shared_ptr<Table> table_;
    const Table& table() const;
};

}  // namespace rffso::channels
