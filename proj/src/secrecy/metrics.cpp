#include "rffso/secrecy/metrics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "rffso/errors.hpp"
#include "rffso/specfun/log_gamma.hpp"
#include "rffso/specfun/meijer_g.hpp"
#include "rffso/specfun/summation.hpp"

namespace rffso::secrecy {

using channels::DggLink;
using channels::EtaMuLink;
using specfun::CompensatedSum;
using specfun::EvalOptions;
using specfun::MellinBarnesIntegral;
using specfun::Pole;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// signed value carried as (sign, log|value|)
struct SignedLog {
    int sign = 1;
    double log = 0.0;
    SignedLog& mul(double v) {
        if (v < 0) sign = -sign;
        log += std::log(std::abs(v));
        return *this;
    }
    SignedLog& add_log(double l) {
        log += l;
        return *this;
    }
    double value() const { return sign * std::exp(log); }
};

Metric finish(double raw, std::vector<std::string> notes = {}) {
    Metric m;
    m.raw = raw;
    m.value = std::clamp(raw, 0.0, 1.0);
    m.clamp_excess = std::abs(raw - m.value);
    m.clamp_flagged = m.clamp_excess > kClampFlagThreshold;
    if (m.clamp_flagged) notes.push_back("clamped to [0,1]; excess " + std::to_string(m.clamp_excess));
    m.notes = std::move(notes);
    return m;
}

double lfact(int n) { return std::lgamma(n + 1.0); }

// left poles u = -j4_p (k = 0) of the leading gamma factors of a kernel whose
// first j4.size() numerator terms are Gamma(j4 + u)
std::vector<Pole> leading_left_poles(const MellinBarnesIntegral& mb, std::size_t count) {
    std::vector<Pole> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back({-mb.num[i].offset / mb.num[i].slope, i, 0, true});
    return out;
}

// abscissa just beyond the selected poles, before the next pole on the same side
double abscissa_past(const MellinBarnesIntegral& mb, const std::vector<Pole>& selected, bool left) {
    double edge = left ? kInf : -kInf;
    for (const auto& p : selected) edge = left ? std::min(edge, p.location) : std::max(edge, p.location);
    double next = left ? -kInf : kInf;
    for (std::size_t i = 0; i < mb.num.size(); ++i) {
        const auto& t = mb.num[i];
        if ((t.slope > 0) != left) continue;
        for (int k = 0; k < 100000; ++k) {
            const double loc = left ? -(t.offset + k) / t.slope : (t.offset + k) / -t.slope;
            const bool selected_pole = std::any_of(selected.begin(), selected.end(),
                                                   [&](const Pole& p) { return p.term == i && p.k == k; });
            if (selected_pole) continue;
            if (left && loc < edge - 1e-9) {
                next = std::max(next, loc);
                break;
            }
            if (!left && loc > edge + 1e-9) {
                next = std::min(next, loc);
                break;
            }
        }
    }
    if (!std::isfinite(next)) return edge + (left ? -0.5 : 0.5);
    return 0.5 * (edge + next);
}

// ---- scenario 1 --------------------------------------------------------

struct Sop1Parts {
    double sum = 0.0;        // sum of weight * (Gamma(z1) - B3 H)
    double asym_sum = 0.0;   // same with H replaced by its leading residues
    double gap = 0.0;        // asym - lower
    std::vector<std::string> notes;
};

Sop1Parts sop1_parts(const Scenario1Config& cfg, const EvalOptions& opts, bool asymptotic) {
    cfg.validate();
    const EtaMuLink& r0 = cfg.rf_main;
    const EtaMuLink& re = cfg.rf_eve;
    const DggLink& fso = cfg.fso_main;
    const double phi = cfg.phi1();
    const double B3 = std::exp(fso.log_B3());

    struct HVal {
        double h = 0, h_inf = 0, remainder = 0;
    };
    std::map<std::tuple<int, int, int>, HVal> cache;
    Sop1Parts out;
    CompensatedSum sum, asym, gap;
    for (int N0 = 1; N0 <= 2; ++N0)
        for (int Ne = 1; Ne <= 2; ++Ne) {
            const double F = phi * r0.l(N0) + re.l(Ne);
            for (int v = 0; v < r0.mu(); ++v)
                for (int w = 0; w < re.mu(); ++w)
                    for (int x = 0; x < r0.mu() - v; ++x) {
                        const int z1 = re.mu() - w + x;
                        auto key = std::make_tuple(N0, Ne, z1);
                        auto it = cache.find(key);
                        if (it == cache.end()) {
                            HVal hv;
                            const MellinBarnesIntegral mb = q2_kernel(fso, z1, F, phi);
                            hv.h = specfun::evaluate(mb, opts).value;
                            if (asymptotic) {
                                const auto poles = leading_left_poles(mb, fso.j4().size());
                                const auto rs = specfun::residue_sum(mb, poles, opts);
                                hv.h_inf = rs.value;
                                if (rs.diag.perturbations > 0) out.notes.insert(out.notes.end(), rs.diag.notes.begin(), rs.diag.notes.end());
                                EvalOptions fine = opts;
                                fine.target_abs_tol = 1e-300;
                                const double c = abscissa_past(mb, poles, true);
                                hv.remainder = specfun::evaluate_shifted(mb, c, poles, fine).value;
                            }
                            it = cache.emplace(key, hv).first;
                        }
                        SignedLog wgt;
                        wgt.mul(r0.coeff_A()).mul(re.coeff_A()).mul(re.X(Ne, w)).mul(r0.Y(N0, v));
                        wgt.add_log(x * std::log(r0.l(N0)) - lfact(x) + x * std::log(phi) - z1 * std::log(F));
                        const double w8 = wgt.value();
                        const double g = std::exp(std::lgamma(static_cast<double>(z1)));
                        sum += w8 * (g - B3 * it->second.h);
                        if (asymptotic) {
                            asym += w8 * (g - B3 * it->second.h_inf);
                            gap += -w8 * B3 * it->second.remainder;
                        }
                    }
        }
    out.sum = sum.value();
    out.asym_sum = asym.value();
    out.gap = gap.value();
    return out;
}

// ---- scenario 2 --------------------------------------------------------

// (1 - F_r0(phi2 - 1)) via the finite sum
double rf_survival_sum(const EtaMuLink& r0, double arg) {
    CompensatedSum acc;
    for (int N = 1; N <= 2; ++N) {
        const double lg = r0.l(N) * arg;
        for (int v = 0; v < r0.mu(); ++v)
            for (int x = 0; x < r0.mu() - v; ++x) {
                const double pois = (lg == 0.0) ? (x == 0 ? 1.0 : 0.0) : std::exp(x * std::log(lg) - lg - lfact(x));
                acc += pois * r0.Y(N, v);
            }
    }
    return r0.coeff_A() * acc.value();
}

}  // namespace

// ---- kernels -----------------------------------------------------------

MellinBarnesIntegral q2_kernel(const DggLink& fso, double z, double F, double phi) {
    MellinBarnesIntegral mb;
    for (double b : fso.j4()) mb.num.push_back({b, 1.0});
    mb.num.push_back({0.0, -1.0});
    mb.num.push_back({z, -fso.tau()});
    for (double a : fso.j3()) mb.den.push_back({a, 1.0});
    mb.den.push_back({1.0, -1.0});
    mb.log_arg = fso.log_B4() + fso.tau() * (std::log(phi) - std::log(fso.electrical_snr()) - std::log(F));
    return mb;
}

MellinBarnesIntegral r_ccdf_kernel(const DggLink& fso, double z, double l) {
    MellinBarnesIntegral mb;
    for (double b : fso.j4()) mb.num.push_back({b, 1.0});
    mb.num.push_back({0.0, 1.0});
    mb.num.push_back({z, -fso.tau()});
    for (double a : fso.j3()) mb.den.push_back({a, 1.0});
    mb.den.push_back({1.0, 1.0});
    mb.log_arg = fso.log_B4() - fso.tau() * (std::log(l) + std::log(fso.electrical_snr()));
    return mb;
}

MellinBarnesIntegral r_pdf_kernel(const DggLink& fso, double x, double l) {
    MellinBarnesIntegral mb;
    for (double b : fso.j4()) mb.num.push_back({b, 1.0});
    mb.num.push_back({x, -fso.tau()});
    for (double a : fso.j3()) mb.den.push_back({a, 1.0});
    mb.log_arg = fso.log_B4() - fso.tau() * (std::log(l) + std::log(fso.electrical_snr()));
    return mb;
}

MellinBarnesIntegral scenario2_kernel(const DggLink& main, const DggLink& eve, double phi) {
    specfun::MeijerGSpec g;
    const int d0 = main.delta(), de = eve.delta();
    g.m = de + 1;
    g.n = d0;
    g.p = eve.s() + d0 + 1;
    g.q = main.s() + de + 1;
    for (double b : main.j4()) g.a_params.push_back(1.0 - b);
    g.a_params.push_back(1.0);
    for (double a : eve.j3()) g.a_params.push_back(a);
    for (double b : eve.j4()) g.b_params.push_back(b);
    g.b_params.push_back(0.0);
    for (double a : main.j3()) g.b_params.push_back(1.0 - a);
    g.argument = 1.0;
    g.validate();
    MellinBarnesIntegral mb = specfun::to_mellin_barnes(g);
    mb.log_arg = eve.log_B4() - main.log_B4() +
                 main.tau() * (std::log(main.electrical_snr()) - std::log(eve.electrical_snr()) - std::log(phi));
    return mb;
}

double fso_ratio_probability(const DggLink& main, const DggLink& eve, double phi, const EvalOptions& opts) {
    const double g = specfun::evaluate(scenario2_kernel(main, eve, phi), opts).value;
    return std::exp(main.log_B3() + eve.log_B3()) * g;
}

// ---- scenario 1 metrics -------------------------------------------------

Metric sop1_lower(const Scenario1Config& cfg, const EvalOptions& opts) {
    auto parts = sop1_parts(cfg, opts, false);
    return finish(1.0 - parts.sum, parts.notes);
}

AsymptoticMetric sop1_asymptotic(const Scenario1Config& cfg, const EvalOptions& opts) {
    auto parts = sop1_parts(cfg, opts, true);
    Metric m = finish(1.0 - parts.asym_sum, parts.notes);
    AsymptoticMetric a;
    static_cast<Metric&>(a) = m;
    a.gap = parts.gap;
    return a;
}

Metric spsc1(const Scenario1Config& cfg, const EvalOptions& opts) {
    cfg.validate();
    const EtaMuLink& r0 = cfg.rf_main;
    const EtaMuLink& re = cfg.rf_eve;
    const DggLink& fso = cfg.fso_main;
    const double B3 = std::exp(fso.log_B3());
    const double tau = fso.tau();

    // R1/R3: B3 l^{-z} Hc(z, l); R2/R4: tau B3 l^{-x} Hp(x, l). Caches keyed by (z, rate index).
    std::map<std::pair<int, int>, double> hc, hp;
    auto rate = [&](int idx) { return idx < 2 ? r0.l(idx + 1) : r0.l((idx - 2) / 2 + 1) + re.l((idx - 2) % 2 + 1); };
    auto get_hc = [&](int z, int idx) {
        auto key = std::make_pair(z, idx);
        auto it = hc.find(key);
        if (it == hc.end())
            it = hc.emplace(key, specfun::evaluate(r_ccdf_kernel(fso, z, rate(idx)), opts).value).first;
        return it->second;
    };
    auto get_hp = [&](int x, int idx) {
        auto key = std::make_pair(x, idx);
        auto it = hp.find(key);
        if (it == hp.end())
            it = hp.emplace(key, specfun::evaluate(r_pdf_kernel(fso, x, rate(idx)), opts).value).first;
        return it->second;
    };

    CompensatedSum part1, part2;
    for (int N0 = 1; N0 <= 2; ++N0) {
        const double l = r0.l(N0);
        for (int v = 0; v < r0.mu(); ++v) {
            const int z2 = r0.mu() - v;
            // R1
            {
                SignedLog c;
                c.mul(r0.coeff_A()).mul(r0.X(N0, v)).add_log(-z2 * std::log(l));
                part1 += c.value() * B3 * get_hc(z2, N0 - 1);
            }
            // R2
            for (int x = 0; x < r0.mu() - v; ++x) {
                SignedLog c;
                c.mul(r0.coeff_A()).mul(r0.Y(N0, v)).add_log(x * std::log(l) - lfact(x) - x * std::log(l));
                part1 += c.value() * tau * B3 * get_hp(x, N0 - 1);
            }
            for (int Ne = 1; Ne <= 2; ++Ne) {
                const int hidx = 2 + 2 * (N0 - 1) + (Ne - 1);
                const double H = l + re.l(Ne);
                for (int w = 0; w < re.mu(); ++w)
                    for (int y = 0; y < re.mu() - w; ++y) {
                        SignedLog base;
                        base.mul(r0.coeff_A()).mul(re.coeff_A()).mul(re.Y(Ne, w));
                        base.add_log(y * std::log(re.l(Ne)) - lfact(y));
                        // R3
                        {
                            const int z3 = z2 + y;
                            SignedLog c = base;
                            c.mul(r0.X(N0, v)).add_log(-z3 * std::log(H));
                            part2 += c.value() * B3 * get_hc(z3, hidx);
                        }
                        // R4
                        for (int x = 0; x < r0.mu() - v; ++x) {
                            const int z4 = x + y;
                            SignedLog c = base;
                            c.mul(r0.Y(N0, v)).add_log(x * std::log(l) - lfact(x) - z4 * std::log(H));
                            part2 += c.value() * tau * B3 * get_hp(z4, hidx);
                        }
                    }
            }
        }
    }
    std::vector<std::string> notes;
    if (std::abs(part1.value() - 1.0) > 1e-8)
        notes.push_back("normalisation term deviates from 1 by " + std::to_string(part1.value() - 1.0));
    return finish(part1.value() - part2.value(), notes);
}

// ---- scenario 2 metrics -------------------------------------------------

Metric sop2_lower(const Scenario2Config& cfg, const EvalOptions& opts) {
    cfg.validate();
    const double phi = cfg.phi2();
    const double w = rf_survival_sum(cfg.rf_main, phi - 1.0);
    const double p = fso_ratio_probability(cfg.fso_main, cfg.fso_eve, phi, opts);
    return finish(1.0 - w * (1.0 - p));
}

AsymptoticMetric sop2_asymptotic(const Scenario2Config& cfg, const EvalOptions& opts) {
    cfg.validate();
    const double phi = cfg.phi2();
    const double w = rf_survival_sum(cfg.rf_main, phi - 1.0);
    const MellinBarnesIntegral mb = scenario2_kernel(cfg.fso_main, cfg.fso_eve, phi);
    // right poles s = j4_p of Gamma(j4_p - s): numerator terms after the de + 1 left ones
    std::vector<Pole> poles;
    const std::size_t first = cfg.fso_eve.j4().size() + 1;
    for (std::size_t i = first; i < first + cfg.fso_main.j4().size(); ++i)
        poles.push_back({mb.num[i].offset, i, 0, false});
    const auto rs = specfun::residue_sum(mb, poles, opts);
    const double b35 = std::exp(cfg.fso_main.log_B3() + cfg.fso_eve.log_B3());
    EvalOptions fine = opts;
    fine.target_abs_tol = 1e-300;
    const double c = abscissa_past(mb, poles, false);
    const double rem = specfun::evaluate_shifted(mb, c, poles, fine).value;

    Metric m = finish(1.0 - w * (1.0 - b35 * rs.value), rs.diag.notes);
    AsymptoticMetric a;
    static_cast<Metric&>(a) = m;
    a.gap = -w * b35 * rem;
    return a;
}

Metric spsc2(const Scenario2Config& cfg, const EvalOptions& opts) {
    cfg.validate();
    return finish(1.0 - fso_ratio_probability(cfg.fso_main, cfg.fso_eve, 1.0, opts));
}

// ---- exact-quadrature oracles ------------------------------------------

namespace {

// integral of f over t = ln(gamma), restricted to where the weight w(t) (a density
// in t that bounds |f|) is not negligible
template <class W, class F>
double integrate_line(W w, F f) {
    constexpr double step = 0.5;
    std::vector<double> ts, ws;
    for (double t = -80.0; t <= 60.0; t += step) {
        ts.push_back(t);
        ws.push_back(w(t));
    }
    const double peak = *std::max_element(ws.begin(), ws.end());
    if (!(peak > 0.0)) throw AccuracyError("exact-quadrature oracle: weight vanishes everywhere", 0.0, kInf);
    std::size_t lo = 0, hi = ws.size() - 1;
    while (lo < hi && ws[lo] < 1e-18 * peak) ++lo;
    while (hi > lo && ws[hi] < 1e-18 * peak) --hi;
    // Boost's Gauss-Kronrod keeps this oracle independent of the contour quadrature
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, ts[lo] - 2.0 * step, ts[hi] + 2.0 * step, 15, 1e-9, &err);
    if (!std::isfinite(v) || err > 1e-8)
        throw AccuracyError("exact-quadrature oracle did not converge", v, err);
    return v;
}

// CDF evaluated through whichever of cdf / 1 - ccdf is not cancelling
template <class L>
double accurate_cdf(const L& link, double x) {
    const double c = link.cdf(x);
    return c < 0.5 ? c : 1.0 - link.ccdf(x);
}

}  // namespace

Metric sop1_exact_quadrature(const Scenario1Config& cfg) {
    cfg.validate();
    const double phi = cfg.phi1();
    const auto& r0 = cfg.rf_main;
    const auto& re = cfg.rf_eve;
    const auto& fso = cfg.fso_main;
    auto weight = [&](double t) {
        const double g = std::exp(t);
        return re.pdf(g) * g;
    };
    // t = ln(gamma); integrand F_d(phi g + phi - 1) f_re(g) g
    auto f = [&](double t) {
        const double dens = weight(t);
        if (dens == 0.0 || !std::isfinite(dens)) return 0.0;
        const double arg = phi * std::exp(t) + phi - 1.0;
        const double fr = accurate_cdf(r0, arg);
        const double ff = accurate_cdf(fso, arg);
        return (fr + ff - fr * ff) * dens;
    };
    return finish(integrate_line(weight, f));
}

Metric sop2_exact_quadrature(const Scenario2Config& cfg) {
    cfg.validate();
    const double phi = cfg.phi2();
    const auto& main = cfg.fso_main;
    const auto& eve = cfg.fso_eve;
    auto weight = [&](double t) {
        const double g = std::exp(t);
        return eve.pdf(g) * g;
    };
    auto f = [&](double t) {
        const double dens = weight(t);
        if (dens == 0.0 || !std::isfinite(dens)) return 0.0;
        return accurate_cdf(main, phi * std::exp(t) + phi - 1.0) * dens;
    };
    const double p = integrate_line(weight, f);
    const double fr = cfg.rf_main.cdf(phi - 1.0);
    return finish(p * (1.0 - fr) + fr);
}

}  // namespace rffso::secrecy
