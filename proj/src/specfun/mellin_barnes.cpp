#include "rffso/specfun/mellin_barnes.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "rffso/errors.hpp"
#include "rffso/specfun/log_gamma.hpp"
#include "rffso/specfun/quadrature.hpp"
#include "rffso/specfun/summation.hpp"

namespace rffso::specfun {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinStrip = 1e-6;
constexpr double kPerturbation = 1e-6;
// tail cut: integrand below exp(-kTailLog) relative to its peak
constexpr double kTailLog = 50.0;

bool near_nonpositive_integer(double x, double tol) {
    const double r = std::round(x);
    return r <= 0.0 && std::abs(x - r) <= tol * std::max(1.0, std::abs(x));
}

// real part of the log-integrand on the real axis; den poles are nudged so the
// function stays finite for the minimiser
double real_log_integrand(const MellinBarnesIntegral& mb, double c) {
    double acc = -c * mb.log_arg;
    for (const auto& t : mb.num) acc += log_gamma_real(t.offset + t.slope * c);
    for (const auto& t : mb.den) {
        double x = t.offset + t.slope * c;
        if (x <= 0.0 && x == std::floor(x)) x += 1e-9;
        acc -= log_gamma_real(x);
    }
    return acc;
}

// distance in u from c to the nearest pole of any numerator term
double nearest_pole_distance(const MellinBarnesIntegral& mb, double c) {
    double d = kInf;
    for (const auto& t : mb.num) {
        const double x = t.offset + t.slope * c;  // poles where x = -k
        const double k = std::max(0.0, std::round(-x));
        d = std::min(d, std::abs(x + k) / std::abs(t.slope));
    }
    return d;
}

// rough size of the terms summed into the log-integrand near the abscissa
double log_magnitude_scale(const MellinBarnesIntegral& mb, double c) {
    double k = std::abs(c * mb.log_arg);
    for (const auto& t : mb.num) k += std::abs(log_gamma_real(t.offset + t.slope * c)) + 1.0;
    for (const auto& t : mb.den) {
        double x = t.offset + t.slope * c;
        if (x <= 0.0 && x == std::floor(x)) x += 1e-9;
        k += std::abs(log_gamma_real(x)) + 1.0;
    }
    return k;
}

double minimise_on(const MellinBarnesIntegral& mb, double a, double b) {
    auto f = [&](double c) { return real_log_integrand(mb, c); };
    boost::uintmax_t iters = 200;
    return boost::math::tools::brent_find_minima(f, a, b, 30, iters).first;
}

double place_abscissa(const MellinBarnesIntegral& mb, double lo, double hi) {
    auto f = [&](double c) { return real_log_integrand(mb, c); };
    if (std::isfinite(lo) && std::isfinite(hi)) {
        const double m = (hi - lo) * 1e-9 + 1e-300;
        return minimise_on(mb, lo + m, hi - m);
    }
    if (!std::isfinite(lo) && !std::isfinite(hi)) return 0.0;
    // one-sided: march away from the finite end until the log-integrand rises
    const double dir = std::isfinite(lo) ? 1.0 : -1.0;
    const double start = std::isfinite(lo) ? lo : hi;
    double step = 1.0;
    double a = start;
    double b = start + dir * step;
    double fb = f(b);
    while (step < 1e9) {
        const double next = b + dir * step * 2.0;
        const double fn = f(next);
        if (fn > fb) {
            a = b - dir * step;
            b = next;
            break;
        }
        a = b;
        b = next;
        fb = fn;
        step *= 2.0;
    }
    if (dir > 0) {
        const double left = std::max(a, start + (b - start) * 1e-9 + 1e-300);
        return minimise_on(mb, left, b);
    }
    const double right = std::min(a, start - (start - b) * 1e-9 - 1e-300);
    return minimise_on(mb, b, right);
}

struct LineIntegral {
    double mantissa = 0.0;  // (1/pi) * integral of Re exp(L - log_scale)
    double log_scale = 0.0;
    double error = 0.0;     // on mantissa
    int nodes = 0;
    bool converged = false;
};

LineIntegral line_integral(const MellinBarnesIntegral& mb, double c, const EvalOptions& opts) {
    LineIntegral out;
    out.log_scale = real_log_integrand(mb, c);
    const double lr = out.log_scale;
    auto g = [&](double y) {
        const std::complex<double> l = log_integrand(mb, {c, y});
        return std::exp(l.real() - lr) * std::cos(l.imag());
    };
    auto log_mag = [&](double y) { return log_integrand(mb, {c, y}).real() - lr; };

    const double d0 = std::min(1.0, nearest_pole_distance(mb, c));
    std::vector<double> pts{0.0};
    for (double f : {0.125, 0.25, 0.5}) pts.push_back(d0 * f);
    double y = d0;
    double peak = 0.0;
    while (true) {
        pts.push_back(y);
        const double lm = log_mag(y);
        peak = std::max(peak, lm);
        if (lm < peak - kTailLog && y >= 1.0) break;
        if (y > 1e7) throw AccuracyError("mellin-barnes: integrand does not decay along the contour", 0.0, kInf);
        y *= 2.0;
    }
    const double scale = std::exp(lr) / std::numbers::pi;
    double abs_tol = 0.0;
    if (std::isfinite(scale)) abs_tol = scale > 0.0 ? opts.target_abs_tol / scale : kInf;
    // the phase Im L is only known to ~eps * (size of the summed log-gammas), which
    // bounds the attainable accuracy once the integrand oscillates
    const double kappa = log_magnitude_scale(mb, c);
    const double floor = 8.0 * std::numeric_limits<double>::epsilon() * kappa;
    const QuadratureResult q =
        gauss_kronrod_adaptive(g, pts, abs_tol, opts.target_rel_tol, opts.max_quadrature_nodes, floor);
    out.mantissa = q.value / std::numbers::pi;
    out.error = q.error / std::numbers::pi;
    out.nodes = q.nodes;
    out.converged = q.converged;
    return out;
}

std::vector<Pole> misplaced_poles(const MellinBarnesIntegral& mb, double c) {
    std::vector<Pole> out;
    for (std::size_t i = 0; i < mb.num.size(); ++i) {
        const auto& t = mb.num[i];
        for (int k = 0;; ++k) {
            const double loc = (t.slope > 0 ? -(t.offset + k) / t.slope : (t.offset + k) / -t.slope);
            const bool wrong = t.slope > 0 ? loc > c : loc < c;
            if (!wrong) break;
            out.push_back({loc, i, k, t.slope > 0});
            if (k > 100000) throw InvalidParameterError("mellin-barnes: contour crosses too many poles");
        }
    }
    return out;
}

double nudge_off_poles(const MellinBarnesIntegral& mb, double c) {
    for (int it = 0; it < 8; ++it) {
        const double d = nearest_pole_distance(mb, c);
        if (d > 1e-7 * std::max(1.0, std::abs(c))) break;
        c += 1e-6 * std::max(1.0, std::abs(c));
    }
    return c;
}

MBResult combine(const LineIntegral& line, const MBResult& corr) {
    MBResult r;
    const double scale = std::exp(line.log_scale);
    r.value = line.mantissa * scale + corr.value;
    r.error = line.error * scale + corr.error;
    r.diag = corr.diag;
    r.diag.log_scale = line.log_scale;
    r.diag.nodes = line.nodes;
    r.diag.error_bound = r.error;
    return r;
}

void check_converged(const LineIntegral& line, const MBResult& r) {
    if (!line.converged)
        throw AccuracyError("mellin-barnes: quadrature node limit reached", r.value, r.error);
}

}  // namespace

void EvalOptions::validate() const {
    if (!(target_abs_tol > 0.0) || !(target_rel_tol > 0.0) || !(pole_separation_tol > 0.0))
        throw InvalidParameterError("EvalOptions: tolerances must be strictly positive");
    if (max_quadrature_nodes < 64) throw InvalidParameterError("EvalOptions: max_quadrature_nodes must be >= 64");
}

Strip pole_strip(const MellinBarnesIntegral& mb) {
    Strip s{-kInf, kInf};
    for (const auto& t : mb.num) {
        if (t.slope > 0)
            s.lo = std::max(s.lo, -t.offset / t.slope);
        else if (t.slope < 0)
            s.hi = std::min(s.hi, t.offset / -t.slope);
    }
    return s;
}

double decay_rate(const MellinBarnesIntegral& mb) {
    double a = 0.0;
    for (const auto& t : mb.num) a += std::abs(t.slope);
    for (const auto& t : mb.den) a -= std::abs(t.slope);
    return 0.5 * a;
}

std::complex<double> log_integrand(const MellinBarnesIntegral& mb, std::complex<double> u) {
    std::complex<double> acc = -u * mb.log_arg;
    for (const auto& t : mb.num) acc += log_gamma_complex(t.offset + t.slope * u);
    for (const auto& t : mb.den) {
        const std::complex<double> z = t.offset + t.slope * u;
        if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
            return {-kInf, 0.0};  // 1/Gamma vanishes
        acc -= log_gamma_complex(z);
    }
    return acc;
}

std::vector<Pole> term_poles(const MellinBarnesIntegral& mb, std::size_t term, int count) {
    std::vector<Pole> out;
    const auto& t = mb.num.at(term);
    for (int k = 0; k < count; ++k) {
        const double loc = t.slope > 0 ? -(t.offset + k) / t.slope : (t.offset + k) / -t.slope;
        out.push_back({loc, term, k, t.slope > 0});
    }
    return out;
}

double pole_contribution(const MellinBarnesIntegral& mb, const Pole& p, const EvalOptions& opts) {
    const double u0 = p.location;
    double lsum = -u0 * mb.log_arg;
    int sign = (p.k % 2 == 0) ? 1 : -1;
    for (std::size_t i = 0; i < mb.num.size(); ++i) {
        if (i == p.term) continue;
        const double x = mb.num[i].offset + mb.num[i].slope * u0;
        if (near_nonpositive_integer(x, opts.pole_separation_tol))
            throw DegenerateParameterError("mellin-barnes: coincident poles at u = " + std::to_string(u0));
        int sg = 1;
        lsum += log_gamma_real(x, &sg);
        sign *= sg;
    }
    for (const auto& t : mb.den) {
        const double x = t.offset + t.slope * u0;
        if (near_nonpositive_integer(x, opts.pole_separation_tol)) return 0.0;
        int sg = 1;
        lsum -= log_gamma_real(x, &sg);
        sign *= sg;
    }
    lsum -= std::lgamma(static_cast<double>(p.k) + 1.0) + std::log(std::abs(mb.num[p.term].slope));
    return sign * std::exp(lsum);
}

MBResult residue_sum(const MellinBarnesIntegral& mb, const std::vector<Pole>& poles, const EvalOptions& opts) {
    MBResult r;
    if (poles.empty()) return r;
    try {
        CompensatedSum acc;
        for (const auto& p : poles) acc += pole_contribution(mb, p, opts);
        r.value = acc.value();
        return r;
    } catch (const DegenerateParameterError&) {
    }
    // find the offending terms: same-side coincidences are perturbed, opposite-side ones are fatal
    std::vector<bool> offending(mb.num.size(), false);
    for (const auto& p : poles) {
        for (std::size_t i = 0; i < mb.num.size(); ++i) {
            if (i == p.term) continue;
            const double x = mb.num[i].offset + mb.num[i].slope * p.location;
            if (!near_nonpositive_integer(x, opts.pole_separation_tol)) continue;
            if ((mb.num[i].slope > 0) != p.left)
                throw DegenerateParameterError("mellin-barnes: left and right poles coincide at u = " +
                                               std::to_string(p.location));
            offending[std::max(i, p.term)] = true;
        }
    }
    double avg = 0.0;
    for (double sgn : {1.0, -1.0}) {
        MellinBarnesIntegral shifted = mb;
        for (std::size_t i = 0; i < mb.num.size(); ++i)
            if (offending[i]) shifted.num[i].offset += sgn * kPerturbation;
        CompensatedSum acc;
        for (const auto& p : poles) {
            Pole q = p;
            const auto& t = shifted.num[p.term];
            q.location = t.slope > 0 ? -(t.offset + p.k) / t.slope : (t.offset + p.k) / -t.slope;
            acc += pole_contribution(shifted, q, opts);
        }
        avg += 0.5 * acc.value();
    }
    r.value = avg;
    r.diag.perturbations = static_cast<int>(std::count(offending.begin(), offending.end(), true));
    r.diag.notes.push_back("coincident poles: offending gamma offsets perturbed by +/-1e-6 and averaged");
    return r;
}

MBResult evaluate_shifted(const MellinBarnesIntegral& mb, double c, const std::vector<Pole>& excluded,
                          const EvalOptions& opts) {
    opts.validate();
    if (!(decay_rate(mb) > 0.0))
        throw InvalidParameterError("mellin-barnes: integrand is not exponentially decaying (c* <= 0)");
    c = nudge_off_poles(mb, c);
    std::vector<Pole> corr;
    for (const auto& p : misplaced_poles(mb, c)) {
        const bool skip = std::any_of(excluded.begin(), excluded.end(),
                                      [&](const Pole& e) { return e.term == p.term && e.k == p.k; });
        if (!skip) corr.push_back(p);
    }
    const MBResult res = residue_sum(mb, corr, opts);
    const LineIntegral line = line_integral(mb, c, opts);
    MBResult r = combine(line, res);
    r.diag.abscissa = c;
    r.diag.residue_corrections = static_cast<int>(corr.size());
    check_converged(line, r);
    return r;
}

MBResult evaluate(const MellinBarnesIntegral& mb, const EvalOptions& opts) {
    opts.validate();
    if (!(decay_rate(mb) > 0.0))
        throw InvalidParameterError("mellin-barnes: integrand is not exponentially decaying (c* <= 0)");
    const Strip s = pole_strip(mb);
    if (s.hi - s.lo > kMinStrip) {
        const double c = place_abscissa(mb, s.lo, s.hi);
        const LineIntegral line = line_integral(mb, c, opts);
        MBResult r = combine(line, MBResult{});
        r.diag.abscissa = c;
        check_converged(line, r);
        return r;
    }
    // narrow or inverted strip: integrate right of every left pole, correct for the
    // right poles left behind
    double next = kInf;
    for (const auto& t : mb.num) {
        if (t.slope >= 0) continue;
        for (int k = 0; k < 100000; ++k) {
            const double loc = (t.offset + k) / -t.slope;
            if (loc > s.lo + kMinStrip) {
                next = std::min(next, loc);
                break;
            }
        }
    }
    const double c = place_abscissa(mb, s.lo, next);
    MBResult r = evaluate_shifted(mb, c, {}, opts);
    r.diag.notes.push_back("narrow pole strip: line moved right with residue corrections");
    return r;
}

}  // namespace rffso::specfun
