#include "rffso/montecarlo/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>
#include <vector>

#include "rffso/dualhop/dual_hop.hpp"
#include "rffso/errors.hpp"

namespace rffso::montecarlo {

using channels::DggLink;
using channels::RngStream;
using secrecy::Scenario1Config;
using secrecy::Scenario2Config;

namespace {

constexpr double kZ95 = 1.959963984540054;

double draw_fso(const DggLink& link, RngStream& rng, FsoSampler fs) {
    return fs == FsoSampler::Physical ? link.sample(rng) : link.sample_inverse_cdf(rng);
}

void check_n(std::uint64_t n, const McOptions& opt) {
    if (n == 0) throw InvalidParameterError("monte carlo: n must be positive");
    if (n < 10000 && !opt.allow_small_n) throw InvalidParameterError("monte carlo: n must be at least 1e4");
}

}  // namespace

MCEstimate from_count(std::uint64_t events, std::uint64_t n) {
    if (n == 0 || events > n) throw InvalidParameterError("monte carlo: bad event count");
    MCEstimate e;
    e.n_samples = n;
    e.events = events;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(events) / nn;
    e.value = p;
    e.std_error = std::sqrt(p * (1.0 - p) / nn);
    // normal interval degenerates with a handful of events on either side
    if (std::min(events, n - events) < 10) {
        e.wilson = true;
        const double z2 = kZ95 * kZ95;
        const double den = 1.0 + z2 / nn;
        const double centre = (p + z2 / (2.0 * nn)) / den;
        const double half = kZ95 * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / den;
        e.ci95_low = std::max(0.0, centre - half);
        e.ci95_high = std::min(1.0, centre + half);
    } else {
        e.ci95_low = std::max(0.0, p - kZ95 * e.std_error);
        e.ci95_high = std::min(1.0, p + kZ95 * e.std_error);
    }
    e.ci95_low = std::min(e.ci95_low, p);
    e.ci95_high = std::max(e.ci95_high, p);
    return e;
}

std::uint64_t count_sop1(const Scenario1Config& cfg, std::uint64_t n, RngStream& rng, bool exact_event,
                         FsoSampler fs) {
    const double phi = cfg.phi1();
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double r0 = cfg.rf_main.sample(rng);
        const double d0 = draw_fso(cfg.fso_main, rng, fs);
        const double re = cfg.rf_eve.sample(rng);
        const double gd = std::min(r0, d0);
        const bool out = exact_event ? dualhop::instantaneous_sc_scenario1(gd, re) < cfg.target_rate
                                     : gd <= phi * re;
        hits += out;
    }
    return hits;
}

std::uint64_t count_sop2(const Scenario2Config& cfg, std::uint64_t n, RngStream& rng, bool exact_event,
                         FsoSampler fs) {
    const double phi = cfg.phi2();
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double r0 = cfg.rf_main.sample(rng);
        const double d0 = draw_fso(cfg.fso_main, rng, fs);
        const double de = draw_fso(cfg.fso_eve, rng, fs);
        bool out;
        if (exact_event)
            out = dualhop::instantaneous_sc_scenario2(r0, d0, de) < cfg.target_rate;
        else
            out = r0 < phi - 1.0 || d0 <= phi * de;
        hits += out;
    }
    return hits;
}

std::uint64_t count_spsc1(const Scenario1Config& cfg, std::uint64_t n, RngStream& rng, FsoSampler fs) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double r0 = cfg.rf_main.sample(rng);
        const double d0 = draw_fso(cfg.fso_main, rng, fs);
        const double re = cfg.rf_eve.sample(rng);
        hits += std::min(r0, d0) > re;
    }
    return hits;
}

std::uint64_t count_spsc2(const Scenario2Config& cfg, std::uint64_t n, RngStream& rng, FsoSampler fs) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        // the RF draw keeps the per-sample stream layout identical to sop2
        (void)cfg.rf_main.sample(rng);
        const double d0 = draw_fso(cfg.fso_main, rng, fs);
        const double de = draw_fso(cfg.fso_eve, rng, fs);
        hits += d0 > de;
    }
    return hits;
}

MCEstimate estimate_sop1(const Scenario1Config& cfg, std::uint64_t n, RngStream& rng, bool exact_event,
                         const McOptions& opt) {
    check_n(n, opt);
    cfg.validate();
    return from_count(count_sop1(cfg, n, rng, exact_event, opt.fso_sampler), n);
}

MCEstimate estimate_sop2(const Scenario2Config& cfg, std::uint64_t n, RngStream& rng, bool exact_event,
                         const McOptions& opt) {
    check_n(n, opt);
    cfg.validate();
    return from_count(count_sop2(cfg, n, rng, exact_event, opt.fso_sampler), n);
}

MCEstimate estimate_spsc1(const Scenario1Config& cfg, std::uint64_t n, RngStream& rng, const McOptions& opt) {
    check_n(n, opt);
    cfg.validate();
    return from_count(count_spsc1(cfg, n, rng, opt.fso_sampler), n);
}

MCEstimate estimate_spsc2(const Scenario2Config& cfg, std::uint64_t n, RngStream& rng, const McOptions& opt) {
    check_n(n, opt);
    cfg.validate();
    return from_count(count_spsc2(cfg, n, rng, opt.fso_sampler), n);
}

MCEstimate estimate_parallel(MetricKind metric, const Scenario1Config* s1, const Scenario2Config* s2, std::uint64_t n,
                             const ParallelPlan& plan) {
    check_n(n, plan.options);
    const bool first = metric == MetricKind::Sop1 || metric == MetricKind::Spsc1;
    if (first ? s1 == nullptr : s2 == nullptr)
        throw InvalidParameterError("monte carlo: metric needs the matching scenario config");
    if (first)
        s1->validate();
    else
        s2->validate();
    if (plan.streams == 0) throw InvalidParameterError("monte carlo: need at least one stream");

    const FsoSampler fs = plan.options.fso_sampler;
    auto run_stream = [&](unsigned id) -> std::uint64_t {
        const std::uint64_t share = n / plan.streams + (id < n % plan.streams ? 1 : 0);
        RngStream rng(plan.seed, plan.stream_offset + id);
        switch (metric) {
            case MetricKind::Sop1: return count_sop1(*s1, share, rng, plan.exact_event, fs);
            case MetricKind::Sop2: return count_sop2(*s2, share, rng, plan.exact_event, fs);
            case MetricKind::Spsc1: return count_spsc1(*s1, share, rng, fs);
            case MetricKind::Spsc2: return count_spsc2(*s2, share, rng, fs);
        }
        return 0;
    };

    unsigned threads = plan.threads ? plan.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, plan.streams);
    std::vector<std::uint64_t> counts(plan.streams, 0);
    std::vector<std::future<void>> workers;
    for (unsigned w = 0; w < threads; ++w) {
        workers.push_back(std::async(std::launch::async, [&, w] {
            for (unsigned id = w; id < plan.streams; id += threads) counts[id] = run_stream(id);
        }));
    }
    for (auto& f : workers) f.get();
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    return from_count(total, n);
}

}  // namespace rffso::montecarlo
