#pragma once

#include <cstdint>

#include "rffso/channels/rng.hpp"
#include "rffso/secrecy/scenario.hpp"

namespace rffso::montecarlo {

struct MCEstimate {
    double value = 0.0;
    double std_error = 0.0;  // sqrt(p(1-p)/n)
    std::uint64_t n_samples = 0;
    std::uint64_t events = 0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
    bool wilson = false;  // interval from the Wilson score (few events)
};

// builds the estimate from a raw count; Wilson interval when value*n < 10
MCEstimate from_count(std::uint64_t events, std::uint64_t n);

enum class FsoSampler { Physical, InverseCdf };

struct McOptions {
    FsoSampler fso_sampler = FsoSampler::Physical;
    bool allow_small_n = false;  // lifts the n >= 1e4 floor (tests only)
};

// single-stream estimators; each sample draws gamma_r0, gamma_d0 and the eavesdropper SNR in that order
MCEstimate estimate_sop1(const secrecy::Scenario1Config& cfg, std::uint64_t n, channels::RngStream& rng,
                         bool exact_event, const McOptions& opt = {});
MCEstimate estimate_sop2(const secrecy::Scenario2Config& cfg, std::uint64_t n, channels::RngStream& rng,
                         bool exact_event, const McOptions& opt = {});
MCEstimate estimate_spsc1(const secrecy::Scenario1Config& cfg, std::uint64_t n, channels::RngStream& rng,
                          const McOptions& opt = {});
MCEstimate estimate_spsc2(const secrecy::Scenario2Config& cfg, std::uint64_t n, channels::RngStream& rng,
                          const McOptions& opt = {});

// event counters (no n floor); the estimators above and the parallel driver share them
std::uint64_t count_sop1(const secrecy::Scenario1Config& cfg, std::uint64_t n, channels::RngStream& rng,
                         bool exact_event, FsoSampler fs);
std::uint64_t count_sop2(const secrecy::Scenario2Config& cfg, std::uint64_t n, channels::RngStream& rng,
                         bool exact_event, FsoSampler fs);
std::uint64_t count_spsc1(const secrecy::Scenario1Config& cfg, std::uint64_t n, channels::RngStream& rng,
                          FsoSampler fs);
std::uint64_t count_spsc2(const secrecy::Scenario2Config& cfg, std::uint64_t n, channels::RngStream& rng,
                          FsoSampler fs);

enum class MetricKind { Sop1, Sop2, Spsc1, Spsc2 };

struct ParallelPlan {
    std::uint64_t seed = 1;
    unsigned streams = 8;  // stream ids offset..offset+streams-1, each with its share of n
    std::uint64_t stream_offset = 0;
    unsigned threads = 0;  // 0: hardware concurrency
    bool exact_event = false;
    McOptions options;
};

// n split over disjoint streams (the first n % streams streams take one extra sample);
// counts are summed as integers, so the result equals running the streams back to back
MCEstimate estimate_parallel(MetricKind metric, const secrecy::Scenario1Config* s1, const secrecy::Scenario2Config* s2,
                             std::uint64_t n, const ParallelPlan& plan);

}  // namespace rffso::montecarlo
