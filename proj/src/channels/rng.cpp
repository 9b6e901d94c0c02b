#include "rffso/channels/rng.hpp"

namespace rffso::channels {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
                      0x9e3779b9u};
    engine_.seed(seq);
}

double RngStream::uniform() {
    // 53-bit mantissa, never 0
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::standard_normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

double RngStream::gamma(double shape) { return std::gamma_distribution<double>(shape, 1.0)(engine_); }

}  // namespace rffso::channels
