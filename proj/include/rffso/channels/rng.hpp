#pragma once

#include <cstdint>
#include <random>

namespace rffso::channels {

// Independent, reproducible stream: (seed, stream_id) fully determines the sequence.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::mt19937_64& engine() { return engine_; }
    double uniform();        // (0, 1)
    double standard_normal();
    double gamma(double shape);  // Gamma(shape, 1)

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

}  // namespace rffso::channels
