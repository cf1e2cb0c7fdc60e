#ifndef SCOP_RNG_HPP
#define SCOP_RNG_HPP

#include <cstdint>

// Counter-based random numbers: each (seed, stream) pair yields an
// independent deterministic sequence, so per-locus draws do not depend
// on iteration order.

namespace scop {

inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t stream)
        : state_(mix64(seed + 0x9E3779B97F4A7C15ULL * (stream + 1))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    // uniform in the open interval (0,1)
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

} // namespace scop

#endif
