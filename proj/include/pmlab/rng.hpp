#pragma once

#include <cstdint>

namespace pmlab {

// Counter-based generator: every draw is a pure function of (key, counter),
// so independent streams split off a parent without shared mutable state and
// a batch run is reproducible from one 64-bit seed regardless of scheduling.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(mix(seed + 0x9e3779b97f4a7c15ull) ^
                   (0xbf58476d1ce4e5b9ull * (stream + 1)))) {}

    CounterRng split(std::uint64_t substream) const {
        return CounterRng(key_, substream);
    }

    std::uint64_t next_u64() {
        return mix(key_ + 0x9e3779b97f4a7c15ull * ++counter_);
    }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // inclusive bounds
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next_u64() % span);
    }

    bool coin() { return (next_u64() & 1u) != 0; }

private:
    static std::uint64_t mix(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ull;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebull;
        x ^= x >> 31;
        return x;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace pmlab
