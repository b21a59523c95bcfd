#pragma once

#include <cstdint>
#include <random>

namespace catsim {

// Deterministic random source: mt19937_64 seeded directly, uniforms drawn as
// 53-bit mantissas. Identical seed => identical stream, on any platform.
//
// Monte Carlo loops give each trial its own generator derived from
// (base_seed ^ trial_index), so results do not depend on scheduling.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    static SeededRng for_trial(std::uint64_t base_seed, std::uint64_t trial_index) {
        return SeededRng(base_seed ^ trial_index);
    }

    // Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace catsim
