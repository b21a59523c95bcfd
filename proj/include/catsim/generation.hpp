#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "catsim/cat_state.hpp"
#include "catsim/measurement.hpp"

namespace catsim {

// Beam-splitter chain turning a single-mode cat of amplitude a*sqrt(M) into an
// M-mode channel state. Splitter q (applied first to last, q = 1..M-1) acts on
// modes (q-1, q) with angle arccos(1/sqrt(M+1-q)): each step peels one mode of
// amplitude a off the running remainder.
struct LadderPlan {
    int mode_count;
    std::vector<double> angles;  // application order; size M-1

    static LadderPlan make(int mode_count);
};

// Log-depth cascade of 50:50 splitters for 2^Q modes. Layer l (applied in
// order l = 1..Q) holds pairs (q, q + 2^(l-1)) for q = 1..2^(l-1), doubling
// the number of occupied modes each layer. 0-based indices are stored.
struct TreePlan {
    int depth;  // Q
    std::vector<std::vector<std::pair<int, int>>> layers;

    static TreePlan make(int depth);
    int pair_count() const;
};

// Ladder scheme: M >= 2, alpha != 0. The result equals
// make_channel_state({M, sign, alpha}) up to rounding.
CatState ladder_generate(int mode_count, Complex alpha, Sign sign);

// Tree scheme for a power-of-two mode count 2^Q, Q >= 1.
CatState tree_generate_pow2(int depth, Complex alpha, Sign sign);

// Deterministic branch of the parity reduction: builds the 2^Q-mode channel
// state (Q minimal with 2^Q > M), projects the trailing 2^Q - M modes onto the
// given total parity, and peels off the factored measured block.
//
// Produced sign: from a plus source, odd parity flips the sign; from a minus
// source, even parity keeps it (and odd flips it back to plus).
struct ParityReduction {
    CatState state;  // M modes, normalized
    double probability;
    Sign produced_sign;
};
ParityReduction reduce_with_parity(int mode_count, Sign source_sign, Complex alpha,
                                   Parity parity);

// Samples the parity branch with its exact probability and reports the result.
// target_hit is true when the produced sign matches the source sign (the
// branch the scheme is aimed at; callers deciding to keep or retry the other
// branch can read produced_sign directly).
struct GenOutcome {
    Sign produced_sign;
    bool target_hit;
    std::vector<MeasurementRecord> parity_records;
    CatState state;
};
GenOutcome reduce_by_parity(int mode_count, Sign source_sign, Complex alpha, SeededRng& rng);

// Closed-form probability that a 2^Q-mode source of sign `source`, reduced to
// M modes by the total-parity measurement, yields sign `target`. Requires
// 2 <= M < 2^Q. For fixed source the two targets sum to 1.
double generation_probability_analytic(int depth, int mode_count, Sign source, Sign target,
                                       Complex alpha);

// Smallest Q with 2^Q > M. Throws InvalidConfigError when M is itself a power
// of two (no modes would be measured; use the direct scheme instead).
int reduction_depth(int mode_count);

// Branch frequencies of the parity reduction over seeded trials. Trial i draws
// with SeededRng::for_trial(seed, i) against the exact even-parity
// probability, so the sequence of branches matches repeated reduce_by_parity
// calls with the same derivation.
struct GenerationTally {
    std::uint64_t trials = 0;
    std::uint64_t produced_minus = 0;
    std::uint64_t produced_plus = 0;
    double p_even_exact = 0.0;
};
GenerationTally monte_carlo_generation(int mode_count, Sign source_sign, Complex alpha,
                                       std::uint64_t trials, std::uint64_t seed);

}  // namespace catsim
