#pragma once

#include <cstdint>
#include <vector>

#include "catsim/cat_state.hpp"
#include "catsim/measurement.hpp"

namespace catsim {

// Wiring of an N-party teleportation network moving an L-mode cat state.
//
// Symmetric: every party holds L contiguous channel modes (LN total), and any
// party may send to any other. Asymmetric: the sender holds a single channel
// mode and each other party holds L (L(N-1)+1 total); the direction is fixed
// when the channel is distributed, and the sender must be party 0.
//
// Parties and modes are 0-based throughout.
struct NetworkConfig {
    int parties = 2;           // N >= 2
    int cat_modes = 1;         // L >= 1
    bool symmetric = true;
    Sign channel_sign = Sign::minus;
    Complex alpha = 1.0;
    int sender = 0;
    int receiver = 1;

    int channel_mode_count() const {
        return symmetric ? cat_modes * parties : cat_modes * (parties - 1) + 1;
    }
};

void validate(const NetworkConfig& config);

// Partition of the channel modes: entry q lists party q's modes.
std::vector<std::vector<int>> channel_modes_for(const NetworkConfig& config);

// How one run ended, classified by which side of the sender's mixed mode
// pair(s) counted zero photons:
//  - input_side_vacuum:    every mixed input mode read 0 (the paper-facing
//                          branch needing a pi phase correction at the receiver)
//  - channel_side_vacuum:  every mixed channel mode read 0 (no correction)
//  - vacuum_ambiguous:     both sides read 0; the run is discarded as failure.
enum class CaseTag { input_side_vacuum, channel_side_vacuum, vacuum_ambiguous };

struct TrialResult {
    CaseTag case_tag;
    bool parity_sum_odd;      // parity of the total measured photon count
    bool success;
    bool correction_applied;  // pi phase flips on the receiver modes
    double output_fidelity;   // against the ideal input cat
    std::vector<MeasurementRecord> records;
    CatState output_state;    // what the receiver is left with
};

// Runs one full protocol round: compose input (x, y) cat with the channel,
// mix at the sender with 50:50 splitters, photon-count every mode outside the
// receiver's share, correct, and compare with the ideal state.
//
// Success requires a non-ambiguous case and total measured parity odd for a
// minus channel (even for a plus channel); successful rounds reproduce the
// input exactly. Failed non-ambiguous rounds leave the y -> -y mirror state.
TrialResult teleport_once(const NetworkConfig& config, Complex x, Complex y, SeededRng& rng);

// Closed-form success probability. Depends only on |alpha|^2, N, L, the
// channel sign and the symmetry; never on (x, y). Always in [0, 1/2]; equal to
// exactly 1/2 for the symmetric minus channel with N = 2.
double success_probability_analytic(const NetworkConfig& config);

struct MonteCarloResult {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t input_side_vacuum = 0;
    std::uint64_t channel_side_vacuum = 0;
    std::uint64_t vacuum_ambiguous = 0;
    double min_success_fidelity = 1.0;
};

// Success fraction with binomial standard error over seeded trials (trial i
// uses SeededRng::for_trial(seed, i); the result is independent of any
// parallel scheduling of trials).
MonteCarloResult monte_carlo_success(const NetworkConfig& config, Complex x, Complex y,
                                     std::uint64_t trials, std::uint64_t seed);

}  // namespace catsim
