#pragma once

#include <vector>

#include "catsim/cat_state.hpp"
#include "catsim/rng.hpp"

namespace catsim {

enum class Parity { even, odd };

inline Parity opposite(Parity p) { return p == Parity::even ? Parity::odd : Parity::even; }

// Classical record of one measurement: either a photon count on a single mode
// or a total-parity outcome over a mode set (mode then holds the lowest
// measured index; outcome is 0 for even, 1 for odd).
struct MeasurementRecord {
    enum class Kind { number, parity };
    int mode;
    Kind kind;
    int outcome;
    double probability;
};

// Number-basis coefficient of a coherent state,
//   <n|b> = exp(-|b|^2/2) b^n / sqrt(n!),
// evaluated by the recurrence N_{n+1} = N_n * b / sqrt(n+1). Every partial
// product is itself a coefficient with magnitude <= 1, so the evaluation
// cannot overflow at any n.
Complex fock_amplitude(int n, Complex beta);

// Truncation rule: n_max = ceil(m + 10 sqrt(m) + 10) where m is the largest
// |label|^2 at the mode across terms. The Poisson tail beyond this is < 1e-10
// for the amplitude ranges in use.
int suggested_cutoff(const CatState& state, int mode);

inline constexpr double kTailMassLimit = 1e-9;

// p(n) for n = 0..n_max at one mode of a normalized state. Throws
// TailMassError if more than kTailMassLimit of the distribution lies
// beyond n_max.
std::vector<double> number_distribution(const CatState& state, int mode, int n_max);

struct NumberCollapse {
    MeasurementRecord record;
    CatState state;  // measured mode removed; renormalized
};

// Projects one mode onto |n> and renormalizes; the measured mode is removed
// (indices above shift down by one). record.probability is p(n).
NumberCollapse collapse_number(const CatState& state, int mode, int n);

// Samples n by inverse CDF over the renormalized finite distribution, then
// collapses as collapse_number.
NumberCollapse sample_number_measurement(const CatState& state, int mode, SeededRng& rng);

struct ParityProjection {
    CatState state;      // normalized when probability >= threshold
    double probability;  // squared norm of the projected branch
};

// Projects onto total photon-number parity over the listed modes. Uses
// (-1)^n |b> = |-b>: each term T maps to (T +- T with listed labels negated)/2.
// Modes are kept (projection is not a destructive count). P(even) + P(odd) = 1
// for a normalized input.
ParityProjection project_total_parity(const CatState& state, const std::vector<int>& modes,
                                      Parity parity);

}  // namespace catsim
