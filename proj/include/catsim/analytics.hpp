#pragma once

#include <vector>

#include "catsim/cat_state.hpp"
#include "catsim/fock_oracle.hpp"

namespace catsim {

// Expansion of a channel state over the orthonormalized two-dimensional bases
// of a K / (M-K) mode bipartition. Z is the single-mode overlap <a|-a>; the
// four real amplitudes satisfy a00^2 + a01^2 + a10^2 + a11^2 = 1.
struct ConcurrenceDecomposition {
    double z;
    double a00, a01, a10, a11;
    int subsystem_modes;  // K
    int mode_count;       // M
    Sign sign;

    double concurrence() const;  // 2 |a00 a11 - a01 a10|
};

ConcurrenceDecomposition concurrence_decomposition(int mode_count, int subsystem_modes,
                                                   Sign sign, Complex alpha);

// Closed form
//   sqrt((1 - e^{-4Ks})(1 - e^{-4(M-K)s})) / (1 +- e^{-2Ms}),   s = |alpha|^2,
// symmetric under K <-> M-K. 1 <= K < M.
double concurrence_analytic(int mode_count, int subsystem_modes, Sign sign, Complex alpha);

// Same quantity through the decomposition amplitudes; agrees with the closed
// form to ~1e-15.
double concurrence_from_decomposition(int mode_count, int subsystem_modes, Sign sign,
                                      Complex alpha);

// Mean photon number per mode of a channel state: s tanh(Ms) for the plus
// sign, s coth(Ms) for the minus sign, continued to s = 0 (0 and 1/M).
double mean_photon_per_mode(int mode_count, Sign sign, Complex alpha);

// Large-alpha comparison state: the equal-weight two-branch cat
// (|a>^M + sgn |-a>^M)/sqrt2 in the sparse representation.
CatState ghz_reference(int mode_count, Sign sign, Complex alpha);

// Small-alpha comparison state: the single-excitation superposition
// sum_k |0..1_k..0> / sqrt(M), as a dense number-basis vector.
FockVector w_reference_fock(int mode_count);

// 1 - fidelity between the state with two annihilations applied on every
// listed mode and alpha^(2K) times the original. ~0 exactly when the state is
// a channel state of amplitude alpha.
double eigen_relation_residual(const CatState& state, const std::vector<int>& modes,
                               Complex alpha);

}  // namespace catsim
