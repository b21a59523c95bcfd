#pragma once

#include "catsim/cat_state.hpp"

namespace catsim {

// A 2x2 unitary acting on a pair of coherent labels:
//   (b_k, b_l) -> (u00 b_k + u01 b_l, u10 b_k + u11 b_l).
// Every passive two-mode optical element used here is of this form.
struct LabelUnitary {
    Complex u00, u01, u10, u11;

    // Max deviation of the columns from orthonormality.
    double unitarity_defect() const;
    bool is_unitary(double tol = 1e-12) const { return unitarity_defect() <= tol; }
};

inline constexpr double kUnitarityTolerance = 1e-12;

// Matrix of the unbalanced beam splitter with mixing angle theta:
//   (b_k, b_l) -> (b_k cos t + i b_l sin t, b_k sin t - i b_l cos t).
LabelUnitary modified_bs_unitary(double theta);

// Matrix of the 50:50 splitter: (b_k, b_l) -> ((b_k + b_l)/sqrt2, (b_k - b_l)/sqrt2).
LabelUnitary balanced_bs_unitary();

// Applies u to the labels of modes (k, l) of every term. Coefficients are
// untouched; the norm is preserved to rounding because u is unitary.
// Throws NonUnitaryError / ModeIndexError.
CatState apply_pair_unitary(const CatState& state, int k, int l, const LabelUnitary& u);

// Phase shifter: labels at mode j multiplied by exp(-i phi). phi = pi sends
// |b> to |-b>.
CatState phase_shift(const CatState& state, int j, double phi);

CatState modified_bs(const CatState& state, int k, int l, double theta);
CatState balanced_bs(const CatState& state, int k, int l);

}  // namespace catsim
