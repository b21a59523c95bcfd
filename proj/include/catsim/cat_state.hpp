#pragma once

#include <complex>
#include <vector>

#include "catsim/errors.hpp"

namespace catsim {

using Complex = std::complex<double>;

// Sign of a two-branch superposition (|a...> + s |-a...>, s = +1 or -1).
enum class Sign { plus, minus };

inline double sign_value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }
inline Sign opposite(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

// Canonicalization thresholds. Terms whose label vectors agree within
// kMergeTolerance per component are merged (coefficients summed); terms with
// |coeff| < kPruneRelative * max|coeff| are dropped.
inline constexpr double kMergeTolerance = 1e-12;
inline constexpr double kPruneRelative = 1e-14;

// Squared norms below this are treated as a degenerate (zero) state.
inline constexpr double kZeroNormThreshold = 1e-24;

// One product of coherent states |labels[0]> |labels[1]> ... with a weight.
struct CatTerm {
    Complex coeff;
    std::vector<Complex> labels;  // one coherent amplitude per mode
};

// A finite superposition of multimode coherent-state products. This is the
// exact sparse representation every protocol in the library runs on: states
// that a truncated number basis can only approximate are carried here with a
// handful of terms.
//
// Instances are immutable values; every operation returns a new state. The
// constructor canonicalizes (merge near-equal label vectors, prune negligible
// coefficients, sort terms) and rejects non-finite data. A state with no terms
// is the zero vector, which is a legal intermediate (e.g. after annihilating
// the vacuum) but cannot be normalized.
class CatState {
public:
    CatState() : mode_count_(0) {}  // zero-mode zero state
    CatState(int mode_count, std::vector<CatTerm> terms);

    int mode_count() const { return mode_count_; }
    const std::vector<CatTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Constituents, range-checked.
    const CatTerm& term(std::size_t i) const { return terms_.at(i); }

private:
    int mode_count_;
    std::vector<CatTerm> terms_;
};

// Parameters of a channel state A_M^s (|a>^M + s |-a>^M).
struct ChannelSpec {
    int mode_count;  // M >= 2
    Sign sign;
    Complex alpha;
};

// <beta|gamma> = exp(-(|b|^2+|g|^2)/2 + conj(b)*g). coherent_overlap(b,b) == 1.
Complex coherent_overlap(Complex beta, Complex gamma);

// <lhs|rhs> as the double sum of term-pair overlap products.
// Throws ModeIndexError on mode-count mismatch.
Complex inner_product(const CatState& lhs, const CatState& rhs);

// <state|state>, guaranteed real up to rounding; returned as double.
double squared_norm(const CatState& state);

struct Normalized {
    CatState state;  // squared norm 1 within 1e-12
    double norm;     // norm of the input state
};

// Throws ZeroNormError if squared_norm(state) < kZeroNormThreshold.
Normalized normalize(const CatState& state);

// |<lhs|rhs>|^2 / (|lhs|^2 |rhs|^2); global-phase and scale insensitive.
// Throws ZeroNormError if either argument is degenerate.
double fidelity(const CatState& lhs, const CatState& rhs);

// Normalized L-mode cat x|a>^L + y|-a>^L. (x, y) = (0, 0) is rejected;
// a degenerate superposition (x ~ -y at tiny alpha) raises ZeroNormError.
CatState make_input_cat(Complex x, Complex y, Complex alpha, int mode_count);

// Normalized channel state A_M^s (|a>^M + s|-a>^M), exactly two terms.
// Raises ZeroNormError for either sign when the two branches coincide
// (alpha within merge tolerance of zero): the construction is degenerate.
CatState make_channel_state(const ChannelSpec& spec);

// Annihilation operator on one mode: coherent states are eigenstates, so each
// term's coefficient is multiplied by its label there; labels are unchanged.
// The result is generally unnormalized (and may be the zero state).
CatState apply_annihilation(const CatState& state, int mode);

// state scaled by a constant factor.
CatState scale(const CatState& state, Complex factor);

// lhs (x) rhs, with lhs's modes first.
CatState tensor_product(const CatState& lhs, const CatState& rhs);

// For a state that factors as (rest) (x) (sub-state on `modes`), returns the
// rest factor with the same total norm; the discarded factor is normalized
// away. Throws NonProductError if the state is entangled across the cut.
CatState discard_product_modes(const CatState& state, const std::vector<int>& modes);

namespace detail {
// Validates 0 <= mode < mode_count, else throws ModeIndexError.
void check_mode(const CatState& state, int mode);
// Validates a non-empty set of distinct in-range modes.
void check_mode_set(const CatState& state, const std::vector<int>& modes);
}  // namespace detail

}  // namespace catsim
