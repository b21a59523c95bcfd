#pragma once

#include <cstdint>
#include <vector>

#include "catsim/cat_state.hpp"
#include "catsim/linear_optics.hpp"
#include "catsim/measurement.hpp"

namespace catsim {

// Dense truncated number-basis vector: the brute-force cross-check
// representation. Deliberately slow and entirely independent of the coherent
// label algebra; its job is to catch bugs in the sparse kernel, not to be fast.
//
// Index layout is row major over modes: amplitude(n_0, ..., n_{M-1}) sits at
// sum_m n_m * stride_m with the last mode fastest.
struct FockVector {
    int mode_count = 0;
    std::vector<int> cutoffs;       // per-mode n_max
    std::vector<Complex> amps;      // size prod(cutoff + 1)
    double truncation_loss = 0.0;   // probability dropped by the conversion

    std::size_t dim(int mode) const { return static_cast<std::size_t>(cutoffs[mode]) + 1; }
    std::size_t size() const { return amps.size(); }
    std::size_t index(const std::vector<int>& ns) const;
    double squared_norm() const;
};

// Default ceiling on prod(cutoff + 1); conversions refuse larger arrays.
inline constexpr std::size_t kFockBudgetEntries = std::size_t{1} << 27;

// Per-mode cutoffs from the measurement rule applied to each mode.
std::vector<int> default_cutoffs(const CatState& state);

// amplitude(n) = sum_terms coeff * prod_m <n_m|label_m>. Throws TailMassError
// when more than loss_limit of the norm is lost, MemoryBudgetError when the
// array would exceed `budget`.
FockVector to_fock(const CatState& state, const std::vector<int>& cutoffs,
                   double loss_limit = 1e-9, std::size_t budget = kFockBudgetEntries);
FockVector to_fock(const CatState& state);

Complex fock_inner(const FockVector& lhs, const FockVector& rhs);
double fock_fidelity(const FockVector& lhs, const FockVector& rhs);

// Two-mode label unitary in the number basis, built from the action of the
// transformed creation operators (binomial expansion within each conserved
// total-photon sector). Population pushed past a cutoff is dropped; if that
// loses more than loss_limit of the norm the call throws TailMassError.
FockVector fock_apply_pair_unitary(const FockVector& v, int k, int l, const LabelUnitary& u,
                                   double loss_limit = 1e-8);

// Phase shifter: amplitude factor exp(-i phi n) on mode j.
FockVector fock_phase_shift(const FockVector& v, int j, double phi);

// Marginal photon-number distribution of one mode (sums to 1 - truncation slack).
std::vector<double> fock_number_distribution(const FockVector& v, int mode);

struct FockParityProjection {
    FockVector state;
    double probability;
};
FockParityProjection fock_parity_project(const FockVector& v, const std::vector<int>& modes,
                                         Parity parity);

struct FockNumberCollapse {
    FockVector state;  // mode removed, renormalized
    double probability;
};
FockNumberCollapse fock_collapse_number(const FockVector& v, int mode, int n);

// One deterministic step of a dual-representation run.
struct PipelineOp {
    enum class Kind { pair_unitary, phase_shift, parity_project, collapse_number };
    Kind kind;
    int mode_a = 0;        // pair ops: first mode; single-mode ops: the mode
    int mode_b = 0;        // pair ops: second mode
    LabelUnitary unitary;  // pair_unitary
    double phi = 0.0;      // phase_shift
    std::vector<int> modes;  // parity_project
    Parity parity = Parity::even;
    int outcome = 0;       // collapse_number

    static PipelineOp pair(int k, int l, const LabelUnitary& u);
    static PipelineOp phase(int j, double phi);
    static PipelineOp parity_projection(std::vector<int> modes, Parity parity);
    static PipelineOp collapse(int mode, int n);
};

struct CrosscheckReport {
    bool pass = false;
    double tolerance = 0.0;
    double max_amplitude_diff = 0.0;    // over all steps, both representations
    double max_probability_diff = 0.0;  // measurement probabilities
    int steps = 0;
};

// Runs the script through both representations, comparing dense amplitudes
// after every step and measurement probabilities where applicable. Cutoffs are
// chosen from the largest coherent label seen anywhere along the sparse
// trajectory, so beam-splitter outputs stay inside the truncation.
CrosscheckReport crosscheck_pipeline(const CatState& initial,
                                     const std::vector<PipelineOp>& script, double tolerance,
                                     std::size_t budget = kFockBudgetEntries);

}  // namespace catsim
