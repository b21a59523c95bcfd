#include "catsim/generation.hpp"

#include <cmath>

#include "catsim/linear_optics.hpp"

namespace catsim {

namespace {

// Single-mode cat of amplitude `seed_amplitude` on mode 0, vacuum elsewhere.
CatState seed_state(int mode_count, Complex seed_amplitude, Sign sign) {
    std::vector<Complex> plus(mode_count, 0.0), minus(mode_count, 0.0);
    plus[0] = seed_amplitude;
    minus[0] = -seed_amplitude;
    std::vector<CatTerm> terms{{1.0, std::move(plus)}, {sign_value(sign), std::move(minus)}};
    CatState raw(mode_count, std::move(terms));
    if (raw.terms().size() != 2) {
        throw ZeroNormError("generation seed degenerates as alpha -> 0");
    }
    return normalize(raw).state;
}

Sign produced_sign_for(Sign source, Parity parity) {
    if (source == Sign::plus) {
        return parity == Parity::odd ? Sign::minus : Sign::plus;
    }
    return parity == Parity::even ? Sign::minus : Sign::plus;
}

std::vector<int> trailing_modes(int mode_count, int total) {
    std::vector<int> measured;
    measured.reserve(total - mode_count);
    for (int m = mode_count; m < total; ++m) measured.push_back(m);
    return measured;
}

}  // namespace

LadderPlan LadderPlan::make(int mode_count) {
    if (mode_count < 2) throw InvalidConfigError("ladder needs M >= 2");
    LadderPlan plan{mode_count, {}};
    plan.angles.reserve(mode_count - 1);
    for (int q = 1; q <= mode_count - 1; ++q) {
        int n = mode_count + 1 - q;
        plan.angles.push_back(std::acos(1.0 / std::sqrt(static_cast<double>(n))));
    }
    return plan;
}

TreePlan TreePlan::make(int depth) {
    if (depth < 1) throw InvalidConfigError("tree needs Q >= 1");
    TreePlan plan{depth, {}};
    for (int l = 1; l <= depth; ++l) {
        int half = 1 << (l - 1);
        std::vector<std::pair<int, int>> layer;
        layer.reserve(half);
        for (int q = 0; q < half; ++q) layer.emplace_back(q, q + half);
        plan.layers.push_back(std::move(layer));
    }
    return plan;
}

int TreePlan::pair_count() const {
    int n = 0;
    for (const auto& layer : layers) n += static_cast<int>(layer.size());
    return n;
}

CatState ladder_generate(int mode_count, Complex alpha, Sign sign) {
    LadderPlan plan = LadderPlan::make(mode_count);
    CatState state =
        seed_state(mode_count, alpha * std::sqrt(static_cast<double>(mode_count)), sign);
    for (int q = 1; q <= mode_count - 1; ++q) {
        state = modified_bs(state, q - 1, q, plan.angles[q - 1]);
    }
    return state;
}

CatState tree_generate_pow2(int depth, Complex alpha, Sign sign) {
    TreePlan plan = TreePlan::make(depth);
    int modes = 1 << depth;
    CatState state = seed_state(modes, alpha * std::sqrt(static_cast<double>(modes)), sign);
    for (const auto& layer : plan.layers) {
        for (auto [k, l] : layer) state = balanced_bs(state, k, l);
    }
    return state;
}

int reduction_depth(int mode_count) {
    if (mode_count < 2) throw InvalidConfigError("reduction needs M >= 2");
    if ((mode_count & (mode_count - 1)) == 0) {
        throw InvalidConfigError(
            "M is a power of two: nothing to measure, use the direct scheme");
    }
    int depth = 1;
    while ((1 << depth) < mode_count) ++depth;
    return depth;
}

ParityReduction reduce_with_parity(int mode_count, Sign source_sign, Complex alpha,
                                   Parity parity) {
    int depth = reduction_depth(mode_count);
    CatState big = tree_generate_pow2(depth, alpha, source_sign);
    std::vector<int> measured = trailing_modes(mode_count, 1 << depth);
    ParityProjection projection = project_total_parity(big, measured, parity);
    CatState reduced = discard_product_modes(projection.state, measured);
    return {normalize(reduced).state, projection.probability,
            produced_sign_for(source_sign, parity)};
}

GenOutcome reduce_by_parity(int mode_count, Sign source_sign, Complex alpha, SeededRng& rng) {
    int depth = reduction_depth(mode_count);
    CatState big = tree_generate_pow2(depth, alpha, source_sign);
    std::vector<int> measured = trailing_modes(mode_count, 1 << depth);

    ParityProjection even = project_total_parity(big, measured, Parity::even);
    Parity parity = rng.uniform01() < even.probability ? Parity::even : Parity::odd;
    ParityProjection branch =
        parity == Parity::even ? std::move(even)
                               : project_total_parity(big, measured, Parity::odd);

    Sign produced = produced_sign_for(source_sign, parity);
    CatState reduced = normalize(discard_product_modes(branch.state, measured)).state;
    MeasurementRecord record{mode_count, MeasurementRecord::Kind::parity,
                             parity == Parity::odd ? 1 : 0, branch.probability};
    return {produced, produced == source_sign, {record}, std::move(reduced)};
}

double generation_probability_analytic(int depth, int mode_count, Sign source, Sign target,
                                       Complex alpha) {
    if (depth < 1 || mode_count < 2 || mode_count >= (1 << depth)) {
        throw InvalidConfigError("generation probability needs 2 <= M < 2^Q");
    }
    double s = std::norm(alpha);
    int measured = (1 << depth) - mode_count;
    if (s == 0.0) {
        // Continuous limits: a plus source always stays plus; a minus source
        // splits in proportion to the kept block size.
        double frac = static_cast<double>(mode_count) / (1 << depth);
        if (source == Sign::plus) return target == Sign::plus ? 1.0 : 0.0;
        return target == Sign::minus ? frac : 1.0 - frac;
    }
    double za = std::exp(-2.0 * mode_count * s);  // branch overlap on the kept block
    double zb = std::exp(-2.0 * measured * s);    // ... on the measured block
    double kept = target == Sign::plus ? 1.0 + za : -std::expm1(-2.0 * mode_count * s);
    double meas = target == source ? 1.0 + zb : -std::expm1(-2.0 * measured * s);
    double denom = source == Sign::plus ? 1.0 + za * zb
                                        : -std::expm1(-2.0 * (mode_count + measured) * s);
    return kept * meas / (2.0 * denom);
}

GenerationTally monte_carlo_generation(int mode_count, Sign source_sign, Complex alpha,
                                       std::uint64_t trials, std::uint64_t seed) {
    int depth = reduction_depth(mode_count);
    CatState big = tree_generate_pow2(depth, alpha, source_sign);
    std::vector<int> measured = trailing_modes(mode_count, 1 << depth);
    // The branch statistics depend only on this exact probability; the
    // collapsed state for a given parity is deterministic.
    double p_even = project_total_parity(big, measured, Parity::even).probability;

    GenerationTally tally{};
    tally.trials = trials;
    tally.p_even_exact = p_even;
    for (std::uint64_t i = 0; i < trials; ++i) {
        SeededRng rng = SeededRng::for_trial(seed, i);
        Parity parity = rng.uniform01() < p_even ? Parity::even : Parity::odd;
        Sign produced = produced_sign_for(source_sign, parity);
        if (produced == Sign::minus) {
            ++tally.produced_minus;
        } else {
            ++tally.produced_plus;
        }
    }
    return tally;
}

}  // namespace catsim
