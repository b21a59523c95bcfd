#include "catsim/teleportation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "catsim/linear_optics.hpp"

namespace catsim {

void validate(const NetworkConfig& config) {
    if (config.parties < 2) throw InvalidConfigError("network needs at least two parties");
    if (config.cat_modes < 1) throw InvalidConfigError("teleported cat needs at least one mode");
    if (config.sender < 0 || config.sender >= config.parties ||
        config.receiver < 0 || config.receiver >= config.parties) {
        throw InvalidConfigError("sender/receiver party out of range");
    }
    if (config.sender == config.receiver) {
        throw InvalidConfigError("sender and receiver must differ");
    }
    if (!config.symmetric && config.sender != 0) {
        throw InvalidConfigError("asymmetric sharing fixes the sender as party 0");
    }
    if (config.alpha == Complex(0.0)) {
        throw InvalidConfigError("channel amplitude must be nonzero");
    }
}

std::vector<std::vector<int>> channel_modes_for(const NetworkConfig& config) {
    validate(config);
    int L = config.cat_modes;
    std::vector<std::vector<int>> blocks(config.parties);
    if (config.symmetric) {
        for (int q = 0; q < config.parties; ++q) {
            for (int m = 0; m < L; ++m) blocks[q].push_back(q * L + m);
        }
    } else {
        blocks[0].push_back(0);
        for (int q = 1; q < config.parties; ++q) {
            for (int m = 0; m < L; ++m) blocks[q].push_back(1 + (q - 1) * L + m);
        }
    }
    return blocks;
}

namespace {

// Everything about a run that does not depend on random outcomes.
struct PreparedProtocol {
    CatState mixed;                 // input (x) channel, after the sender's splitters
    std::vector<int> measure_order; // global indices, descending
    std::vector<int> input_group;   // the mixed pair's input-side global modes
    std::vector<int> channel_group; // ... and channel-side global modes
    CatState target;                // ideal output at the receiver
};

PreparedProtocol prepare(const NetworkConfig& config, Complex x, Complex y) {
    validate(config);
    int L = config.cat_modes;
    auto blocks = channel_modes_for(config);

    CatState input = make_input_cat(x, y, config.alpha, L);
    CatState channel =
        make_channel_state({config.channel_mode_count(), config.channel_sign, config.alpha});
    CatState full = tensor_product(input, channel);

    PreparedProtocol prep{full, {}, {}, {}, input};
    int mixed_pairs = config.symmetric ? L : 1;
    for (int m = 0; m < mixed_pairs; ++m) {
        int input_mode = m;
        int channel_mode = L + blocks[config.sender][m];
        prep.mixed = balanced_bs(prep.mixed, input_mode, channel_mode);
        prep.input_group.push_back(input_mode);
        prep.channel_group.push_back(channel_mode);
    }

    std::vector<bool> keep(L + config.channel_mode_count(), false);
    for (int m : blocks[config.receiver]) keep[L + m] = true;
    for (int g = static_cast<int>(keep.size()) - 1; g >= 0; --g) {
        if (!keep[g]) prep.measure_order.push_back(g);
    }
    return prep;
}

TrialResult run_trial(const PreparedProtocol& prep, const NetworkConfig& config,
                      SeededRng& rng) {
    CatState state = prep.mixed;
    std::vector<MeasurementRecord> records;
    records.reserve(prep.measure_order.size());
    long total_count = 0;
    long input_count = 0;
    long channel_count = 0;
    for (int mode : prep.measure_order) {
        // Descending order keeps not-yet-measured global indices valid, so the
        // recorded index is the original one.
        NumberCollapse collapse = sample_number_measurement(state, mode, rng);
        total_count += collapse.record.outcome;
        if (std::find(prep.input_group.begin(), prep.input_group.end(), mode) !=
            prep.input_group.end()) {
            input_count += collapse.record.outcome;
        }
        if (std::find(prep.channel_group.begin(), prep.channel_group.end(), mode) !=
            prep.channel_group.end()) {
            channel_count += collapse.record.outcome;
        }
        records.push_back(collapse.record);
        state = std::move(collapse.state);
    }

    CaseTag tag;
    if (input_count == 0 && channel_count == 0) {
        tag = CaseTag::vacuum_ambiguous;
    } else if (input_count == 0) {
        tag = CaseTag::input_side_vacuum;
    } else if (channel_count == 0) {
        tag = CaseTag::channel_side_vacuum;
    } else {
        // The mixed state has no support on outcomes with photons on both
        // sides of a mixed pair group.
        throw Error("teleport trial reached an impossible measurement branch");
    }

    bool corrected = tag == CaseTag::input_side_vacuum;
    if (corrected) {
        for (int m = 0; m < state.mode_count(); ++m) {
            state = phase_shift(state, m, std::numbers::pi);
        }
    }

    bool odd = (total_count % 2) != 0;
    bool wanted_odd = config.channel_sign == Sign::minus;
    bool success = tag != CaseTag::vacuum_ambiguous && odd == wanted_odd;
    double out_fidelity = fidelity(state, prep.target);
    return {tag, odd, success, corrected, out_fidelity, std::move(records), std::move(state)};
}

}  // namespace

TrialResult teleport_once(const NetworkConfig& config, Complex x, Complex y, SeededRng& rng) {
    PreparedProtocol prep = prepare(config, x, y);
    return run_trial(prep, config, rng);
}

double success_probability_analytic(const NetworkConfig& config) {
    validate(config);
    double s = std::norm(config.alpha);
    // Both layouts reduce to the single-mode form with an effective channel
    // size: LN split between mixed pair(s) and bystanders for the symmetric
    // network, (N-1)L+1 for the asymmetric one.
    double total = config.symmetric ? static_cast<double>(config.cat_modes) * config.parties
                                    : static_cast<double>(config.cat_modes) *
                                              (config.parties - 1) +
                                          1.0;
    double bystander = config.symmetric
                           ? static_cast<double>(config.cat_modes) * (config.parties - 2)
                           : total - 2.0;
    double t = total * s, b = bystander * s;
    // sinh/cosh ratios evaluated in decaying-exponential form so large
    // arguments cannot overflow.
    if (config.channel_sign == Sign::minus) {
        if (b == 0.0) return 0.5;
        return 0.5 * (1.0 - std::exp(b - t) * std::expm1(-2.0 * b) / std::expm1(-2.0 * t));
    }
    return 0.5 *
           (1.0 - std::exp(b - t) * (1.0 + std::exp(-2.0 * b)) / (1.0 + std::exp(-2.0 * t)));
}

MonteCarloResult monte_carlo_success(const NetworkConfig& config, Complex x, Complex y,
                                     std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw InvalidConfigError("need at least one trial");
    PreparedProtocol prep = prepare(config, x, y);
    MonteCarloResult out{};
    out.trials = trials;
    for (std::uint64_t i = 0; i < trials; ++i) {
        SeededRng rng = SeededRng::for_trial(seed, i);
        TrialResult trial = run_trial(prep, config, rng);
        if (trial.success) {
            ++out.successes;
            out.min_success_fidelity = std::min(out.min_success_fidelity, trial.output_fidelity);
        }
        switch (trial.case_tag) {
            case CaseTag::input_side_vacuum: ++out.input_side_vacuum; break;
            case CaseTag::channel_side_vacuum: ++out.channel_side_vacuum; break;
            case CaseTag::vacuum_ambiguous: ++out.vacuum_ambiguous; break;
        }
    }
    double p = static_cast<double>(out.successes) / static_cast<double>(trials);
    out.estimate = p;
    out.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    return out;
}

}  // namespace catsim
