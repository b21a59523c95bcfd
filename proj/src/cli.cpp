#include "catsim/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "catsim/analytics.hpp"
#include "catsim/fock_oracle.hpp"
#include "catsim/generation.hpp"
#include "catsim/json_io.hpp"
#include "catsim/linear_optics.hpp"
#include "catsim/teleportation.hpp"

namespace catsim::cli {

namespace {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Writes to the path, or stdout for "" / "-".
void write_text(const std::string& path, const std::string& text, std::ostream& diagnostics) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << text;
    diagnostics << "wrote " << path << "\n";
}

std::vector<double> grid(double start, double stop, double step) {
    if (step <= 0.0) throw InvalidConfigError("sweep step must be positive");
    if (start < 0.0) throw InvalidConfigError("sweep start must be nonnegative");
    std::vector<double> points;
    for (int i = 0;; ++i) {
        double v = start + i * step;
        if (v > stop + 0.5 * step) break;
        points.push_back(v);
    }
    return points;
}

std::string sign_name(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json record_json(const MeasurementRecord& r) {
    return {{"mode", r.mode},
            {"kind", r.kind == MeasurementRecord::Kind::number ? "number" : "parity"},
            {"outcome", r.outcome},
            {"probability", r.probability}};
}

const char* case_name(CaseTag tag) {
    switch (tag) {
        case CaseTag::input_side_vacuum: return "input_side_vacuum";
        case CaseTag::channel_side_vacuum: return "channel_side_vacuum";
        case CaseTag::vacuum_ambiguous: return "vacuum_ambiguous";
    }
    return "?";
}

int guard_errors(std::ostream& diagnostics, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ZeroNormError& e) {
        diagnostics << "numerical guard: " << e.what() << "\n";
        return 3;
    } catch (const TailMassError& e) {
        diagnostics << "numerical guard: " << e.what() << "\n";
        return 3;
    } catch (const MemoryBudgetError& e) {
        diagnostics << "numerical guard: " << e.what() << "\n";
        return 3;
    } catch (const InvalidConfigError& e) {
        diagnostics << "invalid options: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

std::uint64_t default_seed() {
    const char* env = std::getenv("CATSIM_SEED");
    if (env == nullptr || *env == '\0') return kDefaultSeed;
    return std::strtoull(env, nullptr, 10);
}

int run_sweep(const SweepOptions& options, std::ostream& diagnostics) {
    return guard_errors(diagnostics, [&]() {
        std::vector<double> points = grid(options.start, options.stop, options.step);
        std::ostringstream csv;
        std::vector<std::string> header{"alpha2"};
        std::vector<std::function<double(double)>> columns;

        auto add = [&](std::string name, std::function<double(double)> fn) {
            header.push_back(std::move(name));
            columns.push_back(std::move(fn));
        };

        if (options.quantity == "gen_prob") {
            int depth = options.depth;
            auto m_list = options.mode_counts;
            if (m_list.empty()) throw InvalidConfigError("gen_prob sweep needs --M values");
            for (int m : m_list) {
                for (auto [src, tgt, tag] :
                     {std::tuple{Sign::plus, Sign::minus, "plus_to_minus"},
                      std::tuple{Sign::minus, Sign::minus, "minus_to_minus"},
                      std::tuple{Sign::plus, Sign::plus, "plus_to_plus"},
                      std::tuple{Sign::minus, Sign::plus, "minus_to_plus"}}) {
                    std::ostringstream name;
                    name << "p_" << tag << "_M" << m;
                    add(name.str(), [depth, m, src, tgt](double s) {
                        return generation_probability_analytic(depth, m, src, tgt,
                                                               std::sqrt(s));
                    });
                }
            }
        } else if (options.quantity == "mean_photon") {
            auto m_list = options.mode_counts;
            if (m_list.empty()) throw InvalidConfigError("mean_photon sweep needs --M values");
            for (int m : m_list) {
                add("nbar_minus_M" + std::to_string(m), [m](double s) {
                    return mean_photon_per_mode(m, Sign::minus, std::sqrt(s));
                });
                add("nbar_plus_M" + std::to_string(m), [m](double s) {
                    return mean_photon_per_mode(m, Sign::plus, std::sqrt(s));
                });
            }
        } else if (options.quantity == "concurrence") {
            if (options.mode_counts.size() != 1) {
                throw InvalidConfigError("concurrence sweep needs exactly one --M");
            }
            int m = options.mode_counts.front();
            auto k_list = options.subsystems;
            if (k_list.empty()) throw InvalidConfigError("concurrence sweep needs --K values");
            for (int k : k_list) {
                add("c_minus_M" + std::to_string(m) + "_K" + std::to_string(k),
                    [m, k](double s) {
                        return concurrence_analytic(m, k, Sign::minus, std::sqrt(s));
                    });
                add("c_plus_M" + std::to_string(m) + "_K" + std::to_string(k),
                    [m, k](double s) {
                        return concurrence_analytic(m, k, Sign::plus, std::sqrt(s));
                    });
            }
        } else if (options.quantity == "teleport_prob") {
            auto n_list = options.parties;
            if (n_list.empty()) throw InvalidConfigError("teleport_prob sweep needs --N values");
            int cat_modes = options.cat_modes;
            bool asym = options.asymmetric;
            for (int n : n_list) {
                std::string suffix = (asym ? std::string("_asym_N") : std::string("_N")) +
                                     std::to_string(n) + "_L" + std::to_string(cat_modes);
                for (Sign sign : {Sign::minus, Sign::plus}) {
                    add("pi_" + sign_name(sign) + suffix, [n, cat_modes, asym, sign](double s) {
                        NetworkConfig config;
                        config.parties = n;
                        config.cat_modes = cat_modes;
                        config.symmetric = !asym;
                        config.channel_sign = sign;
                        config.alpha = std::sqrt(std::max(s, 1e-300));
                        config.receiver = n - 1;
                        return success_probability_analytic(config);
                    });
                }
            }
        } else {
            throw InvalidConfigError("unknown sweep quantity: " + options.quantity);
        }

        for (std::size_t c = 0; c < header.size(); ++c) {
            csv << (c == 0 ? "" : ",") << header[c];
        }
        csv << "\n";
        for (double s : points) {
            csv << format_double(s);
            for (auto& column : columns) csv << "," << format_double(column(s));
            csv << "\n";
        }
        write_text(options.output, csv.str(), diagnostics);
        return 0;
    });
}

int run_teleport(const TeleportOptions& options, std::ostream& diagnostics) {
    return guard_errors(diagnostics, [&]() {
        NetworkConfig config;
        config.parties = options.parties;
        config.cat_modes = options.cat_modes;
        config.symmetric = !options.asymmetric;
        config.channel_sign = options.channel_sign;
        config.alpha = options.alpha;
        config.sender = options.sender;
        config.receiver = options.receiver < 0 ? options.parties - 1 : options.receiver;
        validate(config);
        if (options.trials < 1) throw InvalidConfigError("need at least one trial");

        double analytic = success_probability_analytic(config);
        MonteCarloResult mc =
            monte_carlo_success(config, options.x, options.y, options.trials, options.seed);
        bool agree = std::abs(mc.estimate - analytic) <= 4.0 * mc.std_error;

        json samples = json::array();
        for (int i = 0; i < options.sample_records; ++i) {
            SeededRng rng = SeededRng::for_trial(options.seed, static_cast<std::uint64_t>(i));
            TrialResult trial = teleport_once(config, options.x, options.y, rng);
            json records = json::array();
            for (const auto& r : trial.records) records.push_back(record_json(r));
            samples.push_back({{"case", case_name(trial.case_tag)},
                               {"parity_sum_odd", trial.parity_sum_odd},
                               {"success", trial.success},
                               {"correction_applied", trial.correction_applied},
                               {"output_fidelity", trial.output_fidelity},
                               {"records", records}});
        }

        json report = {
            {"config",
             {{"parties", config.parties},
              {"cat_modes", config.cat_modes},
              {"symmetric", config.symmetric},
              {"channel_sign", sign_name(config.channel_sign)},
              {"alpha", complex_json(config.alpha)},
              {"alpha2", std::norm(config.alpha)},
              {"x", complex_json(options.x)},
              {"y", complex_json(options.y)},
              {"sender", config.sender},
              {"receiver", config.receiver}}},
            {"trials", options.trials},
            {"seed", options.seed},
            {"analytic_probability", analytic},
            {"estimate", mc.estimate},
            {"std_error", mc.std_error},
            {"successes", mc.successes},
            {"case_counts",
             {{"input_side_vacuum", mc.input_side_vacuum},
              {"channel_side_vacuum", mc.channel_side_vacuum},
              {"vacuum_ambiguous", mc.vacuum_ambiguous}}},
            {"min_success_fidelity", mc.min_success_fidelity},
            {"agree_within_4_sigma", agree},
            {"samples", samples}};
        write_text(options.output, report.dump(2) + "\n", diagnostics);
        return agree ? 0 : 1;
    });
}

int run_generate(const GenerateOptions& options, std::ostream& diagnostics) {
    return guard_errors(diagnostics, [&]() {
        int m = options.mode_count;
        if (m < 2) throw InvalidConfigError("generation needs M >= 2");
        bool power_of_two = (m & (m - 1)) == 0;
        std::string scheme = options.scheme;
        if (scheme == "auto") scheme = power_of_two ? "tree" : "reduction";
        json report = {{"M", m},
                       {"sign", sign_name(options.sign)},
                       {"alpha2", std::norm(options.alpha)},
                       {"scheme", scheme}};
        int exit_code = 0;

        if (scheme == "ladder" || scheme == "tree") {
            CatState target = make_channel_state({m, options.sign, options.alpha});
            CatState produced;
            if (scheme == "ladder") {
                produced = ladder_generate(m, options.alpha, options.sign);
            } else {
                if (!power_of_two) {
                    throw InvalidConfigError("tree scheme needs a power-of-two M");
                }
                int depth = 0;
                while ((1 << depth) < m) ++depth;
                report["Q"] = depth;
                produced = tree_generate_pow2(depth, options.alpha, options.sign);
            }
            double fid = fidelity(produced, target);
            report["fidelity_vs_direct"] = fid;
            exit_code = fid >= 1.0 - 1e-10 ? 0 : 1;
            if (!options.dump_state_path.empty()) {
                save_state(produced, options.dump_state_path);
            }
        } else if (scheme == "reduction") {
            if (power_of_two) {
                throw InvalidConfigError("M is a power of two: use --scheme tree or ladder");
            }
            if (options.trials < 1) throw InvalidConfigError("need at least one trial");
            int depth = options.depth > 0 ? options.depth : reduction_depth(m);
            if ((1 << depth) <= m) throw InvalidConfigError("2^Q must exceed M");
            report["Q"] = depth;
            report["source_sign"] = sign_name(options.source_sign);

            GenerationTally tally =
                monte_carlo_generation(m, options.source_sign, options.alpha, options.trials,
                                       options.seed);
            double p_minus = generation_probability_analytic(depth, m, options.source_sign,
                                                             Sign::minus, options.alpha);
            double p_plus = generation_probability_analytic(depth, m, options.source_sign,
                                                            Sign::plus, options.alpha);
            double freq_minus =
                static_cast<double>(tally.produced_minus) / static_cast<double>(tally.trials);
            double se = std::sqrt(std::max(freq_minus * (1.0 - freq_minus), 1e-12) /
                                  static_cast<double>(tally.trials));
            double p_target = options.sign == Sign::minus ? p_minus : p_plus;
            double freq_target = options.sign == Sign::minus ? freq_minus : 1.0 - freq_minus;
            bool agree = std::abs(freq_minus - p_minus) <= 4.0 * se;

            SeededRng rng = SeededRng::for_trial(options.seed, 0);
            GenOutcome sample = reduce_by_parity(m, options.source_sign, options.alpha, rng);
            CatState target = make_channel_state({m, sample.produced_sign, options.alpha});

            report["analytic"] = {{"p_minus", p_minus}, {"p_plus", p_plus},
                                  {"p_target", p_target}};
            report["empirical"] = {{"trials", tally.trials},
                                   {"produced_minus", tally.produced_minus},
                                   {"produced_plus", tally.produced_plus},
                                   {"freq_minus", freq_minus},
                                   {"freq_target", freq_target},
                                   {"std_error", se}};
            report["sample_trial"] = {
                {"produced_sign", sign_name(sample.produced_sign)},
                {"target_hit", sample.target_hit},
                {"parity_outcome", sample.parity_records.front().outcome == 0 ? "even" : "odd"},
                {"branch_probability", sample.parity_records.front().probability},
                {"fidelity_vs_direct", fidelity(sample.state, target)}};
            report["agree_within_4_sigma"] = agree;
            exit_code = agree ? 0 : 1;
            if (!options.dump_state_path.empty()) {
                save_state(sample.state, options.dump_state_path);
            }
        } else {
            throw InvalidConfigError("unknown scheme: " + scheme);
        }

        write_text(options.output, report.dump(2) + "\n", diagnostics);
        return exit_code;
    });
}

namespace {

struct CheckLog {
    std::ostream& out;
    int failures = 0;

    void check(const std::string& name, double discrepancy, double tolerance) {
        bool ok = discrepancy <= tolerance;
        if (!ok) ++failures;
        out << (ok ? "[ok]   " : "[FAIL] ") << name << ": discrepancy " << discrepancy
            << " (tolerance " << tolerance << ")\n";
    }
};

void validate_oracle(CheckLog& log, double tol) {
    // Ladder chain, three modes.
    {
        CatState seed = make_input_cat(1.0, -1.0, std::sqrt(1.5), 1);
        CatState start = tensor_product(seed, tensor_product(
            CatState(1, {{1.0, {Complex(0.0)}}}), CatState(1, {{1.0, {Complex(0.0)}}})));
        LadderPlan plan = LadderPlan::make(3);
        std::vector<PipelineOp> script{
            PipelineOp::pair(0, 1, modified_bs_unitary(plan.angles[0])),
            PipelineOp::pair(1, 2, modified_bs_unitary(plan.angles[1]))};
        CrosscheckReport r = crosscheck_pipeline(start, script, tol);
        log.check("oracle ladder M=3 amplitudes", r.max_amplitude_diff, tol);
    }
    // Tree layer plus parity projection on a four-mode channel.
    {
        CatState start = tree_generate_pow2(2, std::sqrt(0.5), Sign::minus);
        std::vector<PipelineOp> script{
            PipelineOp::parity_projection({2, 3}, Parity::even),
            PipelineOp::phase(0, 1.1)};
        CrosscheckReport r = crosscheck_pipeline(start, script, tol);
        log.check("oracle parity projection amplitudes", r.max_amplitude_diff, tol);
        log.check("oracle parity projection probability", r.max_probability_diff, tol);
    }
    // Deterministic teleport sub-steps (N=2, L=1, fixed outcomes).
    {
        CatState input = make_input_cat(1.0, Complex(0.0, 1.0), 1.0, 1);
        CatState channel = make_channel_state({2, Sign::minus, 1.0});
        CatState start = tensor_product(input, channel);
        std::vector<PipelineOp> script{
            PipelineOp::pair(0, 1, balanced_bs_unitary()),
            PipelineOp::collapse(0, 0),
            PipelineOp::collapse(0, 1),
            PipelineOp::phase(0, std::numbers::pi)};
        CrosscheckReport r = crosscheck_pipeline(start, script, 1e-7);
        log.check("oracle teleport substeps amplitudes", r.max_amplitude_diff, 1e-7);
        log.check("oracle teleport substeps probabilities", r.max_probability_diff, 1e-7);
    }
}

void validate_identities(CheckLog& log, double tol) {
    double worst_ratio = 0.0;
    for (int depth : {3, 4}) {
        for (int m = 2; m < (1 << depth); ++m) {
            if ((m & (m - 1)) == 0) continue;
            for (double s : {0.1, 0.5, 1.0, 2.0, 5.0}) {
                Complex a = std::sqrt(s);
                double pmm = generation_probability_analytic(depth, m, Sign::minus, Sign::minus, a);
                double ppp = generation_probability_analytic(depth, m, Sign::plus, Sign::plus, a);
                double ppm = generation_probability_analytic(depth, m, Sign::plus, Sign::minus, a);
                double pmp = generation_probability_analytic(depth, m, Sign::minus, Sign::plus, a);
                double ms = m * s, qs = (1 << depth) * s;
                double coth_m = 1.0 / std::tanh(ms);
                worst_ratio = std::max(worst_ratio,
                                       std::abs(ppp - coth_m * std::tanh(qs) * pmm));
                worst_ratio = std::max(worst_ratio,
                                       std::abs(pmp - coth_m / std::tanh(qs) * ppm));
            }
        }
    }
    log.check("generation probability ratio identities", worst_ratio, tol);

    double worst_asym = 0.0;
    for (int n = 2; n <= 6; ++n) {
        for (int cat_modes : {1, 2, 3}) {
            for (double s = 0.1; s <= 5.0 + 1e-9; s += 0.1) {
                NetworkConfig asym{n, cat_modes, false, Sign::minus, std::sqrt(s), 0, n - 1};
                NetworkConfig equiv{(n - 1) * cat_modes + 1, 1, true, Sign::minus,
                                    std::sqrt(s), 0, (n - 1) * cat_modes};
                worst_asym = std::max(worst_asym,
                                      std::abs(success_probability_analytic(asym) -
                                               success_probability_analytic(equiv)));
            }
        }
    }
    log.check("asymmetric/symmetric probability identity", worst_asym, 1e-14);
}

void validate_limits(CheckLog& log, double tol) {
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n) {
        NetworkConfig config{n, 1, true, Sign::minus, std::sqrt(1e-6), 0, n - 1};
        worst = std::max(worst, std::abs(success_probability_analytic(config) - 1.0 / n));
    }
    log.check("teleport probability -> 1/N at small alpha", worst, tol);

    double worst_half = 0.0;
    for (int n = 2; n <= 6; ++n) {
        for (Sign sign : {Sign::minus, Sign::plus}) {
            NetworkConfig config{n, 1, true, sign, std::sqrt(20.0), 0, n - 1};
            worst_half = std::max(worst_half,
                                  std::abs(success_probability_analytic(config) - 0.5));
        }
    }
    log.check("teleport probability -> 1/2 at large alpha", worst_half, 1e-6);

    NetworkConfig plus_small{3, 1, true, Sign::plus, std::sqrt(1e-6), 0, 2};
    log.check("plus-channel probability -> 0 at small alpha",
              success_probability_analytic(plus_small), tol);

    double worst_gen = 0.0;
    for (int m : {5, 6, 7}) {
        Complex a = std::sqrt(1e-6);
        double frac = m / 8.0;
        worst_gen = std::max(worst_gen, std::abs(generation_probability_analytic(
                                            3, m, Sign::plus, Sign::minus, a)));
        worst_gen = std::max(worst_gen, std::abs(generation_probability_analytic(
                                            3, m, Sign::minus, Sign::minus, a) - frac));
        worst_gen = std::max(worst_gen, std::abs(generation_probability_analytic(
                                            3, m, Sign::plus, Sign::plus, a) - 1.0));
        worst_gen = std::max(worst_gen, std::abs(generation_probability_analytic(
                                            3, m, Sign::minus, Sign::plus, a) - (1.0 - frac)));
    }
    log.check("generation probability small-alpha limits", worst_gen, tol);

    double worst_conc = 0.0;
    for (int m : {4, 6, 7}) {
        for (int k = 1; k < m; ++k) {
            double limit = 2.0 * std::sqrt(static_cast<double>(k) * (m - k)) / m;
            worst_conc = std::max(worst_conc,
                                  std::abs(concurrence_analytic(m, k, Sign::minus,
                                                                std::sqrt(1e-8)) -
                                           limit));
        }
    }
    log.check("concurrence small-alpha limit", worst_conc, 1e-6);
}

}  // namespace

int run_validate(const ValidateOptions& options, std::ostream& out) {
    return guard_errors(out, [&]() {
        CheckLog log{out};
        if (options.suite == "oracle" || options.suite == "all") {
            validate_oracle(log, options.oracle_tolerance);
        }
        if (options.suite == "identities" || options.suite == "all") {
            validate_identities(log, options.identity_tolerance);
        }
        if (options.suite == "limits" || options.suite == "all") {
            validate_limits(log, options.limit_tolerance);
        }
        if (options.suite != "oracle" && options.suite != "identities" &&
            options.suite != "limits" && options.suite != "all") {
            throw InvalidConfigError("unknown suite: " + options.suite);
        }
        out << (log.failures == 0 ? "all checks passed\n" : "checks FAILED\n");
        return log.failures == 0 ? 0 : 1;
    });
}

int run_dump_state(const DumpStateOptions& options, std::ostream& diagnostics) {
    return guard_errors(diagnostics, [&]() {
        CatState state(1, {});
        if (options.kind == "channel") {
            state = make_channel_state({options.mode_count, options.sign, options.alpha});
        } else if (options.kind == "input") {
            state = make_input_cat(options.x, options.y, options.alpha, options.mode_count);
        } else if (options.kind == "ghz") {
            state = ghz_reference(options.mode_count, options.sign, options.alpha);
        } else {
            throw InvalidConfigError("unknown state kind: " + options.kind);
        }
        write_text(options.output, state_to_json(state) + "\n", diagnostics);
        return 0;
    });
}

}  // namespace catsim::cli
