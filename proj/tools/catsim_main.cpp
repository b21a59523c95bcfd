// catsim: command-line front end for the cat-state network simulator.
//
// Subcommands: sweep | teleport | generate | validate | dump-state.
// Exit codes: 0 ok / agreement, 1 statistical disagreement or failed check,
// 2 usage error, 3 numerical guard tripped.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "catsim/cli.hpp"

namespace {

using catsim::Complex;
using catsim::Sign;

// Flat JSON object mirroring long option names, usable via --config.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App* app, bool, bool, std::string) const override {
        nlohmann::json j = nlohmann::json::object();
        for (const CLI::Option* opt : app->get_options({})) {
            if (!opt->get_configurable() || opt->count() == 0) continue;
            if (opt->results().size() == 1) {
                j[opt->get_single_name()] = opt->results().front();
            } else {
                j[opt->get_single_name()] = opt->results();
            }
        }
        return j.dump(2);
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        nlohmann::json j;
        input >> j;
        if (!j.is_object()) throw CLI::FileError("config must be a JSON object");
        std::vector<CLI::ConfigItem> items;
        for (auto it = j.begin(); it != j.end(); ++it) {
            CLI::ConfigItem item;
            item.name = it.key();
            const auto& value = it.value();
            auto push = [&item](const nlohmann::json& v) {
                if (v.is_string()) {
                    item.inputs.push_back(v.get<std::string>());
                } else {
                    item.inputs.push_back(v.dump());
                }
            };
            if (value.is_array()) {
                for (const auto& v : value) push(v);
            } else {
                push(value);
            }
            items.push_back(std::move(item));
        }
        return items;
    }
};

struct AlphaFlags {
    double alpha2 = 1.0;
    double alpha_re = 0.0;
    double alpha_im = 0.0;
    bool explicit_re = false;

    void attach(CLI::App* cmd) {
        auto* a2 = cmd->add_option("--alpha2", alpha2, "channel intensity |alpha|^2")
                       ->check(CLI::NonNegativeNumber);
        auto* re = cmd->add_option("--alpha-re", alpha_re, "Re(alpha), overrides --alpha2");
        cmd->add_option("--alpha-im", alpha_im, "Im(alpha)")->needs(re);
        re->excludes(a2);
        re->each([this](const std::string&) { explicit_re = true; });
    }

    Complex value() const {
        if (explicit_re) return {alpha_re, alpha_im};
        return {std::sqrt(alpha2), 0.0};
    }
};

Sign parse_sign(const std::string& name) {
    return name == "plus" ? Sign::plus : Sign::minus;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact simulator for multimode entangled cat states"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonConfig>());

    const std::vector<std::string> signs{"minus", "plus"};
    std::uint64_t env_seed = catsim::cli::default_seed();

    // --- sweep ---------------------------------------------------------
    catsim::cli::SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "tabulate analytic curves as CSV");
    sweep_cmd->set_config("--config");
    sweep_cmd->add_option("--quantity", sweep.quantity,
                          "gen_prob | mean_photon | concurrence | teleport_prob")
        ->required()
        ->check(CLI::IsMember({"gen_prob", "mean_photon", "concurrence", "teleport_prob"}));
    sweep_cmd->add_option("--start", sweep.start, "first |alpha|^2");
    sweep_cmd->add_option("--stop", sweep.stop, "last |alpha|^2");
    sweep_cmd->add_option("--step", sweep.step, "grid step")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--Q", sweep.depth, "tree depth (gen_prob)");
    sweep_cmd->add_option("--M", sweep.mode_counts, "channel mode counts");
    sweep_cmd->add_option("--K", sweep.subsystems, "subsystem sizes (concurrence)");
    sweep_cmd->add_option("--N", sweep.parties, "party counts (teleport_prob)");
    sweep_cmd->add_option("--L", sweep.cat_modes, "teleported cat modes");
    sweep_cmd->add_flag("--asymmetric", sweep.asymmetric, "asymmetric sharing");
    sweep_cmd->add_option("--output,-o", sweep.output, "CSV path ('-' = stdout)");

    // --- teleport ------------------------------------------------------
    catsim::cli::TeleportOptions tele;
    AlphaFlags tele_alpha;
    double x_re = 1.0, x_im = 0.0, y_re = 1.0, y_im = 0.0;
    std::string tele_sign = "minus";
    auto* tele_cmd = app.add_subcommand("teleport", "Monte Carlo teleportation runs");
    tele_cmd->set_config("--config");
    tele_cmd->add_option("--N", tele.parties, "parties")->check(CLI::Range(2, 64));
    tele_cmd->add_option("--L", tele.cat_modes, "teleported cat modes")
        ->check(CLI::PositiveNumber);
    tele_cmd->add_flag("--asymmetric", tele.asymmetric, "asymmetric channel sharing");
    tele_cmd->add_option("--sign", tele_sign, "channel sign")->check(CLI::IsMember(signs));
    tele_alpha.attach(tele_cmd);
    tele_cmd->add_option("--x-re", x_re, "Re(x)");
    tele_cmd->add_option("--x-im", x_im, "Im(x)");
    tele_cmd->add_option("--y-re", y_re, "Re(y)");
    tele_cmd->add_option("--y-im", y_im, "Im(y)");
    tele_cmd->add_option("--sender", tele.sender, "sending party (0-based)");
    tele_cmd->add_option("--receiver", tele.receiver, "receiving party (default: last)");
    tele_cmd->add_option("--trials", tele.trials, "Monte Carlo trials");
    tele_cmd->add_option("--seed", tele.seed, "base seed (default: CATSIM_SEED or 12345)");
    tele_cmd->add_option("--samples", tele.sample_records, "sample trial records in report");
    tele_cmd->add_option("--output,-o", tele.output, "JSON report path ('-' = stdout)");

    // --- generate ------------------------------------------------------
    catsim::cli::GenerateOptions gen;
    AlphaFlags gen_alpha;
    std::string gen_sign = "minus", gen_source = "minus";
    auto* gen_cmd = app.add_subcommand("generate", "channel-state generation runs");
    gen_cmd->set_config("--config");
    gen_cmd->add_option("--M", gen.mode_count, "channel modes")->required();
    gen_cmd->add_option("--Q", gen.depth, "tree depth for the reduction (default: auto)");
    gen_cmd->add_option("--scheme", gen.scheme, "auto | ladder | tree | reduction")
        ->check(CLI::IsMember({"auto", "ladder", "tree", "reduction"}));
    gen_cmd->add_option("--sign", gen_sign, "requested sign")->check(CLI::IsMember(signs));
    gen_cmd->add_option("--source", gen_source, "source sign for the reduction")
        ->check(CLI::IsMember(signs));
    gen_alpha.attach(gen_cmd);
    gen_cmd->add_option("--trials", gen.trials, "reduction trials");
    gen_cmd->add_option("--seed", gen.seed, "base seed");
    gen_cmd->add_option("--output,-o", gen.output, "JSON report path");
    gen_cmd->add_option("--dump-state", gen.dump_state_path, "write generated state JSON here");

    // --- validate ------------------------------------------------------
    catsim::cli::ValidateOptions val;
    auto* val_cmd = app.add_subcommand("validate", "dual-representation and identity checks");
    val_cmd->set_config("--config");
    val_cmd->add_option("--suite", val.suite, "oracle | identities | limits | all")
        ->check(CLI::IsMember({"oracle", "identities", "limits", "all"}));
    val_cmd->add_option("--oracle-tolerance", val.oracle_tolerance, "amplitude tolerance");
    val_cmd->add_option("--identity-tolerance", val.identity_tolerance, "identity tolerance");
    val_cmd->add_option("--limit-tolerance", val.limit_tolerance, "limit tolerance");

    // --- dump-state ----------------------------------------------------
    catsim::cli::DumpStateOptions dump;
    AlphaFlags dump_alpha;
    double dx_re = 1.0, dx_im = 0.0, dy_re = 1.0, dy_im = 0.0;
    std::string dump_sign = "minus";
    auto* dump_cmd = app.add_subcommand("dump-state", "write a constructed state as JSON");
    dump_cmd->set_config("--config");
    dump_cmd->add_option("--kind", dump.kind, "channel | input | ghz")
        ->check(CLI::IsMember({"channel", "input", "ghz"}));
    dump_cmd->add_option("--M", dump.mode_count, "modes");
    dump_cmd->add_option("--sign", dump_sign, "sign")->check(CLI::IsMember(signs));
    dump_alpha.attach(dump_cmd);
    dump_cmd->add_option("--x-re", dx_re, "Re(x) (input kind)");
    dump_cmd->add_option("--x-im", dx_im, "Im(x)");
    dump_cmd->add_option("--y-re", dy_re, "Re(y)");
    dump_cmd->add_option("--y-im", dy_im, "Im(y)");
    dump_cmd->add_option("--output,-o", dump.output, "state JSON path ('-' = stdout)");

    tele.seed = env_seed;
    gen.seed = env_seed;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sweep_cmd->parsed()) {
            return catsim::cli::run_sweep(sweep, std::cerr);
        }
        if (tele_cmd->parsed()) {
            tele.channel_sign = parse_sign(tele_sign);
            tele.alpha = tele_alpha.value();
            tele.x = {x_re, x_im};
            tele.y = {y_re, y_im};
            return catsim::cli::run_teleport(tele, std::cerr);
        }
        if (gen_cmd->parsed()) {
            gen.sign = parse_sign(gen_sign);
            gen.source_sign = parse_sign(gen_source);
            gen.alpha = gen_alpha.value();
            return catsim::cli::run_generate(gen, std::cerr);
        }
        if (val_cmd->parsed()) {
            return catsim::cli::run_validate(val, std::cout);
        }
        if (dump_cmd->parsed()) {
            dump.sign = parse_sign(dump_sign);
            dump.alpha = dump_alpha.value();
            dump.x = {dx_re, dx_im};
            dump.y = {dy_re, dy_im};
            return catsim::cli::run_dump_state(dump, std::cerr);
        }
    } catch (const catsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
