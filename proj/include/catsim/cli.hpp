#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "catsim/cat_state.hpp"

// Command cores behind the catsim executable. Each run_* function does the
// work, writes its CSV/JSON product, and returns the process exit code:
//   0  success / statistical agreement
//   1  statistical disagreement or a failed validation check
//   2  usage error (malformed options)
//   3  a numerical guard tripped (zero norm, tail mass, memory budget)
// Outputs are byte-deterministic for fixed options and seed.
namespace catsim::cli {

inline constexpr std::uint64_t kDefaultSeed = 12345;

// Reads CATSIM_SEED when set, else kDefaultSeed.
std::uint64_t default_seed();

struct SweepOptions {
    std::string quantity;  // gen_prob | mean_photon | concurrence | teleport_prob
    double start = 0.1;
    double stop = 4.0;
    double step = 0.1;     // grid over |alpha|^2
    int depth = 3;                   // Q, gen_prob
    std::vector<int> mode_counts;    // M values (gen_prob, mean_photon, concurrence)
    std::vector<int> subsystems;     // K values (concurrence)
    std::vector<int> parties;        // N values (teleport_prob)
    int cat_modes = 1;               // L (teleport_prob)
    bool asymmetric = false;         // teleport_prob
    std::string output;              // path, or "-" for stdout
};
int run_sweep(const SweepOptions& options, std::ostream& diagnostics);

struct TeleportOptions {
    int parties = 2;
    int cat_modes = 1;
    bool asymmetric = false;
    Sign channel_sign = Sign::minus;
    Complex alpha = 1.0;
    Complex x = 1.0;
    Complex y = 1.0;
    int sender = 0;
    int receiver = -1;  // default: last party
    std::uint64_t trials = 100000;
    std::uint64_t seed = kDefaultSeed;
    int sample_records = 3;  // TrialResults embedded in the report
    std::string output;
};
int run_teleport(const TeleportOptions& options, std::ostream& diagnostics);

struct GenerateOptions {
    int mode_count = 2;
    int depth = 0;             // 0 = auto
    std::string scheme = "auto";  // auto | ladder | tree
    Sign sign = Sign::minus;      // requested channel sign
    Sign source_sign = Sign::minus;
    Complex alpha = 1.0;
    std::uint64_t trials = 100000;
    std::uint64_t seed = kDefaultSeed;
    std::string output;
    std::string dump_state_path;  // optional state JSON
};
int run_generate(const GenerateOptions& options, std::ostream& diagnostics);

struct ValidateOptions {
    std::string suite = "all";   // oracle | identities | limits | all
    double oracle_tolerance = 1e-8;
    double identity_tolerance = 1e-12;
    double limit_tolerance = 1e-3;
};
int run_validate(const ValidateOptions& options, std::ostream& out);

struct DumpStateOptions {
    std::string kind = "channel";  // channel | input | ghz
    int mode_count = 2;
    Sign sign = Sign::minus;
    Complex alpha = 1.0;
    Complex x = 1.0;
    Complex y = 1.0;
    std::string output;
};
int run_dump_state(const DumpStateOptions& options, std::ostream& diagnostics);

}  // namespace catsim::cli
