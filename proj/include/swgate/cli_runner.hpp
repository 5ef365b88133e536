#ifndef SWGATE_CLI_RUNNER_HPP
#define SWGATE_CLI_RUNNER_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "swgate/integrator.hpp"
#include "swgate/params.hpp"

namespace swgate::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerics = 3;

struct RunConfig {
    std::string experiment;
    PhysParams params;
    PulseEnvelope envelope;  // t_total <= 0 means "derived by the experiment"
    IntegratorConfig integrator;
    nlohmann::json options;  // experiment-specific knobs, strictly validated
    std::string output_dir = ".";
    std::uint64_t seed = 1;
};

// Strict parse: unknown keys anywhere are rejected.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// --a.b.c=value override on the raw JSON (numbers, bools, strings inferred).
void apply_override(nlohmann::json& j, const std::string& dotted_key, const std::string& value);

// name -> {experiment, description}
struct PresetInfo {
    std::string name;
    std::string experiment;
    std::string description;
};
std::vector<PresetInfo> preset_list();
nlohmann::json preset_config(const std::string& name);

// Executes the experiment, writing <experiment>.csv and <experiment>.summary.json
// to cfg.output_dir. Throws (ValidationError etc.); the CLI maps exceptions to
// exit codes.
void run(const RunConfig& cfg);

// Full command-line entry point (returns the process exit code).
int run_cli(int argc, char** argv);

}  // namespace swgate::cli

#endif
