#pragma once

#include <string>

#include "rdc/passive.hpp"
#include "rdc/supervisor.hpp"
#include "rdc/types.hpp"

namespace rdc {

enum class RunMode {
    OpenLoop,
    NominalFullKernel,
    NominalTruncated,
    AdaptiveRegulation,
    AdaptiveRegulationKnownC,
    AdaptivePassive,
};

std::string to_string(RunMode m);
RunMode run_mode_from_string(const std::string& s);

/// Everything one simulation needs, parsed from a sectioned key-value file.
struct Scenario {
    RunMode mode = RunMode::AdaptiveRegulationKnownC;
    double horizon = 3.0;

    PlantParams truth;
    std::string initial_profile = "paper_ic";  ///< paper_ic | sine | poly | zero | csv:PATH
    double initial_amplitude = 1.0;
    Estimates init_estimates{0.1, 1.0};
    TriggerConfig trigger;
    DesignParams design;
    DesignBackend backend = DesignBackend::Backstepping;
    SolverConfig solver;
    SpatialGrid grid;
    IdentifierConfig ident;
    PassiveConfig passive;

    void validate() const;
};

/// Parse the sectioned key=value format; unknown keys are an error.
/// Throws std::runtime_error with a line-tagged message on bad input.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

/// Serialize back into the canonical config layout (round-trips through
/// parse_scenario to an equivalent scenario).
std::string dump_scenario(const Scenario& sc);

/// Named initial-condition library; csv:PATH loads one value per line.
StateProfile initial_profile(const Scenario& sc);

/// Execute the scenario end to end.
RunResult run_scenario(const Scenario& sc, bool keep_profiles = false);

}  // namespace rdc
