#pragma once

#include "uamsim/demand.hpp"
#include "uamsim/dispatch_sim.hpp"
#include "uamsim/fleet_sizing.hpp"
#include "uamsim/geo_network.hpp"
#include "uamsim/metrics_cost.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace uamsim {

/// Everything a study needs, with every default materialized. Loaded from a
/// single JSON document; CLI flags are applied on top by the caller.
struct ScenarioConfig {
    std::filesystem::path nodes_path;
    std::filesystem::path od_path;
    VehicleSpec spec;
    double days_per_month = 30.0;
    double op_hours_per_day = 20.0;
    int t_sim = 1200;
    std::optional<int> fleet;  // empty: size analytically, then refine by simulation
    double alpha = 2.0;
    double pooling_q = 3.0;
    std::uint64_t seed = 7;
    int seeds = 20;
    int n_min = 1;
    int n_max = 40;
    double value_of_time_per_hr = 40.0;
    double car_cost_per_mi = 0.58;
    std::optional<double> car_speed_mph;  // required by the car comparison only
    double circuity = 1.3;
    double assumed_wait_min = 7.47;  // UAM wait used by the car comparison
    bool reposition_enabled = true;
    bool charge_after_reposition = true;
    Placement placement = Placement::RoundRobin;
    std::string placement_node;  // node code, for Placement::SingleNode
    std::filesystem::path output_dir = "out";

    /// Throws ConfigError on nonpositive or inconsistent values.
    void validate() const;
    CostParams cost_params() const;
};

/// Parses a config document. Relative file paths resolve against `base_dir`.
/// Unknown keys are rejected. Throws ConfigError.
ScenarioConfig scenario_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// The fully resolved config, suitable for feeding back to scenario_from_json.
nlohmann::json to_json(const ScenarioConfig& cfg);

/// Inputs loaded and derived from a ScenarioConfig.
struct Scenario {
    ScenarioConfig config;
    RouteNetwork net;
    ODMatrix od;
    DemandRates rates;
};

/// Loads nodes (and OD counts when an OD path is set; otherwise zero demand).
Scenario load_inputs(const ScenarioConfig& cfg);

SimConfig make_sim_config(const Scenario& sc, int fleet, std::uint64_t seed);

}  // namespace uamsim
