#pragma once

#include "uamsim/dispatch_sim.hpp"
#include "uamsim/fleet_sizing.hpp"
#include "uamsim/metrics_cost.hpp"
#include "uamsim/scenario.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace uamsim {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

nlohmann::json to_json(const SizingReport& r);
nlohmann::json to_json(const MetricsReport& m, const RouteNetwork& net);
nlohmann::json to_json(const RefineResult& r);

/// `vehicle_id,kind,origin,dest,depart_min,arrive_min,riders`; riders are
/// `;`-separated ids.
void write_trips_csv(std::ostream& out, const SimResult& result);
/// `rider_id,origin,dest,arrival_min,board_min,dropoff_min`, blank when absent.
void write_riders_csv(std::ostream& out, const SimResult& result);
/// One `wait_min` per dropped-off rider.
void write_waits_csv(std::ostream& out, const SimResult& result);

template <typename T>
void write_heatmap_csv(std::ostream& out, const RouteNetwork& net, const SquareMatrix<T>& m);

struct FleetChoice {
    long long analytic = 0;
    std::optional<int> refined;
    int simulated = 0;
};

nlohmann::json simulation_report(const Scenario& sc, const SizingReport& sizing, const FleetChoice& fleet,
                                 const SimResult& result, const MetricsReport& metrics);

/// Writes report.json, trips.csv, riders.csv, waits.csv, heatmap_demand.csv
/// and heatmap_served.csv into `dir`, creating it if needed. Throws Error on IO failure.
void write_simulation_outputs(const std::filesystem::path& dir, const Scenario& sc, const SizingReport& sizing,
                              const FleetChoice& fleet, const SimResult& result, const MetricsReport& metrics);

}  // namespace uamsim
