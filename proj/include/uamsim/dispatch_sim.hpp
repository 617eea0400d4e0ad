#pragma once

#include "uamsim/demand.hpp"
#include "uamsim/geo_network.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace uamsim {

using RiderId = std::uint64_t;

enum class VehicleState { Idle, Flying, Charging, Repositioning };
enum class TripKind { Revenue, Reposition };
enum class Placement { RoundRobin, SingleNode };

std::string_view to_string(VehicleState s);
std::string_view to_string(TripKind k);
std::string_view to_string(Placement p);
Placement placement_from_string(std::string_view s);

struct Vehicle {
    int id = 0;
    NodeId location = 0;  // meaningful when not airborne
    VehicleState state = VehicleState::Idle;
    std::vector<RiderId> onboard;
    NodeId dest = 0;  // meaningful while Flying / Repositioning
    int minutes_remaining = 0;
    int leg_elapsed = 0;  // minutes flown on the current leg, buffer first
    /// Node this vehicle was sent to by a reposition leg; cleared once it is
    /// Idle there. Such vehicles count as covering a waiting rider.
    std::optional<NodeId> committed_to;

    int revenue_air_min = 0;
    int reposition_air_min = 0;
    int charge_min = 0;
    int buffer_min_acc = 0;
    int idle_min = 0;

    int busy_min() const { return revenue_air_min + reposition_air_min + charge_min + buffer_min_acc; }
};

struct SimConfig {
    int t_sim = 1200;
    int fleet = 1;
    std::uint64_t seed = 0;
    VehicleSpec spec;
    DemandRates rates;
    RouteNetwork net;
    bool reposition_enabled = true;
    bool charge_after_reposition = true;
    Placement placement = Placement::RoundRobin;
    NodeId placement_node = 0;  // used by Placement::SingleNode

    /// Throws ConfigError; includes the check that no demand sits on an
    /// infeasible route.
    void validate() const;
};

struct TripRecord {
    int vehicle_id = 0;
    TripKind kind = TripKind::Revenue;
    NodeId origin = 0;
    NodeId dest = 0;
    int depart_min = 0;
    int arrive_min = 0;  // may exceed t_sim for legs still airborne at the horizon
    std::vector<RiderId> rider_ids;

    bool operator==(const TripRecord&) const = default;
};

struct RiderLedger {
    RiderId rider_id = 0;
    NodeId origin = 0;
    NodeId dest = 0;
    int arrival_min = 0;
    std::optional<int> board_min;
    std::optional<int> dropoff_min;

    bool served() const { return dropoff_min.has_value(); }
    int wait() const { return *board_min - arrival_min; }
    bool operator==(const RiderLedger&) const = default;
};

struct SimResult {
    SimConfig config;
    std::vector<TripRecord> trips;
    std::vector<RiderLedger> riders;  // every generated rider, rider_id order
    std::vector<RiderId> unserved;    // still waiting at the horizon
    std::vector<Vehicle> vehicles;    // final snapshot

    std::size_t generated() const { return riders.size(); }
    std::size_t served() const;
    std::size_t onboard_at_end() const;
    /// Boarding waits of dropped-off riders, rider_id order.
    std::vector<int> served_waits() const;
};

/// Minute-stepped engine. Each minute runs inject, dispatch, advance and
/// reposition in that order; the phases are public so tests can drive them
/// one at a time.
class Simulation {
public:
    /// Riders must be sorted by arrival_min then rider_id, with ids equal to
    /// their index. Throws ConfigError for invalid configs or riders.
    Simulation(SimConfig cfg, std::vector<RiderRequest> riders);
    /// Places vehicles explicitly instead of by the placement rule.
    Simulation(SimConfig cfg, std::vector<RiderRequest> riders, const std::vector<NodeId>& initial_locations);

    void step(int minute);
    void inject(int minute);
    void dispatch(int minute);
    void advance(int minute);
    void reposition(int minute);

    /// Runs every remaining minute up to the horizon.
    void run();
    int next_minute() const { return next_minute_; }

    const std::vector<Vehicle>& vehicles() const { return vehicles_; }
    const std::vector<RiderLedger>& ledger() const { return ledger_; }
    const std::vector<TripRecord>& trips() const { return trips_; }
    /// Riders injected and not yet boarded, rider_id order.
    const std::vector<RiderId>& waiting() const { return waiting_; }

    std::size_t injected_count() const { return injected_; }
    std::size_t dropped_off_count() const { return dropped_off_; }
    std::size_t onboard_count() const;

    SimResult finish() &&;

private:
    void launch(Vehicle& v, NodeId dest, TripKind kind, int depart, std::vector<RiderId> riders);
    std::optional<std::size_t> nearest_idle(NodeId origin) const;
    std::vector<int> coverage() const;

    SimConfig cfg_;
    std::vector<RiderRequest> requests_;
    std::vector<RiderLedger> ledger_;
    std::vector<Vehicle> vehicles_;
    std::vector<TripRecord> trips_;
    std::vector<RiderId> waiting_;
    std::vector<int> leg_minutes_;  // buffer + ceil(air time), row-major n x n
    std::size_t injected_ = 0;
    std::size_t dropped_off_ = 0;
    int next_minute_ = 0;
};

/// Generates arrivals from cfg.rates with cfg.seed and runs the full horizon.
SimResult run_simulation(const SimConfig& cfg);

}  // namespace uamsim
