#include "uamsim/dispatch_sim.hpp"

#include "uamsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace uamsim {

std::string_view to_string(VehicleState s)
{
    switch (s) {
    case VehicleState::Idle: return "Idle";
    case VehicleState::Flying: return "Flying";
    case VehicleState::Charging: return "Charging";
    case VehicleState::Repositioning: return "Repositioning";
    }
    return "?";
}

std::string_view to_string(TripKind k) { return k == TripKind::Revenue ? "Revenue" : "Reposition"; }

std::string_view to_string(Placement p) { return p == Placement::RoundRobin ? "round_robin" : "single_node"; }

Placement placement_from_string(std::string_view s)
{
    if (s == "round_robin") return Placement::RoundRobin;
    if (s == "single_node") return Placement::SingleNode;
    throw ConfigError("unknown initial placement '" + std::string(s) + "'");
}

void SimConfig::validate() const
{
    if (t_sim <= 0) throw ConfigError("t_sim must be positive");
    if (fleet < 1) throw ConfigError("fleet must be at least 1");
    try {
        spec.validate();
    } catch (const ValidationError& e) {
        throw ConfigError(e.what());
    }
    const std::size_t n = net.size();
    if (n == 0) throw ConfigError("empty route network");
    if (rates.size() != n) throw ConfigError("demand rates do not match the network size");
    if (placement == Placement::SingleNode && placement_node >= n)
        throw ConfigError("placement node out of range");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || !(rates.lambda(i, j) > 0.0)) continue;
            if (!net.feasible(i, j))
                throw ConfigError("demand on infeasible route " + net.nodes[i].code + "->" +
                                  net.nodes[j].code + " (" + std::to_string(net.dist(i, j)) + " mi)");
        }
    }
}

std::size_t SimResult::served() const
{
    return static_cast<std::size_t>(std::count_if(riders.begin(), riders.end(),
                                                  [](const RiderLedger& r) { return r.served(); }));
}

std::size_t SimResult::onboard_at_end() const
{
    std::size_t count = 0;
    for (const auto& v : vehicles) count += v.onboard.size();
    return count;
}

std::vector<int> SimResult::served_waits() const
{
    std::vector<int> waits;
    for (const auto& r : riders)
        if (r.served()) waits.push_back(r.wait());
    return waits;
}

namespace {

std::vector<NodeId> placement_locations(const SimConfig& cfg)
{
    std::vector<NodeId> out(static_cast<std::size_t>(cfg.fleet));
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = cfg.placement == Placement::RoundRobin ? k % cfg.net.size() : cfg.placement_node;
    return out;
}

}  // namespace

Simulation::Simulation(SimConfig cfg, std::vector<RiderRequest> riders)
    : Simulation(cfg, std::move(riders), placement_locations(cfg))
{
}

Simulation::Simulation(SimConfig cfg, std::vector<RiderRequest> riders,
                       const std::vector<NodeId>& initial_locations)
    : cfg_(std::move(cfg)), requests_(std::move(riders))
{
    cfg_.validate();
    const std::size_t n = cfg_.net.size();
    if (initial_locations.size() != static_cast<std::size_t>(cfg_.fleet))
        throw ConfigError("initial locations must list one node per vehicle");

    for (std::size_t k = 0; k < requests_.size(); ++k) {
        const auto& r = requests_[k];
        if (r.rider_id != k) throw ConfigError("rider ids must equal their position");
        if (r.origin >= n || r.dest >= n || r.origin == r.dest)
            throw ConfigError("rider " + std::to_string(r.rider_id) + " has an invalid OD pair");
        if (r.arrival_min < 0 || r.arrival_min >= cfg_.t_sim)
            throw ConfigError("rider " + std::to_string(r.rider_id) + " arrives outside the horizon");
        if (k > 0 && r.arrival_min < requests_[k - 1].arrival_min)
            throw ConfigError("riders must be sorted by arrival minute");
        if (!cfg_.net.feasible(r.origin, r.dest))
            throw ConfigError("rider " + std::to_string(r.rider_id) + " requests an infeasible route");
        ledger_.push_back({r.rider_id, r.origin, r.dest, r.arrival_min, std::nullopt, std::nullopt});
    }

    vehicles_.resize(initial_locations.size());
    for (std::size_t k = 0; k < vehicles_.size(); ++k) {
        if (initial_locations[k] >= n) throw ConfigError("initial location out of range");
        vehicles_[k].id = static_cast<int>(k);
        vehicles_[k].location = initial_locations[k];
    }

    leg_minutes_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j)
                leg_minutes_[i * n + j] =
                    cfg_.spec.buffer_min + static_cast<int>(std::ceil(cfg_.net.air_time(i, j)));
}

void Simulation::inject(int minute)
{
    while (injected_ < requests_.size() && requests_[injected_].arrival_min <= minute) {
        waiting_.push_back(requests_[injected_].rider_id);
        ++injected_;
    }
}

std::optional<std::size_t> Simulation::nearest_idle(NodeId origin) const
{
    std::optional<std::size_t> best;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < vehicles_.size(); ++k) {
        const auto& v = vehicles_[k];
        if (v.state != VehicleState::Idle) continue;
        if (v.location != origin && !cfg_.net.feasible(v.location, origin)) continue;
        const double d = v.location == origin ? 0.0 : cfg_.net.dist(v.location, origin);
        if (d < best_dist) {
            best_dist = d;
            best = k;
        }
    }
    return best;
}

std::vector<int> Simulation::coverage() const
{
    std::vector<int> cover(cfg_.net.size(), 0);
    for (const auto& v : vehicles_)
        if (v.committed_to) ++cover[*v.committed_to];
    return cover;
}

void Simulation::launch(Vehicle& v, NodeId dest, TripKind kind, int depart, std::vector<RiderId> riders)
{
    const std::size_t n = cfg_.net.size();
    const int duration = leg_minutes_[v.location * n + dest];
    trips_.push_back({v.id, kind, v.location, dest, depart, depart + duration, riders});
    v.state = kind == TripKind::Revenue ? VehicleState::Flying : VehicleState::Repositioning;
    v.dest = dest;
    v.minutes_remaining = duration;
    v.leg_elapsed = 0;
    v.onboard = std::move(riders);
    v.committed_to = kind == TripKind::Reposition ? std::optional<NodeId>(dest) : std::nullopt;
}

void Simulation::dispatch(int minute)
{
    auto cover = coverage();
    std::vector<RiderId> boarded;
    const auto is_boarded = [&](RiderId id) {
        return std::find(boarded.begin(), boarded.end(), id) != boarded.end();
    };

    for (const RiderId id : waiting_) {
        if (is_boarded(id)) continue;
        const auto& rider = ledger_[id];
        const auto pick = nearest_idle(rider.origin);

        if (pick && vehicles_[*pick].location == rider.origin) {
            std::vector<RiderId> group;
            for (const RiderId other : waiting_) {
                if (static_cast<int>(group.size()) == cfg_.spec.capacity) break;
                if (other < id || is_boarded(other)) continue;
                const auto& o = ledger_[other];
                if (o.origin == rider.origin && o.dest == rider.dest) group.push_back(other);
            }
            for (const RiderId g : group) {
                ledger_[g].board_min = minute;
                boarded.push_back(g);
            }
            launch(vehicles_[*pick], rider.dest, TripKind::Revenue, minute, std::move(group));
            continue;
        }

        // A vehicle already heading here will pick this rider up.
        if (cover[rider.origin] > 0) {
            --cover[rider.origin];
            continue;
        }
        if (pick) launch(vehicles_[*pick], rider.origin, TripKind::Reposition, minute, {});
    }

    if (!boarded.empty()) {
        std::erase_if(waiting_, [&](RiderId id) { return is_boarded(id); });
    }
}

void Simulation::advance(int minute)
{
    for (auto& v : vehicles_) {
        switch (v.state) {
        case VehicleState::Idle:
            ++v.idle_min;
            break;
        case VehicleState::Flying:
        case VehicleState::Repositioning: {
            const bool revenue = v.state == VehicleState::Flying;
            if (v.leg_elapsed < cfg_.spec.buffer_min)
                ++v.buffer_min_acc;
            else if (revenue)
                ++v.revenue_air_min;
            else
                ++v.reposition_air_min;
            ++v.leg_elapsed;
            if (--v.minutes_remaining > 0) break;

            v.location = v.dest;
            for (const RiderId id : v.onboard) ledger_[id].dropoff_min = minute + 1;
            dropped_off_ += v.onboard.size();
            v.onboard.clear();
            if (revenue || cfg_.charge_after_reposition) {
                v.state = VehicleState::Charging;
                v.minutes_remaining = cfg_.spec.turnaround_min;
            } else {
                v.state = VehicleState::Idle;
                v.committed_to.reset();
            }
            break;
        }
        case VehicleState::Charging:
            ++v.charge_min;
            if (--v.minutes_remaining == 0) {
                v.state = VehicleState::Idle;
                v.committed_to.reset();
            }
            break;
        }
    }
}

void Simulation::reposition(int minute)
{
    if (!cfg_.reposition_enabled || minute + 1 >= cfg_.t_sim) return;

    const std::size_t n = cfg_.net.size();
    std::vector<int> waiting_at(n, 0);
    for (const RiderId id : waiting_) ++waiting_at[ledger_[id].origin];
    auto cover = coverage();

    for (auto& v : vehicles_) {
        if (v.state != VehicleState::Idle || waiting_at[v.location] > 0) continue;
        std::optional<NodeId> target;
        for (NodeId j = 0; j < n; ++j) {
            if (j == v.location || !cfg_.net.feasible(v.location, j)) continue;
            if (waiting_at[j] - cover[j] <= 0) continue;
            if (!target || cfg_.rates.origin_rate(j) > cfg_.rates.origin_rate(*target)) target = j;
        }
        if (!target) continue;
        ++cover[*target];
        // This minute is already accounted as idle; the leg starts next minute.
        launch(v, *target, TripKind::Reposition, minute + 1, {});
    }
}

void Simulation::step(int minute)
{
    inject(minute);
    dispatch(minute);
    advance(minute);
    reposition(minute);
    next_minute_ = minute + 1;
}

void Simulation::run()
{
    while (next_minute_ < cfg_.t_sim) step(next_minute_);
}

std::size_t Simulation::onboard_count() const
{
    std::size_t count = 0;
    for (const auto& v : vehicles_) count += v.onboard.size();
    return count;
}

SimResult Simulation::finish() &&
{
    SimResult result;
    result.config = std::move(cfg_);
    result.trips = std::move(trips_);
    result.riders = std::move(ledger_);
    result.unserved = std::move(waiting_);
    result.vehicles = std::move(vehicles_);
    return result;
}

SimResult run_simulation(const SimConfig& cfg)
{
    cfg.validate();
    Simulation sim(cfg, generate_arrivals(cfg.rates, cfg.t_sim, cfg.seed));
    sim.run();
    return std::move(sim).finish();
}

}  // namespace uamsim
