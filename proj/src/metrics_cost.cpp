#include "uamsim/metrics_cost.hpp"

#include "uamsim/error.hpp"
#include "uamsim/fleet_sizing.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

namespace uamsim {

std::string_view to_string(UtilizationBand b)
{
    switch (b) {
    case UtilizationBand::UnderUtilized: return "under_utilized";
    case UtilizationBand::InBand: return "in_band";
    case UtilizationBand::Overstressed: return "overstressed";
    }
    return "?";
}

int nearest_rank(std::span<const int> values, double q)
{
    if (values.empty()) throw MetricsError("percentile of an empty sample");
    if (!(q > 0.0 && q <= 1.0)) throw MetricsError("percentile level must lie in (0, 1]");
    std::vector<int> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

WaitStats wait_stats(std::span<const int> waits)
{
    if (waits.empty()) throw MetricsError("no served riders: wait statistics are undefined");
    const long long sum = std::accumulate(waits.begin(), waits.end(), 0LL);
    return {static_cast<double>(sum) / static_cast<double>(waits.size()), nearest_rank(waits, 0.95)};
}

bool check_wait_target(double mean_wait) { return mean_wait <= kWaitTargetMin; }

UtilizationBand check_utilization_band(double u_air)
{
    if (u_air < kAirUtilizationLow) return UtilizationBand::UnderUtilized;
    if (u_air > kAirUtilizationHigh) return UtilizationBand::Overstressed;
    return UtilizationBand::InBand;
}

namespace {

double fleet_minutes(const SimResult& r)
{
    return static_cast<double>(static_cast<long long>(r.vehicles.size()) * r.config.t_sim);
}

template <typename F>
double utilization(const SimResult& r, F minutes_of)
{
    if (r.vehicles.empty() || r.config.t_sim <= 0) throw MetricsError("utilization needs a fleet and a horizon");
    long long sum = 0;
    for (const auto& v : r.vehicles) sum += minutes_of(v);
    return static_cast<double>(sum) / fleet_minutes(r);
}

}  // namespace

double air_utilization(const SimResult& result)
{
    return utilization(result, [](const Vehicle& v) { return v.revenue_air_min; });
}

double air_utilization_inclusive(const SimResult& result)
{
    return utilization(result, [](const Vehicle& v) { return v.revenue_air_min + v.reposition_air_min; });
}

double cycle_utilization(const SimResult& result)
{
    return utilization(result, [](const Vehicle& v) { return v.busy_min(); });
}

SquareMatrix<long long> throughput_matrix(const SimResult& result)
{
    SquareMatrix<long long> s(result.config.net.size(), 0);
    for (const auto& r : result.riders)
        if (r.served()) ++s(r.origin, r.dest);
    return s;
}

double load_factor(std::span<const TripRecord> trips, int capacity)
{
    if (capacity <= 0) throw ValidationError("capacity must be positive");
    long long seats_used = 0;
    long long flights = 0;
    for (const auto& t : trips) {
        if (t.kind != TripKind::Revenue) continue;
        seats_used += static_cast<long long>(t.rider_ids.size());
        ++flights;
    }
    if (flights == 0) throw MetricsError("no revenue trips: load factor is undefined");
    return static_cast<double>(seats_used) / static_cast<double>(flights * capacity);
}

MetricsReport evaluate(const SimResult& result)
{
    MetricsReport m;
    m.generated = result.generated();
    m.served = result.served();
    m.unserved = result.unserved.size();
    m.onboard_at_end = result.onboard_at_end();

    const auto waits = result.served_waits();
    if (!waits.empty()) {
        const auto ws = wait_stats(waits);
        m.mean_wait = ws.mean;
        m.p95_wait = ws.p95;
    }
    m.u_air = air_utilization(result);
    m.u_air_incl_reposition = air_utilization_inclusive(result);
    m.u_cycle = cycle_utilization(result);
    m.throughput = throughput_matrix(result);
    for (const auto& t : result.trips) (t.kind == TripKind::Revenue ? m.revenue_trips : m.reposition_trips)++;
    if (m.revenue_trips > 0) m.load_factor = load_factor(result.trips, result.config.spec.capacity);

    // With no riders at all the wait target holds vacuously.
    m.targets.wait_ok = m.mean_wait ? check_wait_target(*m.mean_wait) : m.generated == 0;
    m.targets.u_air_band = check_utilization_band(m.u_air);
    m.targets.u_air_ok = m.targets.u_air_band == UtilizationBand::InBand;
    m.targets.load_ok = m.load_factor && *m.load_factor >= kLoadFactorTarget;
    return m;
}

void CostParams::validate() const
{
    if (!(op_cost_per_hr > 0.0)) throw ValidationError("op_cost_per_hr must be positive");
    if (!(value_of_time_per_hr > 0.0)) throw ValidationError("value_of_time_per_hr must be positive");
    if (!(car_cost_per_mi > 0.0)) throw ValidationError("car_cost_per_mi must be positive");
    if (!(car_speed_mph > 0.0)) throw ValidationError("car_speed_mph must be positive");
    if (!(circuity >= 1.0)) throw ValidationError("circuity must be at least 1");
}

UamCost effective_cost_uam(double distance_mi, int riders_aboard, double wait_min,
                           const CostParams& params, const VehicleSpec& spec)
{
    if (riders_aboard < 1) throw ValidationError("a mission needs at least one rider");
    UamCost c;
    c.mission_min = spec.buffer_min + flight_time(distance_mi, spec.cruise_speed_mph);
    c.operating_share = params.op_cost_per_hr * (c.mission_min / 60.0) / riders_aboard;
    c.time_value = params.value_of_time_per_hr * (wait_min + c.mission_min) / 60.0;
    c.total = c.operating_share + c.time_value;
    return c;
}

CarCost effective_cost_car(double gc_distance_mi, const CostParams& params)
{
    if (!(params.car_speed_mph > 0.0)) throw ValidationError("car_speed_mph must be positive");
    CarCost c;
    c.road_mi = params.circuity * gc_distance_mi;
    c.minutes = 60.0 * c.road_mi / params.car_speed_mph;
    c.cost = params.car_cost_per_mi * c.road_mi + params.value_of_time_per_hr * c.minutes / 60.0;
    return c;
}

double time_savings(double car_min, double uam_door_min)
{
    if (!(car_min > 0.0)) throw ValidationError("car travel time must be positive");
    return (car_min - uam_door_min) / car_min;
}

namespace {

struct RunSummary {
    double mean_wait = 0.0;
    double p95_wait = 0.0;
    double served = 0.0;
    double unserved = 0.0;
    double u_air = 0.0;
    double u_cycle = 0.0;
    double load_factor = 0.0;
};

RunSummary summarize(const SimResult& r)
{
    const auto m = evaluate(r);
    RunSummary s;
    const double starved = m.generated > 0 ? static_cast<double>(r.config.t_sim) : 0.0;
    s.mean_wait = m.mean_wait.value_or(starved);
    s.p95_wait = m.p95_wait ? static_cast<double>(*m.p95_wait) : starved;
    s.served = static_cast<double>(m.served);
    s.unserved = static_cast<double>(m.unserved);
    s.u_air = m.u_air;
    s.u_cycle = m.u_cycle;
    s.load_factor = m.load_factor.value_or(0.0);
    return s;
}

}  // namespace

RefineResult refine_fleet(const SimConfig& base, int seeds, int n_min, int n_max, unsigned threads)
{
    if (n_min < 1) throw ConfigError("n_min must be at least 1");
    if (n_max < n_min) throw ConfigError("n_max must be at least n_min");
    if (seeds < 1) throw ConfigError("at least one seed is required");
    base.validate();

    const int fleets = n_max - n_min + 1;
    const std::size_t jobs = static_cast<std::size_t>(fleets) * static_cast<std::size_t>(seeds);
    std::vector<RunSummary> runs(jobs);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < jobs; k = next++) {
            SimConfig cfg = base;
            cfg.fleet = n_min + static_cast<int>(k / static_cast<std::size_t>(seeds));
            cfg.seed = base.seed + k % static_cast<std::size_t>(seeds);
            runs[k] = summarize(run_simulation(cfg));
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }

    RefineResult out;
    for (int f = 0; f < fleets; ++f) {
        SweepRow row;
        row.fleet = n_min + f;
        row.seeds = seeds;
        for (int s = 0; s < seeds; ++s) {
            const auto& r = runs[static_cast<std::size_t>(f * seeds + s)];
            row.mean_wait += r.mean_wait;
            row.p95_wait += r.p95_wait;
            row.served += r.served;
            row.unserved += r.unserved;
            row.u_air += r.u_air;
            row.u_cycle += r.u_cycle;
            row.load_factor += r.load_factor;
        }
        const double k = seeds;
        row.mean_wait /= k;
        row.p95_wait /= k;
        row.served /= k;
        row.unserved /= k;
        row.u_air /= k;
        row.u_cycle /= k;
        row.load_factor /= k;
        row.wait_ok = check_wait_target(row.mean_wait);
        row.u_air_band = check_utilization_band(row.u_air);
        if (row.wait_ok && !out.fleet) out.fleet = row.fleet;
        out.table.push_back(row);
    }
    return out;
}

}  // namespace uamsim
