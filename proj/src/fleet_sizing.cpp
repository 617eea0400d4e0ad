#include "uamsim/fleet_sizing.hpp"

#include "uamsim/error.hpp"

#include <cmath>

namespace uamsim {

double cycle_time(double distance_mi, const VehicleSpec& spec)
{
    return flight_time(distance_mi, spec.cruise_speed_mph) + spec.turnaround_min + spec.buffer_min;
}

double avg_cycle_time(const RouteNetwork& net, const VehicleSpec& spec)
{
    const std::size_t n = net.size();
    if (n < 2) throw SizingError("average cycle time needs at least two nodes");
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) sum += cycle_time(net.dist(i, j), spec);
    return sum / static_cast<double>(n * (n - 1));
}

double cycles_per_hour(double avg_cycle_min)
{
    if (!(avg_cycle_min > 0.0)) throw SizingError("average cycle time must be positive");
    return 60.0 / avg_cycle_min;
}

double hourly_capacity(double cycles_per_hour, double pooling_q, int capacity)
{
    if (!(pooling_q > 0.0) || pooling_q > capacity)
        throw ValidationError("pooling q must lie in (0, capacity]");
    return cycles_per_hour * pooling_q;
}

double hourly_demand(const DemandRates& rates) { return 60.0 * rates.total(); }

double base_fleet(double demand_per_hr, double capacity_per_hr)
{
    if (!(capacity_per_hr > 0.0)) throw SizingError("hourly capacity must be positive");
    return demand_per_hr / capacity_per_hr;
}

long long robust_fleet(double n_base, double alpha)
{
    if (!(alpha > 0.0)) throw SizingError("safety factor must be positive");
    if (n_base < 0.0) throw SizingError("base fleet must be nonnegative");
    return static_cast<long long>(std::ceil(alpha * n_base));
}

bool alpha_in_band(double alpha) { return alpha >= kAlphaBandLow && alpha <= kAlphaBandHigh; }

SizingReport size_fleet(const RouteNetwork& net, const VehicleSpec& spec, const DemandRates& rates,
                        double alpha, double pooling_q)
{
    SizingReport r;
    r.safety_factor = alpha;
    r.pooling_q = pooling_q;
    r.avg_cycle_min = avg_cycle_time(net, spec);
    r.cycles_per_hour = cycles_per_hour(r.avg_cycle_min);
    r.pax_capacity_per_ac_hr = hourly_capacity(r.cycles_per_hour, pooling_q, spec.capacity);
    r.demand_per_hr = hourly_demand(rates);
    r.base_fleet = base_fleet(r.demand_per_hr, r.pax_capacity_per_ac_hr);
    r.fleet = robust_fleet(r.base_fleet, alpha);
    r.alpha_in_band = alpha_in_band(alpha);
    return r;
}

}  // namespace uamsim
