#pragma once

#include "uamsim/demand.hpp"
#include "uamsim/geo_network.hpp"

namespace uamsim {

/// Recommended band for the robustness multiplier; values outside it warn.
inline constexpr double kAlphaBandLow = 2.0;
inline constexpr double kAlphaBandHigh = 5.0;

struct SizingReport {
    double avg_cycle_min = 0.0;
    double cycles_per_hour = 0.0;
    double pax_capacity_per_ac_hr = 0.0;
    double demand_per_hr = 0.0;
    double base_fleet = 0.0;
    double safety_factor = 0.0;
    long long fleet = 0;
    double pooling_q = 0.0;
    bool alpha_in_band = true;
};

/// Minutes airborne for a leg of `distance_mi` at `speed_mph`.
inline double flight_time(double distance_mi, double speed_mph) { return 60.0 * distance_mi / speed_mph; }

/// Airborne time plus turnaround plus taxi/takeoff/landing buffer.
double cycle_time(double distance_mi, const VehicleSpec& spec);

/// Unweighted mean of cycle_time over all ordered pairs i != j.
/// Throws SizingError with fewer than two nodes.
double avg_cycle_time(const RouteNetwork& net, const VehicleSpec& spec);

double cycles_per_hour(double avg_cycle_min);

/// Pooled passengers per aircraft-hour. Throws ValidationError unless
/// 0 < q <= capacity.
double hourly_capacity(double cycles_per_hour, double pooling_q, int capacity);

double hourly_demand(const DemandRates& rates);

double base_fleet(double demand_per_hr, double capacity_per_hr);

/// ceil(alpha * n_base). Does not throw for alpha outside [2, 5]; callers
/// check alpha_in_band().
long long robust_fleet(double n_base, double alpha);

bool alpha_in_band(double alpha);

/// Runs the whole estimator chain.
SizingReport size_fleet(const RouteNetwork& net, const VehicleSpec& spec, const DemandRates& rates,
                        double alpha = 2.0, double pooling_q = 3.0);

}  // namespace uamsim
