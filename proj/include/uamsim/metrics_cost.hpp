#pragma once

#include "uamsim/dispatch_sim.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace uamsim {

inline constexpr double kWaitTargetMin = 10.0;
inline constexpr double kAirUtilizationLow = 0.60;
inline constexpr double kAirUtilizationHigh = 0.70;
inline constexpr double kLoadFactorTarget = 0.70;

enum class UtilizationBand { UnderUtilized, InBand, Overstressed };
std::string_view to_string(UtilizationBand b);

struct WaitStats {
    double mean = 0.0;
    int p95 = 0;
};

struct TargetFlags {
    bool wait_ok = false;
    bool u_air_ok = false;
    UtilizationBand u_air_band = UtilizationBand::UnderUtilized;
    bool load_ok = false;
};

struct MetricsReport {
    std::size_t generated = 0;
    std::size_t served = 0;
    std::size_t unserved = 0;
    std::size_t onboard_at_end = 0;
    std::optional<double> mean_wait;  // empty when nobody was served
    std::optional<int> p95_wait;
    double u_air = 0.0;
    double u_air_incl_reposition = 0.0;
    double u_cycle = 0.0;
    SquareMatrix<long long> throughput;
    std::size_t revenue_trips = 0;
    std::size_t reposition_trips = 0;
    std::optional<double> load_factor;  // empty without revenue trips
    TargetFlags targets;
};

/// Mean and nearest-rank 95th percentile. Throws MetricsError on an empty list.
WaitStats wait_stats(std::span<const int> waits);

/// Nearest-rank percentile for q in (0, 1].
int nearest_rank(std::span<const int> values, double q);

bool check_wait_target(double mean_wait);
UtilizationBand check_utilization_band(double u_air);

/// Revenue airborne minutes over fleet-minutes.
double air_utilization(const SimResult& result);
/// Revenue plus reposition airborne minutes over fleet-minutes.
double air_utilization_inclusive(const SimResult& result);
/// Airborne, buffer and charging minutes over fleet-minutes.
double cycle_utilization(const SimResult& result);

/// Dropped-off riders per ordered pair.
SquareMatrix<long long> throughput_matrix(const SimResult& result);

/// Mean seat occupancy over revenue trips. Throws MetricsError without any.
double load_factor(std::span<const TripRecord> trips, int capacity);

MetricsReport evaluate(const SimResult& result);

struct CostParams {
    double op_cost_per_hr = 605.0;
    double value_of_time_per_hr = 40.0;
    double car_cost_per_mi = 0.58;
    double car_speed_mph = 20.0;
    double circuity = 1.3;

    /// Throws ValidationError.
    void validate() const;
};

struct UamCost {
    double mission_min = 0.0;
    double operating_share = 0.0;
    double time_value = 0.0;
    double total = 0.0;
};

struct CarCost {
    double road_mi = 0.0;
    double minutes = 0.0;
    double cost = 0.0;
};

/// Per-rider effective cost of one UAM mission. The whole-mission operating
/// cost is split equally among the riders aboard.
UamCost effective_cost_uam(double distance_mi, int riders_aboard, double wait_min,
                           const CostParams& params, const VehicleSpec& spec);

CarCost effective_cost_car(double gc_distance_mi, const CostParams& params);

/// Fractional door-to-door time saved versus driving. Negative when UAM is slower.
double time_savings(double car_min, double uam_door_min);

struct SweepRow {
    int fleet = 0;
    int seeds = 0;
    double mean_wait = 0.0;
    double p95_wait = 0.0;
    double served = 0.0;
    double unserved = 0.0;
    double u_air = 0.0;
    double u_cycle = 0.0;
    double load_factor = 0.0;
    bool wait_ok = false;
    UtilizationBand u_air_band = UtilizationBand::UnderUtilized;
};

struct RefineResult {
    std::optional<int> fleet;  // empty: no fleet in [n_min, n_max] meets the wait target
    std::vector<SweepRow> table;
};

/// Simulates every fleet size in [n_min, n_max] with seeds base.seed,
/// base.seed + 1, ... and averages per-run metrics. A run where riders exist
/// but none was dropped off scores the horizon length as its wait. Returns
/// the smallest fleet whose seed-averaged mean wait meets the target. The
/// (fleet, seed) grid runs on `threads` workers; output does not depend on it.
RefineResult refine_fleet(const SimConfig& base, int seeds, int n_min, int n_max, unsigned threads = 0);

}  // namespace uamsim
