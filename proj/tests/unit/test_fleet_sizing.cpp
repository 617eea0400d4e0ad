#include "doctest.h"

#include "test_support.hpp"
#include "uamsim/error.hpp"
#include "uamsim/fleet_sizing.hpp"

#include <random>

using namespace uamsim;
using namespace uamsim::testing;

TEST_CASE("flight_time")
{
    CHECK(flight_time(150.0, 150.0) == 60.0);
    CHECK(flight_time(0.0, 150.0) == 0.0);
    CHECK(flight_time(kOracleSfoSjc, 150.0) == doctest::Approx(12.08).epsilon(0.001));
}

TEST_CASE("cycle_time adds turnaround and buffer")
{
    const VehicleSpec spec;
    CHECK(cycle_time(0.0, spec) == 15.0);
    CHECK(cycle_time(150.0, spec) == 75.0);
    CHECK(cycle_time(kOracleSfoSjc, spec) == doctest::Approx(27.08).epsilon(0.001));
}

TEST_CASE("avg_cycle_time")
{
    const VehicleSpec spec;

    SUBCASE("Bay Area nodes against the oracle mean")
    {
        const double unordered[] = {kOracleSfoOak, kOracleSfoSjc, kOracleSfoPao,
                                    kOracleOakSjc, kOracleOakPao, kOracleSjcPao};
        double mean_d = 0.0;
        for (const double d : unordered) mean_d += d / 6.0;
        const double expected = 60.0 * mean_d / 150.0 + 15.0;
        CHECK(std::abs(mean_d - 19.97) < 0.01);
        CHECK(avg_cycle_time(bay_area_network(), spec) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(std::abs(avg_cycle_time(bay_area_network(), spec) - 23.0) <= 0.1);
    }
    SUBCASE("co-located nodes cycle in pure overhead")
    {
        const auto net = build_network({{0, "A", 10, 10}, {1, "B", 10, 10}, {2, "C", 10, 10}}, spec);
        CHECK(avg_cycle_time(net, spec) == 15.0);
    }
    SUBCASE("needs two nodes")
    {
        const auto net = build_network({{0, "A", 10, 10}}, spec);
        CHECK_THROWS_AS(avg_cycle_time(net, spec), SizingError);
    }
}

TEST_CASE("estimator steps")
{
    CHECK(cycles_per_hour(60.0) == 1.0);
    CHECK(cycles_per_hour(30.0) == 2.0);
    CHECK(cycles_per_hour(23.0) == doctest::Approx(2.61).epsilon(0.001));
    CHECK_THROWS_AS(cycles_per_hour(0.0), SizingError);

    CHECK(hourly_capacity(2.61, 3.0, 4) == doctest::Approx(7.83).epsilon(1e-12));
    CHECK(hourly_capacity(2.61, 1.0, 4) == 2.61);
    CHECK(hourly_capacity(0.0, 3.0, 4) == 0.0);
    CHECK_THROWS_AS(hourly_capacity(2.61, 5.0, 4), ValidationError);
    CHECK_THROWS_AS(hourly_capacity(2.61, 0.0, 4), ValidationError);

    DemandRates r = zero_rates(4);
    CHECK(hourly_demand(r) == 0.0);
    r.lambda(0, 1) = 1.0;
    CHECK(hourly_demand(r) == 60.0);

    CHECK(base_fleet(30.96, 7.83) == doctest::Approx(3.954).epsilon(0.001));
    CHECK(base_fleet(0.0, 7.83) == 0.0);
    CHECK(base_fleet(7.5, 7.5) == 1.0);
    CHECK_THROWS_AS(base_fleet(1.0, 0.0), SizingError);

    CHECK(robust_fleet(3.954, 2.0) == 8);
    CHECK(robust_fleet(3.954, 5.0) == 20);
    CHECK(robust_fleet(0.0, 2.0) == 0);
    CHECK(robust_fleet(3.0, 2.0) == 6);
    CHECK_FALSE(alpha_in_band(1.5));
    CHECK(alpha_in_band(2.0));
    CHECK(alpha_in_band(5.0));
    CHECK_FALSE(alpha_in_band(5.5));
    CHECK_NOTHROW(robust_fleet(3.0, 7.0));
}

TEST_CASE("full chain on the baseline scenario")
{
    const auto sc = baseline_scenario();
    const auto r2 = size_fleet(sc.net, sc.config.spec, sc.rates, 2.0, 3.0);
    CHECK(std::abs(r2.avg_cycle_min - 23.0) <= 0.1);
    CHECK(std::abs(r2.cycles_per_hour - 2.61) <= 0.005);
    CHECK(std::abs(r2.pax_capacity_per_ac_hr - 7.83) <= 0.005);
    CHECK(std::abs(r2.demand_per_hr - 30.96) <= 1e-9);
    CHECK(std::abs(r2.base_fleet - 3.95) <= 0.005);
    CHECK(r2.fleet == 8);
    CHECK(r2.base_fleet <= static_cast<double>(r2.fleet));
    CHECK(size_fleet(sc.net, sc.config.spec, sc.rates, 5.0, 3.0).fleet == 20);

    const auto zero = size_fleet(sc.net, sc.config.spec, zero_rates(4), 2.0, 3.0);
    CHECK(zero.fleet == 0);
}

TEST_CASE("sizing properties")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.05, 1.0);

    SUBCASE("fleet is monotone in alpha and demand")
    {
        for (int k = 0; k < 200; ++k) {
            const double n_base = 10.0 * unit(rng);
            const double a1 = 1.0 + 4.0 * unit(rng), a2 = a1 + unit(rng);
            CHECK(robust_fleet(n_base, a1) <= robust_fleet(n_base, a2));
            const double c = 1.0 + 10.0 * unit(rng), d1 = 50.0 * unit(rng), d2 = d1 + unit(rng);
            CHECK(robust_fleet(base_fleet(d1, c), 2.0) <= robust_fleet(base_fleet(d2, c), 2.0));
            CHECK(hourly_capacity(2.0, 2.0, 4) == 2.0 * hourly_capacity(2.0, 1.0, 4));
        }
    }
    SUBCASE("with q = 1 and one OD pair the base fleet is lambda times cycle time")
    {
        for (int k = 0; k < 100; ++k) {
            VehicleSpec spec;
            spec.cruise_speed_mph = 80.0 + 200.0 * unit(rng);
            spec.turnaround_min = 1 + static_cast<int>(20 * unit(rng));
            spec.buffer_min = 1 + static_cast<int>(10 * unit(rng));
            const auto net = build_network({{0, "A", 37.0, -122.0}, {1, "B", 37.0 + 0.3 * unit(rng), -122.0}}, spec);
            DemandRates rates = zero_rates(2);
            rates.lambda(0, 1) = 2.0 * unit(rng);
            const auto r = size_fleet(net, spec, rates, 1.0, 1.0);
            const double cycle = cycle_time(net.dist(0, 1), spec);
            CHECK(r.base_fleet == doctest::Approx(rates.lambda(0, 1) * cycle).epsilon(1e-12));
        }
    }
    SUBCASE("ceiling is invariant under n*k, alpha/k at exact rationals")
    {
        const double cases[][3] = {{3.5, 2.0, 2.0}, {1.25, 4.0, 4.0}, {7.0, 0.5, 0.5}, {3.954, 2.0, 2.0}, {0.75, 2.0, 8.0}};
        for (const auto& c : cases) CHECK(robust_fleet(c[0], c[1]) == robust_fleet(c[0] * c[2], c[1] / c[2]));
    }
}
