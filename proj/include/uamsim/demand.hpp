#pragma once

#include "uamsim/geo_network.hpp"

#include <cstdint>
#include <filesystem>
#include <random>
#include <string_view>
#include <vector>

namespace uamsim {

/// Monthly passengers per ordered node pair. Diagonal is always zero.
struct ODMatrix {
    SquareMatrix<long long> counts;

    long long total() const;
};

/// Per-minute Poisson arrival rates derived from an ODMatrix.
struct DemandRates {
    SquareMatrix<double> lambda;  // passengers per minute
    double days_per_month = 30.0;
    double op_hours_per_day = 20.0;

    std::size_t size() const { return lambda.size(); }
    /// Sum of all off-diagonal rates.
    double total() const;
    /// Sum of row i: the rate at which riders appear at node i.
    double origin_rate(NodeId i) const;
};

struct RiderRequest {
    std::uint64_t rider_id = 0;
    NodeId origin = 0;
    NodeId dest = 0;
    int arrival_min = 0;

    bool operator==(const RiderRequest&) const = default;
};

/// Name recorded in reports so runs from different builds are comparable.
inline constexpr std::string_view kRngName = "mt19937_64/u53";

/// The simulator's random stream: std::mt19937_64 (output fully specified by
/// the C++ standard) with uniforms taken from the top 53 bits, so draws are
/// identical on every platform. Standard distribution classes are avoided
/// because their algorithms are implementation-defined.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Poisson(mean) via the product-of-uniforms method. Intended for small
    /// means (well under 10 per draw).
    int poisson(double mean);

private:
    std::mt19937_64 engine_;
};

/// Reads `origin,dest,monthly_pax` rows against the network's node codes.
/// Unlisted pairs are zero. Throws IngestionError for unknown codes, bad
/// numbers or duplicate pairs, ValidationError for negative counts or a
/// positive count on the diagonal.
ODMatrix ingest_od_csv(const std::filesystem::path& path, const RouteNetwork& net);

/// lambda_ij = OD_ij / (days * hours * 60).
DemandRates compute_rates(const ODMatrix& od, double days_per_month = 30.0,
                          double op_hours_per_day = 20.0);

/// Expected number of arrivals over a horizon of t_sim minutes.
double expected_arrivals(const DemandRates& rates, double t_sim);

/// Draws one Poisson count per (minute, ordered pair), minutes ascending and
/// pairs in lexicographic (i, j) order, from a single stream seeded with
/// `seed`. Pairs with a zero rate consume no draws. Rider ids follow
/// generation order starting at 0.
std::vector<RiderRequest> generate_arrivals(const DemandRates& rates, int t_sim, std::uint64_t seed);

}  // namespace uamsim
