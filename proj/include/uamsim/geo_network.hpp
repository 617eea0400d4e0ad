#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace uamsim {

using NodeId = std::size_t;

/// Mean Earth radius in statute miles.
inline constexpr double kEarthRadiusMiles = 3958.8;

struct GeoNode {
    NodeId id = 0;
    std::string code;
    double lat = 0.0;  // degrees
    double lon = 0.0;  // degrees
};

/// eVTOL performance and cost constants. Distances in miles, times in
/// minutes, money in USD.
struct VehicleSpec {
    double cruise_speed_mph = 150.0;
    double max_range_mi = 60.0;
    double optimal_leg_mi = 20.0;  // stored only; drives no behavior
    int turnaround_min = 10;
    int buffer_min = 5;
    int capacity = 4;
    double op_cost_per_hr = 605.0;
    std::pair<double, double> altitude_band_ft{500.0, 3000.0};  // recorded, no behavior

    /// Throws ValidationError if any field is nonpositive or optimal_leg > max_range.
    void validate() const;
};

/// Dense n x n matrix in row-major order.
template <typename T>
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, Cell{fill}) {}

    std::size_t size() const { return n_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j].value; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j].value; }

    bool operator==(const SquareMatrix&) const = default;

private:
    // Wrapped so that SquareMatrix<bool> hands out real references.
    struct Cell {
        T value;
        bool operator==(const Cell&) const = default;
    };
    std::size_t n_ = 0;
    std::vector<Cell> data_;
};

struct RouteNetwork {
    std::vector<GeoNode> nodes;
    SquareMatrix<double> dist;      // miles
    SquareMatrix<double> air_time;  // minutes
    SquareMatrix<bool> feasible;    // diagonal always false

    std::size_t size() const { return nodes.size(); }
    std::optional<NodeId> find(std::string_view code) const;
    std::size_t feasible_route_count() const;
};

/// Throws ValidationError on out-of-range coordinates.
void validate_coordinates(const GeoNode& node);

/// Great-circle distance in miles using the haversine formula.
double haversine_distance(const GeoNode& a, const GeoNode& b);

/// Builds the pairwise distance, flight-time, and feasibility matrices.
/// Throws ConfigError for an empty node list, duplicate codes, or ids that
/// are not 0..n-1 in order.
RouteNetwork build_network(std::vector<GeoNode> nodes, const VehicleSpec& spec);

/// Reads `id,code,lat,lon`.
std::vector<GeoNode> load_nodes_csv(const std::filesystem::path& path);

}  // namespace uamsim
