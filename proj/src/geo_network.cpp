#include "uamsim/geo_network.hpp"

#include "csv.hpp"
#include "uamsim/error.hpp"
#include "uamsim/fleet_sizing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace uamsim {

namespace {

constexpr double to_radians(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace

void VehicleSpec::validate() const
{
    if (!(cruise_speed_mph > 0.0)) throw ValidationError("cruise_speed_mph must be positive");
    if (!(max_range_mi > 0.0)) throw ValidationError("max_range_mi must be positive");
    if (!(optimal_leg_mi > 0.0)) throw ValidationError("optimal_leg_mi must be positive");
    if (optimal_leg_mi > max_range_mi) throw ValidationError("optimal_leg_mi exceeds max_range_mi");
    if (turnaround_min <= 0) throw ValidationError("turnaround_min must be positive");
    if (buffer_min <= 0) throw ValidationError("buffer_min must be positive");
    if (capacity <= 0) throw ValidationError("capacity must be positive");
    if (!(op_cost_per_hr > 0.0)) throw ValidationError("op_cost_per_hr must be positive");
    if (!(altitude_band_ft.first > 0.0) || altitude_band_ft.second < altitude_band_ft.first)
        throw ValidationError("altitude_band_ft must be a positive ascending pair");
}

std::optional<NodeId> RouteNetwork::find(std::string_view code) const
{
    for (const auto& n : nodes)
        if (n.code == code) return n.id;
    return std::nullopt;
}

std::size_t RouteNetwork::feasible_route_count() const
{
    std::size_t count = 0;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) count += feasible(i, j) ? 1 : 0;
    return count;
}

void validate_coordinates(const GeoNode& node)
{
    if (!(node.lat >= -90.0 && node.lat <= 90.0))
        throw ValidationError("node " + node.code + ": latitude out of range");
    if (!(node.lon >= -180.0 && node.lon <= 180.0))
        throw ValidationError("node " + node.code + ": longitude out of range");
}

double haversine_distance(const GeoNode& a, const GeoNode& b)
{
    validate_coordinates(a);
    validate_coordinates(b);

    const double phi1 = to_radians(a.lat);
    const double phi2 = to_radians(b.lat);
    const double sin_dlat = std::sin((phi2 - phi1) / 2.0);
    const double sin_dlon = std::sin(to_radians(b.lon - a.lon) / 2.0);

    double h = sin_dlat * sin_dlat + std::cos(phi1) * std::cos(phi2) * sin_dlon * sin_dlon;
    h = std::clamp(h, 0.0, 1.0);
    return 2.0 * kEarthRadiusMiles * std::asin(std::sqrt(h));
}

RouteNetwork build_network(std::vector<GeoNode> nodes, const VehicleSpec& spec)
{
    spec.validate();
    if (nodes.empty()) throw ConfigError("route network needs at least one node");

    std::set<std::string> codes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].id != i)
            throw ConfigError("node ids must be contiguous 0..n-1 in file order; got " +
                              std::to_string(nodes[i].id) + " at position " + std::to_string(i));
        if (nodes[i].code.empty()) throw ConfigError("node " + std::to_string(i) + " has an empty code");
        if (!codes.insert(nodes[i].code).second)
            throw ConfigError("duplicate node code " + nodes[i].code);
        validate_coordinates(nodes[i]);
    }

    const std::size_t n = nodes.size();
    RouteNetwork net;
    net.dist = SquareMatrix<double>(n, 0.0);
    net.air_time = SquareMatrix<double>(n, 0.0);
    net.feasible = SquareMatrix<bool>(n, false);

    // Compute each unordered pair once and mirror it so the matrices are
    // exactly symmetric.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = haversine_distance(nodes[i], nodes[j]);
            const double t = flight_time(d, spec.cruise_speed_mph);
            const bool ok = d <= spec.max_range_mi;
            net.dist(i, j) = net.dist(j, i) = d;
            net.air_time(i, j) = net.air_time(j, i) = t;
            net.feasible(i, j) = net.feasible(j, i) = ok;
        }
    }
    net.nodes = std::move(nodes);
    return net;
}

std::vector<GeoNode> load_nodes_csv(const std::filesystem::path& path)
{
    const auto rows = detail::read_csv(path, {"id", "code", "lat", "lon"});
    std::vector<GeoNode> nodes;
    nodes.reserve(rows.size());
    for (const auto& row : rows) {
        const long long id = detail::parse_integer(row.fields[0], path, row.line);
        if (id < 0) throw IngestionError(path.string() + ":" + std::to_string(row.line) + ": negative id");
        GeoNode node{static_cast<NodeId>(id), row.fields[1],
                     detail::parse_double(row.fields[2], path, row.line),
                     detail::parse_double(row.fields[3], path, row.line)};
        try {
            validate_coordinates(node);
        } catch (const ValidationError& e) {
            throw ValidationError(path.string() + ":" + std::to_string(row.line) + ": " + e.what());
        }
        nodes.push_back(std::move(node));
    }
    return nodes;
}

}  // namespace uamsim
