#include "uamsim/report_io.hpp"

#include "uamsim/error.hpp"

#include <charconv>
#include <fstream>

namespace uamsim {

using nlohmann::json;

std::string format_number(double value)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw Error("number formatting failed");
    return std::string(buf, ptr);
}

namespace {

template <typename T>
json matrix_json(const SquareMatrix<T>& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string cell(double v) { return format_number(v); }
std::string cell(long long v) { return std::to_string(v); }

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

}  // namespace

json to_json(const SizingReport& r)
{
    return {{"avg_cycle_min", r.avg_cycle_min},
            {"cycles_per_hour", r.cycles_per_hour},
            {"pax_capacity_per_ac_hr", r.pax_capacity_per_ac_hr},
            {"demand_per_hr", r.demand_per_hr},
            {"base_fleet", r.base_fleet},
            {"safety_factor", r.safety_factor},
            {"alpha_in_band", r.alpha_in_band},
            {"fleet", r.fleet},
            {"pooling_q", r.pooling_q}};
}

json to_json(const MetricsReport& m, const RouteNetwork& net)
{
    json codes = json::array();
    for (const auto& n : net.nodes) codes.push_back(n.code);
    return {{"generated", m.generated},
            {"served", m.served},
            {"unserved", m.unserved},
            {"onboard_at_end", m.onboard_at_end},
            {"mean_wait", m.mean_wait ? json(*m.mean_wait) : json(nullptr)},
            {"p95_wait", m.p95_wait ? json(*m.p95_wait) : json(nullptr)},
            {"u_air", m.u_air},
            {"u_air_incl_reposition", m.u_air_incl_reposition},
            {"u_cycle", m.u_cycle},
            {"throughput", {{"nodes", codes}, {"matrix", matrix_json(m.throughput)}}},
            {"revenue_trips", m.revenue_trips},
            {"reposition_trips", m.reposition_trips},
            {"load_factor", m.load_factor ? json(*m.load_factor) : json(nullptr)},
            {"targets",
             {{"wait_ok", m.targets.wait_ok},
              {"u_air_ok", m.targets.u_air_ok},
              {"u_air_band", std::string(to_string(m.targets.u_air_band))},
              {"overstressed", m.targets.u_air_band == UtilizationBand::Overstressed},
              {"load_ok", m.targets.load_ok}}}};
}

json to_json(const RefineResult& r)
{
    json table = json::array();
    for (const auto& row : r.table) {
        table.push_back({{"fleet", row.fleet},
                         {"seeds", row.seeds},
                         {"mean_wait", row.mean_wait},
                         {"p95_wait", row.p95_wait},
                         {"served", row.served},
                         {"unserved", row.unserved},
                         {"u_air", row.u_air},
                         {"u_cycle", row.u_cycle},
                         {"load_factor", row.load_factor},
                         {"wait_ok", row.wait_ok},
                         {"u_air_band", std::string(to_string(row.u_air_band))}});
    }
    return {{"fleet", r.fleet ? json(*r.fleet) : json(nullptr)},
            {"status", r.fleet ? "ok" : "infeasible within bound"},
            {"table", table}};
}

void write_trips_csv(std::ostream& out, const SimResult& result)
{
    const auto& nodes = result.config.net.nodes;
    out << "vehicle_id,kind,origin,dest,depart_min,arrive_min,riders\n";
    for (const auto& t : result.trips) {
        out << t.vehicle_id << ',' << to_string(t.kind) << ',' << nodes[t.origin].code << ','
            << nodes[t.dest].code << ',' << t.depart_min << ',' << t.arrive_min << ',';
        for (std::size_t k = 0; k < t.rider_ids.size(); ++k) out << (k ? ";" : "") << t.rider_ids[k];
        out << '\n';
    }
}

void write_riders_csv(std::ostream& out, const SimResult& result)
{
    const auto& nodes = result.config.net.nodes;
    out << "rider_id,origin,dest,arrival_min,board_min,dropoff_min\n";
    for (const auto& r : result.riders) {
        out << r.rider_id << ',' << nodes[r.origin].code << ',' << nodes[r.dest].code << ',' << r.arrival_min
            << ',';
        if (r.board_min) out << *r.board_min;
        out << ',';
        if (r.dropoff_min) out << *r.dropoff_min;
        out << '\n';
    }
}

void write_waits_csv(std::ostream& out, const SimResult& result)
{
    out << "wait_min\n";
    for (const int w : result.served_waits()) out << w << '\n';
}

template <typename T>
void write_heatmap_csv(std::ostream& out, const RouteNetwork& net, const SquareMatrix<T>& m)
{
    out << "origin";
    for (const auto& n : net.nodes) out << ',' << n.code;
    out << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << net.nodes[i].code;
        for (std::size_t j = 0; j < m.size(); ++j) out << ',' << cell(m(i, j));
        out << '\n';
    }
}

template void write_heatmap_csv(std::ostream&, const RouteNetwork&, const SquareMatrix<double>&);
template void write_heatmap_csv(std::ostream&, const RouteNetwork&, const SquareMatrix<long long>&);

json simulation_report(const Scenario& sc, const SizingReport& sizing, const FleetChoice& fleet,
                       const SimResult& result, const MetricsReport& metrics)
{
    json vehicles = json::array();
    for (const auto& v : result.vehicles) {
        vehicles.push_back({{"id", v.id},
                            {"revenue_air_min", v.revenue_air_min},
                            {"reposition_air_min", v.reposition_air_min},
                            {"buffer_min", v.buffer_min_acc},
                            {"charge_min", v.charge_min},
                            {"idle_min", v.idle_min}});
    }
    json codes = json::array();
    for (const auto& n : sc.net.nodes) codes.push_back(n.code);

    json config = to_json(sc.config);
    config["simulation"]["fleet"] = result.config.fleet;
    config["simulation"]["seed"] = result.config.seed;

    const bool conserved = metrics.generated == metrics.served + metrics.onboard_at_end + metrics.unserved;
    return {{"tool", "uamsim"},
            {"rng", std::string(kRngName)},
            {"config", config},
            {"network", {{"nodes", codes}, {"dist_mi", matrix_json(sc.net.dist)}}},
            {"demand",
             {{"monthly_pax_total", sc.od.total()},
              {"lambda_total", sc.rates.total()},
              {"expected_arrivals", expected_arrivals(sc.rates, sc.config.t_sim)},
              {"lambda", matrix_json(sc.rates.lambda)}}},
            {"sizing", to_json(sizing)},
            {"fleet",
             {{"analytic", fleet.analytic},
              {"refined", fleet.refined ? json(*fleet.refined) : json(nullptr)},
              {"simulated", fleet.simulated}}},
            {"metrics", to_json(metrics, sc.net)},
            {"conservation_ok", conserved},
            {"vehicles", vehicles}};
}

void write_simulation_outputs(const std::filesystem::path& dir, const Scenario& sc, const SizingReport& sizing,
                              const FleetChoice& fleet, const SimResult& result, const MetricsReport& metrics)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());

    {
        auto out = open_output(dir / "report.json");
        out << simulation_report(sc, sizing, fleet, result, metrics).dump(2) << '\n';
    }
    {
        auto out = open_output(dir / "trips.csv");
        write_trips_csv(out, result);
    }
    {
        auto out = open_output(dir / "riders.csv");
        write_riders_csv(out, result);
    }
    {
        auto out = open_output(dir / "waits.csv");
        write_waits_csv(out, result);
    }
    {
        auto out = open_output(dir / "heatmap_demand.csv");
        write_heatmap_csv(out, sc.net, sc.rates.lambda);
    }
    {
        auto out = open_output(dir / "heatmap_served.csv");
        write_heatmap_csv(out, sc.net, metrics.throughput);
    }
}

}  // namespace uamsim
