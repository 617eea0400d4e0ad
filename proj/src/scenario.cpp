#include "uamsim/scenario.hpp"

#include "uamsim/error.hpp"

#include <fstream>
#include <set>

namespace uamsim {

using nlohmann::json;

void ScenarioConfig::validate() const
{
    try {
        spec.validate();
    } catch (const ValidationError& e) {
        throw ConfigError(e.what());
    }
    if (!(days_per_month > 0.0)) throw ConfigError("demand.days_per_month must be positive");
    if (!(op_hours_per_day > 0.0)) throw ConfigError("demand.op_hours_per_day must be positive");
    if (t_sim <= 0) throw ConfigError("simulation.minutes must be positive");
    if (fleet && *fleet < 1) throw ConfigError("simulation.fleet must be at least 1");
    if (!(alpha > 0.0)) throw ConfigError("sizing.alpha must be positive");
    if (!(pooling_q > 0.0) || pooling_q > spec.capacity)
        throw ConfigError("sizing.pooling_q must lie in (0, capacity]");
    if (seeds < 1) throw ConfigError("sweep.seeds must be at least 1");
    if (n_min < 1 || n_max < n_min) throw ConfigError("sweep bounds must satisfy 1 <= n_min <= n_max");
    if (!(value_of_time_per_hr > 0.0)) throw ConfigError("cost.value_of_time_per_hr must be positive");
    if (!(car_cost_per_mi > 0.0)) throw ConfigError("cost.car_cost_per_mi must be positive");
    if (car_speed_mph && !(*car_speed_mph > 0.0)) throw ConfigError("cost.car_speed_mph must be positive");
    if (!(circuity >= 1.0)) throw ConfigError("cost.circuity must be at least 1");
    if (!(assumed_wait_min >= 0.0)) throw ConfigError("cost.assumed_wait_min must be nonnegative");
    if (placement == Placement::SingleNode && placement_node.empty())
        throw ConfigError("simulation.placement_node is required for single_node placement");
}

CostParams ScenarioConfig::cost_params() const
{
    return {spec.op_cost_per_hr, value_of_time_per_hr, car_cost_per_mi, car_speed_mph.value_or(0.0), circuity};
}

namespace {

void reject_unknown(const json& obj, const std::string& section, std::set<std::string> allowed)
{
    if (!obj.is_object()) throw ConfigError("'" + section + "' must be an object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.contains(key)) throw ConfigError("unknown key '" + section + "." + key + "'");
}

template <typename T>
void read(const json& obj, const char* key, T& out)
{
    if (!obj.contains(key) || obj.at(key).is_null()) return;
    out = obj.at(key).get<T>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p)
{
    std::filesystem::path path(p);
    return path.is_relative() ? base / path : path;
}

}  // namespace

ScenarioConfig scenario_from_json(const json& doc, const std::filesystem::path& base_dir)
{
    ScenarioConfig c;
    try {
        reject_unknown(doc, "config",
                       {"nodes", "od", "vehicle", "demand", "simulation", "sizing", "sweep", "cost", "output_dir"});
        if (doc.contains("nodes")) c.nodes_path = resolve(base_dir, doc.at("nodes").get<std::string>());
        if (doc.contains("od") && !doc.at("od").is_null())
            c.od_path = resolve(base_dir, doc.at("od").get<std::string>());
        if (doc.contains("output_dir")) c.output_dir = resolve(base_dir, doc.at("output_dir").get<std::string>());

        if (doc.contains("vehicle")) {
            const auto& v = doc.at("vehicle");
            reject_unknown(v, "vehicle",
                           {"cruise_speed_mph", "max_range_mi", "optimal_leg_mi", "turnaround_min", "buffer_min",
                            "capacity", "op_cost_per_hr", "altitude_band_ft"});
            read(v, "cruise_speed_mph", c.spec.cruise_speed_mph);
            read(v, "max_range_mi", c.spec.max_range_mi);
            read(v, "optimal_leg_mi", c.spec.optimal_leg_mi);
            read(v, "turnaround_min", c.spec.turnaround_min);
            read(v, "buffer_min", c.spec.buffer_min);
            read(v, "capacity", c.spec.capacity);
            read(v, "op_cost_per_hr", c.spec.op_cost_per_hr);
            if (v.contains("altitude_band_ft")) {
                const auto band = v.at("altitude_band_ft").get<std::vector<double>>();
                if (band.size() != 2) throw ConfigError("vehicle.altitude_band_ft must have two entries");
                c.spec.altitude_band_ft = {band[0], band[1]};
            }
        }
        if (doc.contains("demand")) {
            const auto& d = doc.at("demand");
            reject_unknown(d, "demand", {"days_per_month", "op_hours_per_day"});
            read(d, "days_per_month", c.days_per_month);
            read(d, "op_hours_per_day", c.op_hours_per_day);
        }
        if (doc.contains("simulation")) {
            const auto& s = doc.at("simulation");
            reject_unknown(s, "simulation",
                           {"minutes", "fleet", "seed", "reposition_enabled", "charge_after_reposition",
                            "initial_placement", "placement_node"});
            read(s, "minutes", c.t_sim);
            if (s.contains("fleet") && !s.at("fleet").is_null()) c.fleet = s.at("fleet").get<int>();
            read(s, "seed", c.seed);
            read(s, "reposition_enabled", c.reposition_enabled);
            read(s, "charge_after_reposition", c.charge_after_reposition);
            if (s.contains("initial_placement"))
                c.placement = placement_from_string(s.at("initial_placement").get<std::string>());
            read(s, "placement_node", c.placement_node);
        }
        if (doc.contains("sizing")) {
            const auto& s = doc.at("sizing");
            reject_unknown(s, "sizing", {"alpha", "pooling_q"});
            read(s, "alpha", c.alpha);
            read(s, "pooling_q", c.pooling_q);
        }
        if (doc.contains("sweep")) {
            const auto& s = doc.at("sweep");
            reject_unknown(s, "sweep", {"n_min", "n_max", "seeds"});
            read(s, "n_min", c.n_min);
            read(s, "n_max", c.n_max);
            read(s, "seeds", c.seeds);
        }
        if (doc.contains("cost")) {
            const auto& s = doc.at("cost");
            reject_unknown(s, "cost",
                           {"value_of_time_per_hr", "car_cost_per_mi", "car_speed_mph", "circuity",
                            "assumed_wait_min"});
            read(s, "value_of_time_per_hr", c.value_of_time_per_hr);
            read(s, "car_cost_per_mi", c.car_cost_per_mi);
            if (s.contains("car_speed_mph") && !s.at("car_speed_mph").is_null())
                c.car_speed_mph = s.at("car_speed_mph").get<double>();
            read(s, "circuity", c.circuity);
            read(s, "assumed_wait_min", c.assumed_wait_min);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return scenario_from_json(doc, path.parent_path());
}

json to_json(const ScenarioConfig& c)
{
    json doc;
    doc["nodes"] = c.nodes_path.string();
    doc["od"] = c.od_path.empty() ? json(nullptr) : json(c.od_path.string());
    doc["output_dir"] = c.output_dir.string();
    doc["vehicle"] = {{"cruise_speed_mph", c.spec.cruise_speed_mph},
                      {"max_range_mi", c.spec.max_range_mi},
                      {"optimal_leg_mi", c.spec.optimal_leg_mi},
                      {"turnaround_min", c.spec.turnaround_min},
                      {"buffer_min", c.spec.buffer_min},
                      {"capacity", c.spec.capacity},
                      {"op_cost_per_hr", c.spec.op_cost_per_hr},
                      {"altitude_band_ft", {c.spec.altitude_band_ft.first, c.spec.altitude_band_ft.second}}};
    doc["demand"] = {{"days_per_month", c.days_per_month}, {"op_hours_per_day", c.op_hours_per_day}};
    doc["simulation"] = {{"minutes", c.t_sim},
                         {"fleet", c.fleet ? json(*c.fleet) : json(nullptr)},
                         {"seed", c.seed},
                         {"reposition_enabled", c.reposition_enabled},
                         {"charge_after_reposition", c.charge_after_reposition},
                         {"initial_placement", std::string(to_string(c.placement))},
                         {"placement_node", c.placement_node}};
    doc["sizing"] = {{"alpha", c.alpha}, {"pooling_q", c.pooling_q}};
    doc["sweep"] = {{"n_min", c.n_min}, {"n_max", c.n_max}, {"seeds", c.seeds}};
    doc["cost"] = {{"value_of_time_per_hr", c.value_of_time_per_hr},
                   {"car_cost_per_mi", c.car_cost_per_mi},
                   {"car_speed_mph", c.car_speed_mph ? json(*c.car_speed_mph) : json(nullptr)},
                   {"circuity", c.circuity},
                   {"assumed_wait_min", c.assumed_wait_min}};
    return doc;
}

Scenario load_inputs(const ScenarioConfig& cfg)
{
    cfg.validate();
    if (cfg.nodes_path.empty()) throw ConfigError("no nodes file configured");
    Scenario sc{cfg, build_network(load_nodes_csv(cfg.nodes_path), cfg.spec), {}, {}};
    sc.od = cfg.od_path.empty() ? ODMatrix{SquareMatrix<long long>(sc.net.size(), 0)}
                                : ingest_od_csv(cfg.od_path, sc.net);
    sc.rates = compute_rates(sc.od, cfg.days_per_month, cfg.op_hours_per_day);
    if (cfg.placement == Placement::SingleNode && !sc.net.find(cfg.placement_node))
        throw ConfigError("placement node '" + cfg.placement_node + "' is not in the network");
    return sc;
}

SimConfig make_sim_config(const Scenario& sc, int fleet, std::uint64_t seed)
{
    SimConfig sim;
    sim.t_sim = sc.config.t_sim;
    sim.fleet = fleet;
    sim.seed = seed;
    sim.spec = sc.config.spec;
    sim.rates = sc.rates;
    sim.net = sc.net;
    sim.reposition_enabled = sc.config.reposition_enabled;
    sim.charge_after_reposition = sc.config.charge_after_reposition;
    sim.placement = sc.config.placement;
    if (sc.config.placement == Placement::SingleNode) sim.placement_node = *sc.net.find(sc.config.placement_node);
    return sim;
}

}  // namespace uamsim
