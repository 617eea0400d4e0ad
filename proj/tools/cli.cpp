#include "cli.hpp"

#include "uamsim/error.hpp"
#include "uamsim/report_io.hpp"
#include "uamsim/scenario.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace uamsim::cli {

namespace {

using nlohmann::json;

struct Flags {
    std::string config;
    std::string nodes;
    std::string od;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> minutes;
    std::optional<int> fleet;
    std::optional<double> alpha;
    std::optional<int> seeds;
    std::optional<int> n_min;
    std::optional<int> n_max;
    std::optional<double> car_speed;
    std::optional<double> circuity;
    std::optional<double> wait;
    unsigned threads = 0;
    bool json_output = false;
};

ScenarioConfig resolve_config(const Flags& f)
{
    ScenarioConfig cfg = f.config.empty() ? scenario_from_json(json::object(), ".") : load_scenario(f.config);
    if (!f.nodes.empty()) cfg.nodes_path = f.nodes;
    if (!f.od.empty()) cfg.od_path = f.od;
    if (!f.out_dir.empty()) cfg.output_dir = f.out_dir;
    if (f.seed) cfg.seed = *f.seed;
    if (f.minutes) cfg.t_sim = *f.minutes;
    if (f.fleet) cfg.fleet = *f.fleet;
    if (f.alpha) cfg.alpha = *f.alpha;
    if (f.seeds) cfg.seeds = *f.seeds;
    if (f.n_min) cfg.n_min = *f.n_min;
    if (f.n_max) cfg.n_max = *f.n_max;
    if (f.car_speed) cfg.car_speed_mph = *f.car_speed;
    if (f.circuity) cfg.circuity = *f.circuity;
    if (f.wait) cfg.assumed_wait_min = *f.wait;
    cfg.validate();
    return cfg;
}

void print_matrix(std::ostream& out, const RouteNetwork& net, const std::string& title,
                  const auto& cell_of)
{
    out << title << '\n' << std::setw(8) << "";
    for (const auto& n : net.nodes) out << std::setw(10) << n.code;
    out << '\n';
    for (std::size_t i = 0; i < net.size(); ++i) {
        out << std::setw(8) << net.nodes[i].code;
        for (std::size_t j = 0; j < net.size(); ++j) out << std::setw(10) << cell_of(i, j);
        out << '\n';
    }
}

std::string fixed(double v, int digits)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

int cmd_distances(const Flags& f, std::ostream& out)
{
    const auto sc = load_inputs(resolve_config(f));
    const auto& net = sc.net;
    if (f.json_output) {
        json codes = json::array(), dist = json::array(), air = json::array(), feas = json::array();
        for (std::size_t i = 0; i < net.size(); ++i) {
            codes.push_back(net.nodes[i].code);
            json d = json::array(), a = json::array(), ok = json::array();
            for (std::size_t j = 0; j < net.size(); ++j) {
                d.push_back(net.dist(i, j));
                a.push_back(net.air_time(i, j));
                ok.push_back(static_cast<bool>(net.feasible(i, j)));
            }
            dist.push_back(d);
            air.push_back(a);
            feas.push_back(ok);
        }
        out << json{{"nodes", codes}, {"dist_mi", dist}, {"air_time_min", air}, {"feasible", feas}}.dump(2)
            << '\n';
        return kExitOk;
    }
    print_matrix(out, net, "distance (mi)", [&](auto i, auto j) { return fixed(net.dist(i, j), 2); });
    print_matrix(out, net, "air time (min)", [&](auto i, auto j) { return fixed(net.air_time(i, j), 2); });
    print_matrix(out, net, "feasible", [&](auto i, auto j) {
        return i == j ? std::string("-") : std::string(net.feasible(i, j) ? "yes" : "no");
    });
    return kExitOk;
}

int cmd_demand(const Flags& f, std::ostream& out)
{
    const auto sc = load_inputs(resolve_config(f));
    const double t_sim = sc.config.t_sim;
    const json summary = {{"monthly_pax_total", sc.od.total()},
                          {"days_per_month", sc.rates.days_per_month},
                          {"op_hours_per_day", sc.rates.op_hours_per_day},
                          {"lambda_total", sc.rates.total()},
                          {"t_sim", sc.config.t_sim},
                          {"expected_arrivals", expected_arrivals(sc.rates, t_sim)}};
    if (f.json_output) {
        json j = summary;
        json rows = json::array();
        for (std::size_t i = 0; i < sc.net.size(); ++i) {
            json row = json::array();
            for (std::size_t k = 0; k < sc.net.size(); ++k) row.push_back(sc.rates.lambda(i, k));
            rows.push_back(row);
        }
        j["lambda"] = rows;
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    print_matrix(out, sc.net, "lambda (pax/min)",
                 [&](auto i, auto j) { return fixed(sc.rates.lambda(i, j), 5); });
    out << "monthly pax total: " << sc.od.total() << '\n'
        << "lambda_total (pax/min): " << format_number(sc.rates.total()) << '\n'
        << "expected arrivals over " << sc.config.t_sim << " min: "
        << format_number(expected_arrivals(sc.rates, t_sim)) << '\n';
    return kExitOk;
}

int cmd_size_fleet(const Flags& f, std::ostream& out, std::ostream& err)
{
    const auto sc = load_inputs(resolve_config(f));
    const auto report = size_fleet(sc.net, sc.config.spec, sc.rates, sc.config.alpha, sc.config.pooling_q);
    if (!report.alpha_in_band)
        err << "warning: alpha " << sc.config.alpha << " is outside [" << kAlphaBandLow << ", "
            << kAlphaBandHigh << "]\n";
    out << to_json(report).dump(2) << '\n';
    return kExitOk;
}

void print_sweep(std::ostream& out, const RefineResult& r)
{
    out << std::setw(6) << "fleet" << std::setw(11) << "mean_wait" << std::setw(9) << "p95" << std::setw(10)
        << "served" << std::setw(10) << "unserved" << std::setw(8) << "u_air" << std::setw(9) << "u_cycle"
        << std::setw(8) << "load" << "  band\n";
    for (const auto& row : r.table) {
        out << std::setw(6) << row.fleet << std::setw(11) << fixed(row.mean_wait, 2) << std::setw(9)
            << fixed(row.p95_wait, 1) << std::setw(10) << fixed(row.served, 1) << std::setw(10)
            << fixed(row.unserved, 1) << std::setw(8) << fixed(row.u_air, 3) << std::setw(9)
            << fixed(row.u_cycle, 3) << std::setw(8) << fixed(row.load_factor, 3) << "  "
            << to_string(row.u_air_band) << (row.wait_ok ? "" : "  (wait target missed)") << '\n';
    }
    if (r.fleet)
        out << "refined fleet: " << *r.fleet << '\n';
    else
        out << "infeasible within bound\n";
}

int cmd_simulate(const Flags& f, std::ostream& out, std::ostream& err)
{
    const auto sc = load_inputs(resolve_config(f));
    const auto& cfg = sc.config;

    SizingReport sizing;
    FleetChoice fleet;
    if (sc.net.size() >= 2) {
        sizing = size_fleet(sc.net, cfg.spec, sc.rates, cfg.alpha, cfg.pooling_q);
        fleet.analytic = sizing.fleet;
    }

    if (cfg.fleet) {
        fleet.simulated = *cfg.fleet;
    } else {
        const int n_min = std::max<int>(cfg.n_min, static_cast<int>(std::max<long long>(1, fleet.analytic)));
        const auto refined =
            refine_fleet(make_sim_config(sc, 1, cfg.seed), cfg.seeds, n_min, std::max(n_min, cfg.n_max), f.threads);
        if (!refined.fleet) {
            print_sweep(out, refined);
            err << "error: no fleet size up to " << cfg.n_max << " meets the wait target\n";
            return kExitInfeasible;
        }
        fleet.refined = refined.fleet;
        fleet.simulated = *refined.fleet;
    }

    const auto result = run_simulation(make_sim_config(sc, fleet.simulated, cfg.seed));
    const auto metrics = evaluate(result);
    write_simulation_outputs(cfg.output_dir, sc, sizing, fleet, result, metrics);

    out << "fleet " << fleet.simulated << ", seed " << cfg.seed << ", " << cfg.t_sim << " min\n"
        << "generated " << metrics.generated << ", served " << metrics.served << ", onboard at end "
        << metrics.onboard_at_end << ", unserved " << metrics.unserved << '\n';
    if (metrics.mean_wait)
        out << "mean wait " << fixed(*metrics.mean_wait, 2) << " min, p95 " << *metrics.p95_wait << " min ("
            << (metrics.targets.wait_ok ? "meets" : "misses") << " the " << kWaitTargetMin << "-min target)\n";
    else
        out << "no riders served\n";
    out << "u_air " << fixed(metrics.u_air, 3) << " (" << to_string(metrics.targets.u_air_band) << "), u_cycle "
        << fixed(metrics.u_cycle, 3) << ", load factor "
        << (metrics.load_factor ? fixed(*metrics.load_factor, 3) : std::string("n/a")) << '\n'
        << "outputs written to " << cfg.output_dir.string() << '\n';
    return kExitOk;
}

int cmd_compare(const Flags& f, std::ostream& out)
{
    const auto sc = load_inputs(resolve_config(f));
    const auto& cfg = sc.config;
    if (!cfg.car_speed_mph) throw ConfigError("car comparison needs cost.car_speed_mph or --car-speed");
    const auto params = cfg.cost_params();
    params.validate();
    const int riders = std::max(1, static_cast<int>(std::lround(cfg.pooling_q)));

    json rows = json::array();
    for (std::size_t i = 0; i < sc.net.size(); ++i) {
        for (std::size_t j = i + 1; j < sc.net.size(); ++j) {
            const double d = sc.net.dist(i, j);
            const auto uam = effective_cost_uam(d, riders, cfg.assumed_wait_min, params, cfg.spec);
            const auto car = effective_cost_car(d, params);
            const double door = cfg.assumed_wait_min + uam.mission_min;
            rows.push_back({{"origin", sc.net.nodes[i].code},
                            {"dest", sc.net.nodes[j].code},
                            {"distance_mi", d},
                            {"uam_mission_min", uam.mission_min},
                            {"uam_door_min", door},
                            {"uam_cost_usd", uam.total},
                            {"car_road_mi", car.road_mi},
                            {"car_min", car.minutes},
                            {"car_cost_usd", car.cost},
                            {"time_savings", time_savings(car.minutes, door)}});
        }
    }
    if (f.json_output) {
        out << json{{"riders_aboard", riders},
                    {"wait_min", cfg.assumed_wait_min},
                    {"car_speed_mph", *cfg.car_speed_mph},
                    {"circuity", cfg.circuity},
                    {"pairs", rows}}
                   .dump(2)
            << '\n';
        return kExitOk;
    }
    out << std::setw(10) << "pair" << std::setw(9) << "dist" << std::setw(10) << "uam_min" << std::setw(10)
        << "uam_$" << std::setw(10) << "car_min" << std::setw(10) << "car_$" << std::setw(10) << "savings" << '\n';
    for (const auto& r : rows) {
        out << std::setw(10) << (r["origin"].get<std::string>() + "-" + r["dest"].get<std::string>())
            << std::setw(9) << fixed(r["distance_mi"].get<double>(), 1) << std::setw(10) << fixed(r["uam_door_min"].get<double>(), 1)
            << std::setw(10) << fixed(r["uam_cost_usd"].get<double>(), 2) << std::setw(10) << fixed(r["car_min"].get<double>(), 1)
            << std::setw(10) << fixed(r["car_cost_usd"].get<double>(), 2) << std::setw(9)
            << fixed(100.0 * r["time_savings"].get<double>(), 1) << "%\n";
    }
    out << "uam: wait " << cfg.assumed_wait_min << " min, " << riders << " riders per flight; car: "
        << *cfg.car_speed_mph << " mph, circuity " << cfg.circuity << '\n';
    return kExitOk;
}

int cmd_sweep(const Flags& f, std::ostream& out, std::ostream& err)
{
    const auto sc = load_inputs(resolve_config(f));
    const auto& cfg = sc.config;
    const auto result = refine_fleet(make_sim_config(sc, cfg.n_min, cfg.seed), cfg.seeds, cfg.n_min, cfg.n_max,
                                     f.threads);

    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec) throw Error("cannot create output directory " + cfg.output_dir.string());
    {
        std::ofstream file(cfg.output_dir / "sweep.json", std::ios::binary);
        if (!file) throw Error("cannot write " + (cfg.output_dir / "sweep.json").string());
        json doc = to_json(result);
        doc["config"] = to_json(cfg);
        doc["rng"] = std::string(kRngName);
        file << doc.dump(2) << '\n';
    }

    if (f.json_output)
        out << to_json(result).dump(2) << '\n';
    else
        print_sweep(out, result);
    if (!result.fleet) {
        err << "error: no fleet size in [" << cfg.n_min << ", " << cfg.n_max << "] meets the wait target\n";
        return kExitInfeasible;
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Urban air mobility network simulator", "uamsim"};
    app.require_subcommand(1);
    app.fallthrough();

    Flags f;
    app.add_option("--config", f.config, "Scenario JSON file");
    app.add_option("--nodes", f.nodes, "Override the nodes CSV");
    app.add_option("--od", f.od, "Override the OD CSV");
    app.add_option("--out", f.out_dir, "Output directory");
    app.add_option("--seed", f.seed, "Random seed (first seed for sweeps)");
    app.add_option("--minutes", f.minutes, "Simulation horizon in minutes");
    app.add_option("--fleet", f.fleet, "Fleet size (omit to size and refine)");
    app.add_option("--alpha", f.alpha, "Fleet safety factor");
    app.add_option("--seeds", f.seeds, "Seeds per fleet size in sweeps");
    app.add_option("--n-min", f.n_min, "Smallest fleet in a sweep");
    app.add_option("--n-max", f.n_max, "Largest fleet in a sweep");
    app.add_option("--car-speed", f.car_speed, "Car speed in mph for the comparison");
    app.add_option("--circuity", f.circuity, "Road distance over great-circle distance");
    app.add_option("--wait", f.wait, "UAM wait in minutes for the comparison");
    app.add_option("--threads", f.threads, "Worker threads for sweeps (0 = all cores)");
    app.add_flag("--json", f.json_output, "Print JSON instead of a table");

    auto* distances = app.add_subcommand("distances", "Pairwise distance, air-time and feasibility matrices");
    auto* demand = app.add_subcommand("demand", "Per-minute arrival rates and expected arrivals");
    auto* sizing = app.add_subcommand("size-fleet", "Analytical fleet estimate as JSON");
    auto* simulate = app.add_subcommand("simulate", "Run one simulation and write the report files");
    auto* compare = app.add_subcommand("compare", "UAM versus car cost and travel time per node pair");
    auto* sweep = app.add_subcommand("sweep", "Fleet-size sweep and simulation-driven refinement");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kExitConfig;
    }

    try {
        if (distances->parsed()) return cmd_distances(f, out);
        if (demand->parsed()) return cmd_demand(f, out);
        if (sizing->parsed()) return cmd_size_fleet(f, out, err);
        if (simulate->parsed()) return cmd_simulate(f, out, err);
        if (compare->parsed()) return cmd_compare(f, out);
        if (sweep->parsed()) return cmd_sweep(f, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}

}  // namespace uamsim::cli
