#include "doctest.h"

#include "../../tools/cli.hpp"
#include "test_support.hpp"

#include "json.hpp"

#include <sstream>

using namespace uamsim;
using namespace uamsim::testing;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("distances prints the pairwise matrices")
{
    const auto r = run_cli({"distances", "--config", baseline_config().string(), "--json"});
    REQUIRE(r.code == cli::kExitOk);
    const auto doc = json::parse(r.out);
    CHECK(doc["nodes"].size() == 4);
    CHECK(std::abs(doc["dist_mi"][SFO][SJC].get<double>() - kOracleSfoSjc) < 1e-9);
    CHECK(doc["feasible"][SFO][SFO] == false);

    const auto table = run_cli({"distances", "--config", baseline_config().string()});
    CHECK(table.code == 0);
    CHECK(table.out.find("30.21") != std::string::npos);
}

TEST_CASE("a one-node network gives a 1x1 table")
{
    const auto nodes = write_file("one_node.csv", "id,code,lat,lon\n0,SFO,37.6190,-122.3750\n");
    const auto r = run_cli({"distances", "--nodes", nodes.string(), "--json"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["dist_mi"].size() == 1);
    CHECK(doc["dist_mi"][0][0].get<double>() == 0.0);
}

TEST_CASE("demand reports the calibrated rate")
{
    const auto r = run_cli({"demand", "--config", baseline_config().string(), "--json"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(std::abs(doc["lambda_total"].get<double>() - 0.516) < 1e-9);
    CHECK(std::abs(doc["expected_arrivals"].get<double>() - 619.2) < 1e-6);
}

TEST_CASE("size-fleet emits the estimator chain and warns outside the alpha band")
{
    auto r = run_cli({"size-fleet", "--config", baseline_config().string()});
    REQUIRE(r.code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["fleet"] == 8);
    CHECK(r.err.empty());

    r = run_cli({"size-fleet", "--config", baseline_config().string(), "--alpha", "6"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["fleet"] == 24);
    CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("simulate writes the report files and is reproducible")
{
    const auto dir_a = tmp_path("sim_a");
    const std::vector<std::string> args{"simulate", "--config", baseline_config().string(), "--out", dir_a.string(),
                                        "--minutes", "300"};
    const char* names[] = {"report.json", "trips.csv", "riders.csv", "waits.csv", "heatmap_demand.csv", "heatmap_served.csv"};
    REQUIRE(run_cli(args).code == 0);
    std::vector<std::string> first;
    for (const char* name : names) {
        REQUIRE(std::filesystem::exists(dir_a / name));
        first.push_back(slurp(dir_a / name));
    }
    REQUIRE(run_cli(args).code == 0);
    for (std::size_t k = 0; k < first.size(); ++k) {
        CAPTURE(names[k]);
        CHECK(slurp(dir_a / names[k]) == first[k]);
    }
    const auto report = json::parse(slurp(dir_a / "report.json"));
    CHECK(report["fleet"]["simulated"] == 32);
    CHECK(report["conservation_ok"] == true);
    CHECK(report["rng"] == "mt19937_64/u53");
    CHECK(slurp(dir_a / "heatmap_demand.csv").rfind("origin,SFO,OAK,SJC,PAO", 0) == 0);
}

TEST_CASE("simulate without a fleet refines one by simulation")
{
    const auto dir = tmp_path("sim_refined");
    const auto cfg = write_file("refine.json", json{{"nodes", (baseline_dir() / "nodes.csv").string()},
                                                   {"od", (baseline_dir() / "od.csv").string()},
                                                   {"simulation", {{"minutes", 240}}},
                                                   {"sweep", {{"seeds", 2}, {"n_max", 30}}}}
                                                   .dump());
    const auto r = run_cli({"simulate", "--config", cfg.string(), "--out", dir.string()});
    REQUIRE(r.code == 0);
    const auto report = json::parse(slurp(dir / "report.json"));
    CHECK(report["fleet"]["analytic"] == 8);
    CHECK(report["fleet"]["refined"].is_number_integer());
    CHECK(report["fleet"]["refined"].get<int>() >= 8);
}

TEST_CASE("compare needs a car speed")
{
    const auto nodes = (baseline_dir() / "nodes.csv").string();
    CHECK(run_cli({"compare", "--nodes", nodes}).code == cli::kExitConfig);
    const auto r = run_cli({"compare", "--nodes", nodes, "--car-speed", "20", "--json"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["pairs"].size() == 6);
    CHECK(doc["riders_aboard"] == 3);
    for (const auto& row : doc["pairs"]) {
        if (row["origin"] == "SFO" && row["dest"] == "SJC") {
            CHECK(std::abs(row["uam_cost_usd"].get<double>() - 73.78) <= 0.01);
            CHECK(std::abs(row["time_savings"].get<double>() - 0.79) <= 0.02);
        }
    }
}

TEST_CASE("sweep exit codes")
{
    const auto base = baseline_config().string();
    auto r = run_cli({"sweep", "--config", base, "--out", tmp_path("sweep_ok").string(), "--minutes", "240",
                      "--seeds", "2", "--n-min", "14", "--n-max", "16"});
    CHECK(r.code == cli::kExitOk);
    CHECK(std::filesystem::exists(tmp_path("sweep_ok") / "sweep.json"));

    r = run_cli({"sweep", "--config", base, "--out", tmp_path("sweep_bad").string(), "--minutes", "240",
                 "--seeds", "2", "--n-min", "1", "--n-max", "2"});
    CHECK(r.code == cli::kExitInfeasible);
    CHECK(r.out.find("infeasible within bound") != std::string::npos);
}

TEST_CASE("input and usage errors exit with the config code")
{
    CHECK(run_cli({"distances", "--nodes", tmp_path("no_such_nodes.csv").string()}).code == cli::kExitConfig);
    CHECK(run_cli({"distances"}).code == cli::kExitConfig);
    CHECK(run_cli({}).code == cli::kExitConfig);
    CHECK(run_cli({"teleport"}).code == cli::kExitConfig);
    CHECK(run_cli({"simulate", "--config", baseline_config().string(), "--fleet", "0"}).code == cli::kExitConfig);
    CHECK(run_cli({"--help"}).code == cli::kExitOk);

    const auto bad = write_file("bad_od.csv", "origin,dest,monthly_pax\nSFO,LAX,3\n");
    const auto r = run_cli({"demand", "--nodes", (baseline_dir() / "nodes.csv").string(), "--od", bad.string()});
    CHECK(r.code == cli::kExitConfig);
    CHECK(r.err.find("LAX") != std::string::npos);
}
