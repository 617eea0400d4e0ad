#include "uamsim/demand.hpp"

#include "csv.hpp"
#include "uamsim/error.hpp"

#include <cmath>

namespace uamsim {

long long ODMatrix::total() const
{
    long long sum = 0;
    for (std::size_t i = 0; i < counts.size(); ++i)
        for (std::size_t j = 0; j < counts.size(); ++j) sum += counts(i, j);
    return sum;
}

double DemandRates::total() const
{
    double sum = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (i != j) sum += lambda(i, j);
    return sum;
}

double DemandRates::origin_rate(NodeId i) const
{
    double sum = 0.0;
    for (std::size_t j = 0; j < size(); ++j)
        if (j != i) sum += lambda(i, j);
    return sum;
}

int RandomStream::poisson(double mean)
{
    if (!(mean > 0.0)) return 0;
    const double limit = std::exp(-mean);
    int k = 0;
    double product = uniform();
    while (product > limit) {
        ++k;
        product *= uniform();
    }
    return k;
}

ODMatrix ingest_od_csv(const std::filesystem::path& path, const RouteNetwork& net)
{
    const auto rows = detail::read_csv(path, {"origin", "dest", "monthly_pax"});
    const std::size_t n = net.size();
    ODMatrix od{SquareMatrix<long long>(n, 0)};
    SquareMatrix<bool> seen(n, false);

    for (const auto& row : rows) {
        const std::string at = path.string() + ":" + std::to_string(row.line);
        const auto origin = net.find(row.fields[0]);
        if (!origin) throw IngestionError(at + ": unknown origin code '" + row.fields[0] + "'");
        const auto dest = net.find(row.fields[1]);
        if (!dest) throw IngestionError(at + ": unknown destination code '" + row.fields[1] + "'");
        const long long pax = detail::parse_integer(row.fields[2], path, row.line);
        if (pax < 0) throw ValidationError(at + ": negative monthly_pax");
        if (*origin == *dest) {
            if (pax > 0) throw ValidationError(at + ": origin equals destination (" + row.fields[0] + ")");
            continue;
        }
        if (seen(*origin, *dest))
            throw IngestionError(at + ": duplicate pair " + row.fields[0] + "->" + row.fields[1]);
        seen(*origin, *dest) = true;
        od.counts(*origin, *dest) = pax;
    }
    return od;
}

DemandRates compute_rates(const ODMatrix& od, double days_per_month, double op_hours_per_day)
{
    if (!(days_per_month > 0.0)) throw ValidationError("days_per_month must be positive");
    if (!(op_hours_per_day > 0.0)) throw ValidationError("op_hours_per_day must be positive");

    const std::size_t n = od.counts.size();
    const double minutes_per_month = days_per_month * op_hours_per_day * 60.0;
    DemandRates rates{SquareMatrix<double>(n, 0.0), days_per_month, op_hours_per_day};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (od.counts(i, j) < 0) throw ValidationError("negative OD count");
            rates.lambda(i, j) = static_cast<double>(od.counts(i, j)) / minutes_per_month;
        }
    }
    return rates;
}

double expected_arrivals(const DemandRates& rates, double t_sim)
{
    if (!(t_sim > 0.0)) throw ValidationError("t_sim must be positive");
    return rates.total() * t_sim;
}

std::vector<RiderRequest> generate_arrivals(const DemandRates& rates, int t_sim, std::uint64_t seed)
{
    if (t_sim <= 0) throw ValidationError("t_sim must be positive");

    RandomStream rng(seed);
    std::vector<RiderRequest> riders;
    const std::size_t n = rates.size();
    std::uint64_t next_id = 0;
    for (int minute = 0; minute < t_sim; ++minute) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const double lambda = rates.lambda(i, j);
                if (!(lambda > 0.0)) continue;
                const int count = rng.poisson(lambda);
                for (int k = 0; k < count; ++k) riders.push_back({next_id++, i, j, minute});
            }
        }
    }
    return riders;
}

}  // namespace uamsim
