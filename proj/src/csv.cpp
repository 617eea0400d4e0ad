#include "csv.hpp"

#include "uamsim/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace uamsim::detail {

namespace {

std::string trim(std::string s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string where(const std::filesystem::path& path, std::size_t line)
{
    return path.string() + ":" + std::to_string(line);
}

}  // namespace

std::vector<CsvRow> read_csv(const std::filesystem::path& path,
                             const std::vector<std::string>& expected_header)
{
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot open " + path.string());

    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (trim(line).empty()) continue;
        auto fields = split(line);
        if (!have_header) {
            if (fields != expected_header) {
                std::string want;
                for (const auto& h : expected_header) want += (want.empty() ? "" : ",") + h;
                throw IngestionError(where(path, lineno) + ": expected header '" + want + "'");
            }
            have_header = true;
            continue;
        }
        if (fields.size() != expected_header.size()) {
            throw IngestionError(where(path, lineno) + ": expected " +
                                 std::to_string(expected_header.size()) + " fields, got " +
                                 std::to_string(fields.size()));
        }
        rows.push_back({lineno, std::move(fields)});
    }
    if (!have_header) throw IngestionError(path.string() + ": missing header");
    return rows;
}

double parse_double(const std::string& text, const std::filesystem::path& path, std::size_t line)
{
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty())
        throw IngestionError(where(path, line) + ": not a number: '" + text + "'");
    return value;
}

long long parse_integer(const std::string& text, const std::filesystem::path& path, std::size_t line)
{
    long long value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty())
        throw IngestionError(where(path, line) + ": not an integer: '" + text + "'");
    return value;
}

}  // namespace uamsim::detail
