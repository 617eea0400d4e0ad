#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace uamsim::detail {

/// One data row of a simple comma-separated file (no quoting).
struct CsvRow {
    std::size_t line = 0;  // 1-based line number in the file
    std::vector<std::string> fields;
};

/// Reads a header-led CSV file. Checks the header against `expected_header`
/// (case-sensitive, whitespace-trimmed) and returns the data rows with every
/// field trimmed. Blank lines are skipped. Throws IngestionError.
std::vector<CsvRow> read_csv(const std::filesystem::path& path,
                             const std::vector<std::string>& expected_header);

double parse_double(const std::string& text, const std::filesystem::path& path, std::size_t line);
long long parse_integer(const std::string& text, const std::filesystem::path& path, std::size_t line);

}  // namespace uamsim::detail
