#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tstab {

/// Column-major numeric table with a header row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    void add_column(std::string name, std::vector<double> values);
};

/// 15 significant digits, shortest of fixed/scientific; "nan" for NaN.
std::string format_number(double x);

std::string to_csv(const CsvTable& table);
CsvTable parse_csv(std::string_view text);

/// Throws Error on I/O failure.
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace tstab
