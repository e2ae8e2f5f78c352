#include "tstab/csv.hpp"

#include "tstab/common.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tstab {

void CsvTable::add_column(std::string name, std::vector<double> values) {
    if (!columns.empty() && values.size() != rows()) {
        throw ValidationError("csv: column " + name + " has " + std::to_string(values.size()) + " rows, expected " +
                              std::to_string(rows()));
    }
    header.push_back(std::move(name));
    columns.push_back(std::move(values));
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 15);
    return std::string(buf, res.ptr);
}

std::string to_csv(const CsvTable& table) {
    std::string out;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c) out += ',';
        out += table.header[c];
    }
    out += '\n';
    for (std::size_t r = 0; r < table.rows(); ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) out += ',';
            out += format_number(table.columns[c][r]);
        }
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
    CsvTable table;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const auto fields = split(line);
        if (line_no == 1) {
            for (auto f : fields) table.header.emplace_back(f);
            table.columns.resize(table.header.size());
            continue;
        }
        if (line.empty()) continue;
        if (fields.size() != table.header.size()) {
            throw ParseError("csv line " + std::to_string(line_no),
                             "expected " + std::to_string(table.header.size()) + " fields");
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            double value = 0.0;
            const auto f = fields[c];
            const auto res = std::from_chars(f.data(), f.data() + f.size(), value);
            if (res.ec != std::errc() || res.ptr != f.data() + f.size()) {
                throw ParseError("csv line " + std::to_string(line_no) + " column " + table.header[c],
                                 "not a number: '" + std::string(f) + "'");
            }
            table.columns[c].push_back(value);
        }
    }
    return table;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << to_csv(table);
    if (!out) throw Error("write failed for " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_csv(text.str());
}

}  // namespace tstab
