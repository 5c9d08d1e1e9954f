#include "fadinglab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fadinglab::csv {

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

void write_table(std::ostream& out, const Table& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << table.columns[i];
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_value(row[i]);
        out << "\n";
    }
}

void write_table_file(const std::string& path, const Table& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_table(out, table);
}

} // namespace fadinglab::csv
