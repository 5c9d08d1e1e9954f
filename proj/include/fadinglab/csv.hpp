#pragma once

// Fixed CSV conventions for every file the tools emit: header row, %.12e
// numbers, comma separator, LF line endings. Golden-file tests depend on
// this staying byte-stable.

#include <ostream>
#include <string>
#include <vector>

namespace fadinglab::csv {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string format_value(double v);
void write_table(std::ostream& out, const Table& table);
void write_table_file(const std::string& path, const Table& table);

} // namespace fadinglab::csv
