// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdmkit {

/// Formats a double with enough digits to round-trip exactly.
[[nodiscard]] inline std::string csv_cell(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Long-format table: leading comment lines (each written with a "# "
/// prefix, used to reference the experiment manifest), one header row,
/// then data rows.  Cells are written verbatim, so they must not contain
/// commas or newlines; everything this library emits satisfies that.
struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells) {
        if (cells.size() != header.size())
            throw std::invalid_argument("CsvTable: row width does not match header");
        rows.push_back(std::move(cells));
    }

    void write(std::ostream& os) const {
        for (const auto& c : comments) os << "# " << c << "\n";
        for (std::size_t j = 0; j < header.size(); ++j)
            os << header[j] << (j + 1 < header.size() ? "," : "");
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t j = 0; j < row.size(); ++j)
                os << row[j] << (j + 1 < row.size() ? "," : "");
            os << "\n";
        }
    }

    void write_file(const std::string& path) const {
        std::ofstream os(path);
        if (!os) throw std::runtime_error("CsvTable: cannot open " + path);
        write(os);
    }
};

}  // namespace rdmkit
