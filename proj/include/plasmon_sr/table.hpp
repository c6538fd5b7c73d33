// Row-oriented result table with deterministic CSV and JSON serialization.

#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace plasmon_sr {

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
    std::size_t column(const std::string& name) const;  // throws std::out_of_range
    double number(std::size_t row, const std::string& name) const;
    const std::string& text(std::size_t row, const std::string& name) const;
};

/// Doubles use 17 significant digits; non-finite values print as "nan",
/// "inf" or "-inf". Strings are quoted only when they need it.
std::string format_double(double v);
void write_csv(std::ostream& os, const Table& t);
/// JSON array of objects keyed by the header; non-finite doubles become null.
void write_json(std::ostream& os, const Table& t);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

}  // namespace plasmon_sr
