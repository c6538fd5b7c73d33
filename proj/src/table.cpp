#include "plasmon_sr/table.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace plasmon_sr {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != header.size()) {
        throw std::logic_error("row has " + std::to_string(row.size()) + " cells, header has " +
                               std::to_string(header.size()));
    }
    rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw std::out_of_range("no column named " + name);
}

double Table::number(std::size_t row, const std::string& name) const {
    const auto& cell = rows.at(row).at(column(name));
    if (const auto* d = std::get_if<double>(&cell)) return *d;
    if (const auto* i = std::get_if<long long>(&cell)) return static_cast<double>(*i);
    throw std::invalid_argument("column " + name + " is not numeric");
}

const std::string& Table::text(std::size_t row, const std::string& name) const {
    return std::get<std::string>(rows.at(row).at(column(name)));
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string cell_text(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    return csv_escape(std::get<std::string>(c));
}

}  // namespace

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (i) os << ',';
        os << csv_escape(t.header[i]);
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << cell_text(row[i]);
        }
        os << '\n';
    }
}

void write_json(std::ostream& os, const Table& t) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& c = row[i];
            if (const auto* d = std::get_if<double>(&c)) {
                obj[t.header[i]] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json();
            } else if (const auto* n = std::get_if<long long>(&c)) {
                obj[t.header[i]] = *n;
            } else {
                obj[t.header[i]] = std::get<std::string>(c);
            }
        }
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

std::string to_csv(const Table& t) {
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

std::string to_json(const Table& t) {
    std::ostringstream os;
    write_json(os, t);
    return os.str();
}

}  // namespace plasmon_sr
