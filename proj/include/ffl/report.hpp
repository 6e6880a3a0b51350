#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ffl {

constexpr int kReportSchemaVersion = 1;

using Cell = std::variant<std::monostate, std::int64_t, double, std::string, bool>;

struct Table {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    // run description; "generated_at" is added on output and is outside the determinism contract
    std::vector<std::pair<std::string, std::string>> metadata;

    void add(std::vector<Cell> row);  // throws if the width is wrong
};

// RFC 4180 quoting: fields with a comma, quote, CR or LF are quoted, quotes doubled.
std::string csv_field(const std::string& s);
// Doubles print with 17 significant digits; NaN and inf as "nan", "inf", "-inf".
std::string cell_text(const Cell& c);

// A "# schema=<v> command=<name>" line, the header row, then one line per row.
void write_csv(std::ostream& os, const Table& t);
// {"schema_version", "metadata": {...}, "columns": [...], "rows": [{column: value}]}; NaN as null.
void write_json(std::ostream& os, const Table& t, bool timestamp = true);

// Writes <base>.csv and/or <base>.json; errors name the path.
void write_report(const Table& t, const std::string& base, const std::string& format);

}  // namespace ffl
