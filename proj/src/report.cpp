#include "ffl/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace ffl {

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw std::logic_error(command + ": row has " + std::to_string(row.size()) + " cells, expected " + std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const Cell& c) {
    struct V {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(std::int64_t x) const { return std::to_string(x); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(double x) const {
            if (std::isnan(x)) return "nan";
            if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            return buf;
        }
    };
    return std::visit(V{}, c);
}

void write_csv(std::ostream& os, const Table& t) {
    os << "# schema=" << kReportSchemaVersion << " command=" << t.command << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
    os << "\n";
    for (auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(row[i]));
        os << "\n";
    }
}

void write_json(std::ostream& os, const Table& t, bool timestamp) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    ordered_json meta;
    meta["command"] = t.command;
    for (auto& [k, v] : t.metadata) meta[k] = v;
    if (timestamp) {
        auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        meta["generated_at"] = buf;
    }
    j["metadata"] = meta;
    j["columns"] = t.columns;
    ordered_json rows = ordered_json::array();
    for (auto& row : t.rows) {
        ordered_json r = ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& name = t.columns[i];
            std::visit(
                [&](const auto& x) {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, std::monostate>) r[name] = nullptr;
                    else if constexpr (std::is_same_v<T, double>) r[name] = std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr);
                    else r[name] = x;
                },
                row[i]);
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << "\n";
}

void write_report(const Table& t, const std::string& base, const std::string& format) {
    auto emit = [&](const std::string& ext, auto writer) {
        std::string path = base + ext;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + path + " for writing");
        writer(f);
        f.flush();
        if (!f) throw std::runtime_error("write failed for " + path);
    };
    if (format == "csv" || format == "both") emit(".csv", [&](std::ostream& os) { write_csv(os, t); });
    if (format == "json" || format == "both") emit(".json", [&](std::ostream& os) { write_json(os, t); });
}

}  // namespace ffl
