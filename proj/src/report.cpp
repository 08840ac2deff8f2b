#include "dzl/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "dzl/util.hpp"

namespace dzl {

using nlohmann::json;

namespace {

json cell_json(const Cell& c) {
    if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
    if (const auto* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d)) return *d;
        // JSON has no infinities; keep the type.
        return json{{"nonfinite", std::isnan(*d) ? "nan" : (*d > 0 ? "inf" : "-inf")}};
    }
    return std::get<std::string>(c);
}

Cell cell_from(const json& j) {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_number_float()) return j.get<double>();
    if (j.is_string()) return j.get<std::string>();
    if (j.is_object() && j.contains("nonfinite")) {
        const auto s = j.at("nonfinite").get<std::string>();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        return s == "inf" ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    }
    throw std::invalid_argument("report: unsupported cell value");
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

}  // namespace

std::size_t Table::column(const std::string& n) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i].name == n) return i;
    throw std::out_of_range("table '" + name + "' has no column '" + n + "'");
}

bool Report::any_failed_rows() const {
    for (const auto& t : tables)
        for (const auto& r : t.rows)
            if (r.failed) return true;
    return false;
}

const Table& Report::table(const std::string& n) const {
    for (const auto& t : tables)
        if (t.name == n) return t;
    throw std::out_of_range("report has no table '" + n + "'");
}

std::string cell_to_string(const Cell& c) {
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&c)) return g17(*d);
    return std::get<std::string>(c);
}

std::string report_to_json(const Report& r) {
    json j;
    j["schema"] = r.schema;
    j["experiment"] = r.experiment;
    j["version"] = r.version;
    j["seed"] = r.seed;
    j["config"] = r.config;
    json tables = json::array();
    for (const auto& t : r.tables) {
        json jt;
        jt["name"] = t.name;
        json cols = json::array();
        for (const auto& c : t.columns) cols.push_back({{"name", c.name}, {"provenance", c.provenance}});
        jt["columns"] = cols;
        json rows = json::array();
        for (const auto& row : t.rows) {
            json cells = json::array();
            for (const auto& c : row.cells) cells.push_back(cell_json(c));
            rows.push_back({{"cells", cells}, {"failed", row.failed}, {"error", row.error}});
        }
        jt["rows"] = rows;
        tables.push_back(jt);
    }
    j["tables"] = tables;
    json summary = json::object();
    for (const auto& [k, v] : r.summary) summary[k] = cell_json(v);
    j["summary"] = summary;
    return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
    const json j = json::parse(text);
    Report r;
    r.schema = j.at("schema").get<std::string>();
    if (r.schema != kReportSchema)
        throw std::invalid_argument("report schema mismatch: expected " + std::string(kReportSchema) + ", found " + r.schema);
    r.experiment = j.at("experiment").get<std::string>();
    r.version = j.at("version").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.config = j.at("config").get<std::map<std::string, std::string>>();
    for (const auto& jt : j.at("tables")) {
        Table t;
        t.name = jt.at("name").get<std::string>();
        for (const auto& c : jt.at("columns"))
            t.columns.push_back({c.at("name").get<std::string>(), c.at("provenance").get<std::string>()});
        for (const auto& jr : jt.at("rows")) {
            Row row;
            for (const auto& c : jr.at("cells")) row.cells.push_back(cell_from(c));
            row.failed = jr.at("failed").get<bool>();
            row.error = jr.at("error").get<std::string>();
            t.rows.push_back(std::move(row));
        }
        r.tables.push_back(std::move(t));
    }
    for (const auto& [k, v] : j.at("summary").items()) r.summary[k] = cell_from(v);
    return r;
}

void write_table_csv(std::ostream& os, const Table& t) {
    for (const auto& c : t.columns) os << csv_field(c.name) << ',';
    os << "failed,error\n";
    for (const auto& row : t.rows) {
        for (const auto& c : row.cells) os << csv_field(cell_to_string(c)) << ',';
        os << (row.failed ? 1 : 0) << ',' << csv_field(row.error) << '\n';
    }
}

std::vector<std::string> emit_report(const Report& r, ReportFormat format, const std::string& dir,
                                     const std::string& stem) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::vector<std::string> written;
    auto open = [&](const fs::path& p) {
        std::ofstream out(p, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
        written.push_back(p.string());
        return out;
    };
    if (format == ReportFormat::json) {
        auto out = open(fs::path(dir) / (stem + ".json"));
        out << report_to_json(r);
        if (!out) throw std::runtime_error("write failed for '" + written.back() + "'");
    } else {
        for (const auto& t : r.tables) {
            auto out = open(fs::path(dir) / (stem + "_" + t.name + ".csv"));
            write_table_csv(out, t);
            if (!out) throw std::runtime_error("write failed for '" + written.back() + "'");
        }
    }
    return written;
}

}  // namespace dzl
