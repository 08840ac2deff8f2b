#pragma once

// Experiment reports: tables whose columns carry provenance, emitted as CSV (one file
// per table) and JSON (schema "dzl-report-1").

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace dzl {

inline constexpr const char* kReportSchema = "dzl-report-1";

using Cell = std::variant<std::int64_t, double, std::string>;

struct Column {
    std::string name;
    /// formula | scan | oracle | param | status
    std::string provenance;
    bool operator==(const Column&) const = default;
};

struct Row {
    std::vector<Cell> cells;
    bool failed = false;
    std::string error;
    bool operator==(const Row&) const = default;
};

struct Table {
    std::string name;
    std::vector<Column> columns;
    std::vector<Row> rows;

    /// Index of a column by name; throws std::out_of_range.
    std::size_t column(const std::string& name) const;
    bool operator==(const Table&) const = default;
};

struct Report {
    std::string schema = kReportSchema;
    std::string experiment;
    std::string version;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> config;
    std::vector<Table> tables;
    std::map<std::string, Cell> summary;

    bool any_failed_rows() const;
    const Table& table(const std::string& name) const;
    bool operator==(const Report&) const = default;
};

std::string report_to_json(const Report& r);
/// Throws std::invalid_argument on schema mismatch.
Report report_from_json(const std::string& text);

void write_table_csv(std::ostream& os, const Table& t);

enum class ReportFormat { csv, json };

/// Writes <dir>/<stem>.json or <dir>/<stem>_<table>.csv; returns the paths written.
std::vector<std::string> emit_report(const Report& r, ReportFormat format, const std::string& dir,
                                     const std::string& stem);

std::string cell_to_string(const Cell& c);

}  // namespace dzl
