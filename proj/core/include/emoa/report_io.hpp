#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "emoa/bench.hpp"

namespace emoa {

/// Exact header line of the per-cell CSV.
std::string_view report_csv_header();

/// One row per report. Timed-out and failed cells have empty hv fields.
/// Numbers use the shortest round-trip form, '.' as decimal point, LF endings.
void write_reports_csv(std::ostream& out, const std::vector<RunReport>& reports);

/// Reads back the cell key, sizes, timings and hv fields. Throws FormatError.
std::vector<RunReport> read_reports_csv(std::istream& in);
std::vector<RunReport> read_reports_csv(const std::filesystem::path& path);

void write_aggregate_csv(std::ostream& out, const AggregateTable& table);

enum class PlotView { QualityVsSize, TimeVsSize, QualityTime, QualityMemory };

std::string view_name(PlotView view);

/// Log-x line chart with one polyline per strategy cell ("standard",
/// "lazy-periodical T=5", ...). Rows are expected to share one problem.
std::string render_svg(const std::vector<AggregateRow>& rows, PlotView view, const std::string& title);

enum class EmitFormat { CSV, PlotSVG };

/// CSV: writes the table to `path`. PlotSVG: creates directory `path` and
/// writes one chart per (algorithm, problem, M) and view. Returns the files
/// written. Throws InputError on an empty table and IoError when a file
/// cannot be written.
std::vector<std::filesystem::path> emit(const AggregateTable& table, EmitFormat format,
                                        const std::filesystem::path& path);

}  // namespace emoa
