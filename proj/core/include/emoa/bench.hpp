#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emoa/archive.hpp"
#include "emoa/selection.hpp"
#include "emoa/sequence_log.hpp"

namespace emoa {

struct TimingBreakdown {
  double removal_seconds = 0.0;
  double truncation_seconds = 0.0;
  double selection_seconds = 0.0;
  /// removal + truncation + selection.
  double total_seconds = 0.0;
};

/// Outcome of one (sequence, strategy, s, T) cell.
struct RunReport {
  std::string sequence_id;
  std::string algorithm;
  ProblemSpec problem{ProblemFamily::DTLZ2, 3};
  std::size_t population_size = 0;
  std::size_t generations = 0;
  ArchiveStrategyConfig strategy;
  /// Window actually used by last-x.
  std::optional<std::size_t> window;

  std::size_t final_archive_size = 0;
  std::size_t peak_cardinality = 0;
  TimingBreakdown timing;
  /// Hypervolume in the true normalized frame (reference 1.2 by default).
  std::optional<double> hv_selected;
  std::optional<double> hv_final_population;
  /// Hypervolume of the selected set in the frame estimated from the final
  /// archive, i.e. the space the selection optimized.
  std::optional<double> hv_selected_estimated_frame;
  bool timed_out = false;
  /// Set when the cell failed for a reason other than the time budget.
  std::optional<std::string> error;

  SolutionSet final_archive;
  SolutionSet selected;
  std::vector<CardinalityRecord> trace;
};

inline constexpr std::chrono::duration<double> kDefaultTimeBudget = std::chrono::hours(1);

struct ReplayOptions {
  std::chrono::duration<double> budget = kDefaultTimeBudget;
  std::string sequence_id;
  /// Keep final archive and selected set in the report.
  bool keep_sets = true;
};

/// Runs the archive strategy over the log, then selects the final set with
/// lazy greedy hypervolume selection in the frame estimated from the final
/// archive, and scores it in the problem's true frame.
///
/// Only dominated-solution removal, truncation and final selection are
/// timed. selection.k == 0 means k = N; an empty reference means 1.2 in every
/// coordinate. If the budget runs out the report has timed_out set and no
/// hypervolume values.
RunReport replay(const SequenceLog& log, const ArchiveStrategyConfig& strategy, const SelectionConfig& selection,
                 const ReplayOptions& options = {});

/// Archive size given either absolutely or as a multiple of N ("50N").
struct SizeSpec {
  std::size_t value = 1;
  bool times_population = true;

  [[nodiscard]] std::size_t resolve(std::size_t population_size) const;
  [[nodiscard]] std::string to_string() const;
  /// "N", "10N", "2000N", "5000"; throws InputError.
  static SizeSpec parse(std::string_view text);
};

/// The eleven archive sizes N .. 2000N.
std::vector<SizeSpec> default_size_grid();
/// T = 1, 2, 5, 10, 20.
std::vector<std::size_t> default_interval_grid();

struct SweepGrid {
  std::vector<StrategyKind> strategies;
  std::vector<SizeSpec> sizes;
  /// Expanded for lazy-periodical only.
  std::vector<std::size_t> intervals{1};
  TruncationKind truncation = TruncationKind::DistanceGreedyInclusion;
};

struct NamedLog {
  std::string id;
  const SequenceLog* log;
};

/// Strategy configurations of one log after size and interval expansion, in
/// sweep order.
std::vector<ArchiveStrategyConfig> expand_cells(const SweepGrid& grid, std::size_t population_size);

/// Called once per finished cell with the number of cells done so far.
using CellCallback = std::function<void(const RunReport& report, std::size_t done, std::size_t total)>;

/// One report per (log, size, strategy cell). Cells run independently on up
/// to `threads` workers; a failing cell records its error and the sweep goes
/// on. Report order does not depend on the thread count. The callback is
/// serialized.
std::vector<RunReport> sweep(const std::vector<NamedLog>& logs, const SweepGrid& grid, const SelectionConfig& selection,
                             std::chrono::duration<double> budget, std::size_t threads = 1, bool keep_sets = false,
                             const CellCallback& on_cell = {});

enum class GroupField { Sequence, Algorithm, Problem, Objectives, Strategy, Size, Interval, Truncation };

std::vector<GroupField> default_group_fields();

struct AggregateRow {
  // Key columns; empty where the field is not grouped on.
  std::string algorithm;
  std::string problem;
  std::string objectives;
  std::string population_size;
  std::string sequence_id;
  std::string strategy;
  std::string size;
  std::string interval;
  std::string window;
  std::string truncation;
  std::size_t runs = 0;
  std::size_t timeouts = 0;
  std::size_t errors = 0;
  std::optional<double> mean_hv_selected;
  std::optional<double> mean_hv_final_population;
  std::optional<double> mean_removal_seconds;
  std::optional<double> mean_truncation_seconds;
  std::optional<double> mean_selection_seconds;
  std::optional<double> mean_total_seconds;
  std::optional<double> median_total_seconds;
  std::optional<double> mean_final_archive_size;
  std::size_t max_peak_cardinality = 0;
  /// Size expressed in multiples of N, for log-scaled plots.
  double size_over_population = 0.0;
};

struct AggregateTable {
  std::vector<AggregateRow> rows;
  std::vector<std::string> warnings;
};

/// Means over completed cells per group; timed-out cells are counted but
/// excluded from every mean. Groups with no usable report are omitted and
/// noted in warnings.
AggregateTable aggregate(const std::vector<RunReport>& reports,
                         const std::vector<GroupField>& group_by = default_group_fields());

/// Label of a strategy cell for plots and tables ("lazy-periodical T=10").
std::string cell_label(const ArchiveStrategyConfig& config);

std::string size_label(const ArchiveStrategyConfig& config);

}  // namespace emoa
