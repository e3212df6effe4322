#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emoa/dominance.hpp"
#include "emoa/sequence_log.hpp"
#include "emoa/timing.hpp"
#include "emoa/truncation.hpp"
#include "emoa/types.hpp"

namespace emoa {

inline constexpr std::size_t kUnboundedCapacity = std::numeric_limits<std::size_t>::max();

enum class StrategyKind { Standard, LazyPeriodical, LastX, Unbounded };

std::string strategy_name(StrategyKind kind);
/// Accepts "standard", "lazy" (lazy-periodical with T=1), "lazy-periodical",
/// "last-x" and "unbounded".
StrategyKind parse_strategy(std::string_view name);

/// Fully determines how an archive is maintained over a run.
struct ArchiveStrategyConfig {
  StrategyKind kind = StrategyKind::Standard;
  /// Archive size s; kUnboundedCapacity for no limit.
  std::size_t capacity = kUnboundedCapacity;
  /// Maintenance interval T (lazy-periodical; also the fallback maintenance
  /// interval of last-X when X * N > s).
  std::size_t interval = 1;
  /// Window X for last-X; unset means min(floor(s / N), g_max).
  std::optional<std::size_t> window;
  TruncationKind truncation = TruncationKind::DistanceGreedyInclusion;
  FilterAlgorithm filter = FilterAlgorithm::EfficientSort;

  static ArchiveStrategyConfig standard(std::size_t s);
  static ArchiveStrategyConfig lazy(std::size_t s) { return lazy_periodical(s, 1); }
  static ArchiveStrategyConfig lazy_periodical(std::size_t s, std::size_t t);
  static ArchiveStrategyConfig last_x(std::size_t s, std::optional<std::size_t> x = std::nullopt);
  static ArchiveStrategyConfig unbounded();

  [[nodiscard]] bool bounded() const noexcept { return capacity != kUnboundedCapacity; }
  /// X actually used for a run with population size N and g_max generations.
  [[nodiscard]] std::size_t resolved_window(std::size_t population_size, std::size_t generations) const;
  /// Throws InputError on s == 0, T == 0, X == 0 or an unbounded last-X
  /// without an explicit window.
  void validate() const;
};

/// Archive cardinality around one generation's maintenance.
struct CardinalityRecord {
  std::size_t generation;
  std::size_t before_maintenance;
  std::size_t after_maintenance;
};

struct ArchiveState {
  SolutionSet members;
  /// Last generation processed (0 before the first update).
  std::size_t generation = 0;
  /// Largest |members| seen, counting the union before maintenance.
  std::size_t peak_cardinality = 0;
  std::vector<CardinalityRecord> trace;
};

/// Where maintenance work is accounted. All pointers are optional.
struct MaintenanceContext {
  OperationClock* removal = nullptr;
  OperationClock* truncation = nullptr;
  const Deadline* deadline = nullptr;
  FilterAlgorithm filter = FilterAlgorithm::EfficientSort;
};

/// A_1 = P_1.
ArchiveState initial_archive(const SolutionSet& first_population);

/// Union with the offspring, removal of dominated members, then truncation
/// to s if still over capacity.
void standard_update(ArchiveState& state, const SolutionSet& offspring, std::size_t s, TruncationKind truncation,
                     MaintenanceContext& ctx);

/// Union with the offspring; when (g_max - g) mod T == 0, dominated members
/// are removed if the archive is over capacity or g == g_max, and the archive
/// is truncated if it is still over capacity. Requires 2 <= g <= g_max.
void lazy_periodical_update(ArchiveState& state, const SolutionSet& offspring, std::size_t g, std::size_t g_max,
                            std::size_t s, std::size_t t, TruncationKind truncation, MaintenanceContext& ctx);

/// Input is P_g when g == g_max - X + 1 and O_{g-1} afterwards. No-op before
/// the window opens; dominated members are removed once at g_max. If the
/// window holds more than s solutions, lazy-periodical maintenance with
/// interval T keeps the archive within s.
void last_x_update(ArchiveState& state, const SolutionSet& input, std::size_t g, std::size_t g_max, std::size_t x,
                   std::size_t s, std::size_t t, TruncationKind truncation, MaintenanceContext& ctx);

/// Feeds a recorded run through a strategy and returns the final archive.
ArchiveState replay_archive(const SequenceLog& log, const ArchiveStrategyConfig& config, MaintenanceContext& ctx);

}  // namespace emoa
