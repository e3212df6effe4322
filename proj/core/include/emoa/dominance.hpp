#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "emoa/types.hpp"

namespace emoa {

/// Pareto dominance under minimization: a is no worse everywhere and strictly
/// better somewhere. Throws DimensionError on a length mismatch.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Unchecked variant over raw coordinates of equal length.
inline bool dominates(std::span<const double> a, std::span<const double> b) noexcept {
  bool strictly_better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly_better = true;
  }
  return strictly_better;
}

enum class FilterAlgorithm {
  /// Pairwise O(n^2 M) comparison.
  Naive,
  /// Lexicographic presort, then each point is tested only against the
  /// nondominated points already found. Two and three objectives use a
  /// staircase sweep, O(n log n).
  EfficientSort,
};

/// Positions (into `set`, ascending) of the members not dominated by any
/// other member. Identical objective vectors never dominate each other, so all
/// copies of a nondominated vector are kept.
std::vector<std::size_t> nondominated_indices(const SolutionSet& set,
                                              FilterAlgorithm algorithm = FilterAlgorithm::EfficientSort);

/// Members of `set` not dominated by any other member, in input order.
SolutionSet nondominated_filter(const SolutionSet& set,
                                FilterAlgorithm algorithm = FilterAlgorithm::EfficientSort);

/// In-place variant used by the archive: keeps the nondominated members.
void remove_dominated(SolutionSet& set, FilterAlgorithm algorithm = FilterAlgorithm::EfficientSort);

}  // namespace emoa
