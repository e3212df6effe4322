#pragma once

#include <cstddef>
#include <vector>

#include "emoa/hypervolume.hpp"
#include "emoa/timing.hpp"
#include "emoa/types.hpp"

namespace emoa {

struct SelectionConfig {
  /// Size of the final solution set (the population size by default).
  std::size_t k = 0;
  ReferencePoint reference;
  /// Used when reporting hypervolume of a selected set; greedy gains are
  /// always exact.
  HypervolumeMode hv_mode = ExactHypervolume{};

  static SelectionConfig defaults(std::size_t objectives, std::size_t k);
};

/// Positions of the candidates chosen by greedy hypervolume inclusion, in
/// pick order.
///
/// Each step adds the candidate with the largest hypervolume gain (smaller id
/// on ties). Gains are re-evaluated lazily: a candidate's last computed gain
/// is an upper bound on its current one, so only candidates whose bound
/// reaches the top of the queue are recomputed. Returns min(k, |candidates|)
/// positions; throws InputError if k == 0.
std::vector<std::size_t> hss_lazy_indices(const SolutionSet& candidates, std::size_t k, const ReferencePoint& ref,
                                          const Deadline* deadline = nullptr);

/// Lazy greedy hypervolume subset selection. Candidates are expected to be
/// normalized already.
SolutionSet select_hss_lazy(const SolutionSet& candidates, const SelectionConfig& config,
                            const Deadline* deadline = nullptr);

/// Greedy distance-based subset selection (same rule as truncate_dss).
SolutionSet select_dss(const SolutionSet& candidates, std::size_t k, const Deadline* deadline = nullptr);

}  // namespace emoa
