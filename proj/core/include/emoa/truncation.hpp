#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "emoa/timing.hpp"
#include "emoa/types.hpp"

namespace emoa {

enum class TruncationKind {
  /// Greedy farthest-point inclusion in the set's own normalized space.
  DistanceGreedyInclusion,
  /// Repeated removal of the member with the smallest crowding distance.
  CrowdingRemoval,
};

std::string truncation_name(TruncationKind kind);
TruncationKind parse_truncation(std::string_view name);

/// Positions of the `count` members chosen by greedy distance-based
/// inclusion, in the order they were chosen.
///
/// The first pick is the member with the largest first objective; each later
/// pick maximizes the Euclidean distance to its nearest already-chosen member,
/// measured after normalizing by estimate_frame(set). Ties go to the smaller
/// solution id. Requires 1 <= count <= |set|.
std::vector<std::size_t> dss_select_indices(const SolutionSet& set, std::size_t count,
                                            const Deadline* deadline = nullptr);

/// `set` unchanged if |set| <= s, otherwise the s members chosen by
/// dss_select_indices in selection order. Throws InputError if s == 0.
SolutionSet truncate_dss(const SolutionSet& set, std::size_t s, const Deadline* deadline = nullptr);

/// Positions of the members that survive crowding-distance removal, ascending.
/// Requires 1 <= count <= |set|.
std::vector<std::size_t> crowding_survivor_indices(const SolutionSet& set, std::size_t count,
                                                   const Deadline* deadline = nullptr);

/// `set` unchanged if |set| <= s; otherwise removes, one at a time, the member
/// with the smallest crowding distance (recomputed after every removal; larger
/// id first on ties). Throws InputError if s == 0.
SolutionSet truncate_crowding(const SolutionSet& set, std::size_t s, const Deadline* deadline = nullptr);

/// In-place truncation to at most s members with the chosen operator.
void truncate_in_place(SolutionSet& set, std::size_t s, TruncationKind kind, const Deadline* deadline = nullptr);

}  // namespace emoa
