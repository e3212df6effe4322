#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "emoa/types.hpp"

namespace emoa {

inline constexpr double kDefaultReferenceCoordinate = 1.2;

/// Reference point in normalized objective space.
struct ReferencePoint {
  ObjectiveVector coords;

  /// (value, value, ..., value) with M coordinates.
  static ReferencePoint uniform(std::size_t m, double value = kDefaultReferenceCoordinate);
};

struct ExactHypervolume {};
struct MonteCarloHypervolume {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 1;
};
using HypervolumeMode = std::variant<ExactHypervolume, MonteCarloHypervolume>;

struct HypervolumeResult {
  double value = 0.0;
  /// Points dropped because they were not strictly inside the reference box.
  std::size_t excluded = 0;
};

/// Lebesgue measure of the union of boxes [p, ref] (minimization).
///
/// Points that are not strictly below the reference point in every
/// coordinate are dropped and counted. Exact mode sweeps the last objective
/// and recurses on slices down to a three-objective sweep; Monte-Carlo mode
/// samples uniformly in [min(points), ref]. An empty set has volume 0.
/// Throws DimensionError if the set and reference point disagree in M.
HypervolumeResult hypervolume_detail(const SolutionSet& set, const ReferencePoint& ref,
                                     const HypervolumeMode& mode = ExactHypervolume{});
double hypervolume(const SolutionSet& set, const ReferencePoint& ref, const HypervolumeMode& mode = ExactHypervolume{});

/// Exact volume of row-major points (n x m). Points must be strictly below ref.
double exact_hypervolume(std::span<const double> points, std::size_t m, std::span<const double> ref);

/// Volume dominated by `point` alone and by none of `others` (row-major,
/// m columns). Exactly 0 when some other point weakly dominates `point`.
double exclusive_hypervolume(std::span<const double> point, std::span<const double> others, std::size_t m,
                             std::span<const double> ref);

/// hypervolume(set) - hypervolume(set without member). The member is located
/// by id; throws InputError if it is absent.
double hv_contribution(const SolutionSet& set, const Solution& member, const ReferencePoint& ref);

}  // namespace emoa
