#pragma once

#include <cstddef>
#include <vector>

#include "emoa/types.hpp"

namespace emoa {

/// Coordinate-wise min (ideal) and max (nadir) over the archive. An axis with
/// nadir == ideal gets nadir = ideal + 1 so that it maps to coordinate 0.
/// Throws EmptyInputError on an empty archive.
NormalizationFrame estimate_frame(const SolutionSet& archive);

/// Applies the unit-span repair to any degenerate axis of `frame`.
void repair_degenerate_axes(NormalizationFrame& frame);

/// Maps each objective to (f - ideal) / (nadir - ideal). Ids, decisions and
/// birth generations are preserved.
SolutionSet normalize(const SolutionSet& set, const NormalizationFrame& frame);

/// Row-major n x M normalized objective matrix, for hot loops.
std::vector<double> normalized_matrix(const SolutionSet& set, const NormalizationFrame& frame);

}  // namespace emoa
