#include "emoa/normalization.hpp"

#include <algorithm>
#include <string>

#include "emoa/error.hpp"

namespace emoa {

namespace {

void check_frame(std::size_t m, const NormalizationFrame& frame) {
  if (frame.ideal.size() != m || frame.nadir.size() != m) {
    throw DimensionError("frame has " + std::to_string(frame.ideal.size()) + " objectives, set has " +
                         std::to_string(m));
  }
}

}  // namespace

void repair_degenerate_axes(NormalizationFrame& frame) {
  std::vector<double> nadir(frame.nadir.values().begin(), frame.nadir.values().end());
  bool changed = false;
  for (std::size_t i = 0; i < nadir.size(); ++i) {
    if (!(nadir[i] > frame.ideal[i])) {
      nadir[i] = frame.ideal[i] + 1.0;
      changed = true;
    }
  }
  if (changed) frame.nadir = ObjectiveVector(std::move(nadir));
}

NormalizationFrame estimate_frame(const SolutionSet& archive) {
  const std::size_t m = common_dimension(archive);
  if (archive.empty()) throw EmptyInputError("cannot estimate a frame from an empty archive");
  std::vector<double> lo(archive.front().objectives.values().begin(), archive.front().objectives.values().end());
  std::vector<double> hi = lo;
  for (const Solution& s : archive) {
    for (std::size_t i = 0; i < m; ++i) {
      lo[i] = std::min(lo[i], s.objectives[i]);
      hi[i] = std::max(hi[i], s.objectives[i]);
    }
  }
  NormalizationFrame frame{ObjectiveVector(std::move(lo)), ObjectiveVector(std::move(hi)),
                           FrameSource::EstimatedFromArchive};
  repair_degenerate_axes(frame);
  return frame;
}

SolutionSet normalize(const SolutionSet& set, const NormalizationFrame& frame) {
  const std::size_t m = common_dimension(set);
  if (set.empty()) return {};
  check_frame(m, frame);
  SolutionSet out;
  out.reserve(set.size());
  std::vector<double> values(m);
  for (const Solution& s : set) {
    for (std::size_t i = 0; i < m; ++i) {
      values[i] = (s.objectives[i] - frame.ideal[i]) / (frame.nadir[i] - frame.ideal[i]);
    }
    out.push_back(Solution{ObjectiveVector(values), s.decision, s.birth_generation, s.id});
  }
  return out;
}

std::vector<double> normalized_matrix(const SolutionSet& set, const NormalizationFrame& frame) {
  const std::size_t m = common_dimension(set);
  if (set.empty()) return {};
  check_frame(m, frame);
  std::vector<double> out(set.size() * m);
  for (std::size_t r = 0; r < set.size(); ++r) {
    for (std::size_t i = 0; i < m; ++i) {
      out[r * m + i] = (set[r].objectives[i] - frame.ideal[i]) / (frame.nadir[i] - frame.ideal[i]);
    }
  }
  return out;
}

}  // namespace emoa
