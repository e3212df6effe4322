#include "emoa/selection.hpp"

#include <algorithm>
#include <queue>

#include "emoa/error.hpp"
#include "emoa/truncation.hpp"

namespace emoa {

SelectionConfig SelectionConfig::defaults(std::size_t objectives, std::size_t k) {
  return SelectionConfig{k, ReferencePoint::uniform(objectives), ExactHypervolume{}};
}

namespace {

struct Bound {
  double gain;
  SolutionId id;
  std::size_t index;
  std::size_t stamp;  // number of picks when `gain` was computed
};

// Max-heap on gain; equal gains surface the smaller id first.
struct BoundOrder {
  bool operator()(const Bound& a, const Bound& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.id > b.id;
  }
};

}  // namespace

std::vector<std::size_t> hss_lazy_indices(const SolutionSet& candidates, std::size_t k, const ReferencePoint& ref,
                                          const Deadline* deadline) {
  if (k == 0) throw InputError("subset size must be at least 1");
  const std::size_t m = common_dimension(candidates);
  const std::size_t n = candidates.size();
  if (n == 0) return {};
  if (ref.coords.size() != m) throw DimensionError("reference point and candidates disagree in M");
  const std::span<const double> r = ref.coords.values();

  std::vector<bool> inside(n, true);
  std::priority_queue<Bound, std::vector<Bound>, BoundOrder> queue;
  for (std::size_t i = 0; i < n; ++i) {
    double box = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double side = r[j] - candidates[i].objectives[j];
      if (!(side > 0.0)) inside[i] = false;
      box *= side;
    }
    queue.push(Bound{inside[i] ? box : 0.0, candidates[i].id, i, 0});
  }

  std::vector<std::size_t> picked;
  const std::size_t target = std::min(k, n);
  picked.reserve(target);
  std::vector<double> chosen;  // row-major coordinates of picked in-box members
  while (picked.size() < target) {
    check_deadline(deadline);
    Bound top = queue.top();
    queue.pop();
    if (top.stamp == picked.size()) {
      picked.push_back(top.index);
      if (inside[top.index]) {
        auto v = candidates[top.index].objectives.values();
        chosen.insert(chosen.end(), v.begin(), v.end());
      }
      continue;
    }
    top.gain = inside[top.index]
                   ? exclusive_hypervolume(candidates[top.index].objectives.values(), chosen, m, r)
                   : 0.0;
    top.stamp = picked.size();
    queue.push(top);
  }
  return picked;
}

SolutionSet select_hss_lazy(const SolutionSet& candidates, const SelectionConfig& config, const Deadline* deadline) {
  SolutionSet out;
  for (std::size_t i : hss_lazy_indices(candidates, config.k, config.reference, deadline)) {
    out.push_back(candidates[i]);
  }
  return out;
}

SolutionSet select_dss(const SolutionSet& candidates, std::size_t k, const Deadline* deadline) {
  if (k == 0) throw InputError("subset size must be at least 1");
  return truncate_dss(candidates, k, deadline);
}

}  // namespace emoa
