#include "emoa/dominance.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "emoa/error.hpp"

namespace emoa {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("cannot compare vectors of length " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  return dominates(a.values(), b.values());
}

namespace {

std::vector<std::size_t> naive_front(const SolutionSet& set) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < set.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < set.size() && !dominated; ++j) {
      dominated = j != i && dominates(set[j].objectives.values(), set[i].objectives.values());
    }
    if (!dominated) kept.push_back(i);
  }
  return kept;
}

std::vector<std::size_t> lexicographic_order(const SolutionSet& set) {
  std::vector<std::size_t> order(set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto va = set[a].objectives.values();
    auto vb = set[b].objectives.values();
    return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
  });
  return order;
}

// Points arrive in lexicographic order, so every earlier point that weakly
// dominates the current one and differs from it strictly dominates it. The
// staircase holds the 2-D minimal (f2, f3) pairs seen so far, keyed by f2 with
// f3 strictly decreasing.
std::vector<std::size_t> staircase_front(const SolutionSet& set, std::size_t m) {
  const std::vector<std::size_t> order = lexicographic_order(set);
  std::map<double, double> staircase;
  std::vector<std::size_t> kept;
  auto third = [&](std::size_t idx) { return m == 3 ? set[idx].objectives[2] : 0.0; };

  std::size_t begin = 0;
  while (begin < order.size()) {
    std::size_t end = begin + 1;
    while (end < order.size() && set[order[end]].objectives == set[order[begin]].objectives) ++end;

    const double f2 = set[order[begin]].objectives[1];
    const double f3 = third(order[begin]);
    bool dominated = false;
    auto it = staircase.upper_bound(f2);
    if (it != staircase.begin()) {
      --it;
      dominated = it->second <= f3;
    }
    if (!dominated) {
      for (std::size_t i = begin; i < end; ++i) kept.push_back(order[i]);
      auto erase_from = staircase.lower_bound(f2);
      while (erase_from != staircase.end() && erase_from->second >= f3) {
        erase_from = staircase.erase(erase_from);
      }
      staircase.emplace(f2, f3);
    }
    begin = end;
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::vector<std::size_t> sequential_front(const SolutionSet& set, std::size_t m) {
  const std::vector<std::size_t> order = lexicographic_order(set);
  std::vector<double> front;  // flat coordinates of retained points
  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    std::span<const double> p = set[idx].objectives.values();
    bool dominated = false;
    // Most recently retained points are closest in sort order and most likely
    // to dominate.
    for (std::size_t k = kept.size(); k-- > 0;) {
      if (dominates(std::span<const double>(front.data() + k * m, m), p)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) {
      kept.push_back(idx);
      front.insert(front.end(), p.begin(), p.end());
    }
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace

std::vector<std::size_t> nondominated_indices(const SolutionSet& set, FilterAlgorithm algorithm) {
  const std::size_t m = common_dimension(set);
  if (set.empty()) return {};
  if (algorithm == FilterAlgorithm::Naive) return naive_front(set);
  if (m == 1) {
    double best = set.front().objectives[0];
    for (const Solution& s : set) best = std::min(best, s.objectives[0]);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (set[i].objectives[0] == best) kept.push_back(i);
    }
    return kept;
  }
  if (m <= 3) return staircase_front(set, m);
  return sequential_front(set, m);
}

SolutionSet nondominated_filter(const SolutionSet& set, FilterAlgorithm algorithm) {
  SolutionSet out;
  const std::vector<std::size_t> kept = nondominated_indices(set, algorithm);
  out.reserve(kept.size());
  for (std::size_t i : kept) out.push_back(set[i]);
  return out;
}

void remove_dominated(SolutionSet& set, FilterAlgorithm algorithm) {
  const std::vector<std::size_t> kept = nondominated_indices(set, algorithm);
  if (kept.size() == set.size()) return;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    if (kept[k] != k) set[k] = std::move(set[kept[k]]);
  }
  set.resize(kept.size());
}

}  // namespace emoa
