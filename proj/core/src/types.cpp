#include "emoa/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "emoa/error.hpp"

namespace emoa {

namespace {

void require_finite(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw InputError("objective " + std::to_string(i) + " is not finite");
    }
  }
}

bool lexicographic_less(const ObjectiveVector& a, const ObjectiveVector& b) {
  return std::lexicographical_compare(a.values().begin(), a.values().end(), b.values().begin(),
                                      b.values().end());
}

}  // namespace

ObjectiveVector::ObjectiveVector(std::vector<double> values) : values_(std::move(values)) {
  require_finite(values_);
}

ObjectiveVector::ObjectiveVector(std::initializer_list<double> values) : values_(values) {
  require_finite(values_);
}

std::size_t common_dimension(const SolutionSet& set) {
  if (set.empty()) return 0;
  const std::size_t m = set.front().objectives.size();
  for (const Solution& s : set) {
    if (s.objectives.size() != m) {
      throw DimensionError("solution set mixes " + std::to_string(m) + " and " +
                           std::to_string(s.objectives.size()) + " objectives");
    }
  }
  return m;
}

bool same_objective_multiset(const SolutionSet& a, const SolutionSet& b, double tolerance) {
  if (a.size() != b.size()) return false;
  std::vector<const ObjectiveVector*> lhs;
  std::vector<const ObjectiveVector*> rhs;
  lhs.reserve(a.size());
  rhs.reserve(b.size());
  for (const Solution& s : a) lhs.push_back(&s.objectives);
  for (const Solution& s : b) rhs.push_back(&s.objectives);
  auto by_value = [](const ObjectiveVector* x, const ObjectiveVector* y) {
    return lexicographic_less(*x, *y);
  };
  std::sort(lhs.begin(), lhs.end(), by_value);
  std::sort(rhs.begin(), rhs.end(), by_value);
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i]->size() != rhs[i]->size()) return false;
    for (std::size_t j = 0; j < lhs[i]->size(); ++j) {
      if (std::abs((*lhs[i])[j] - (*rhs[i])[j]) > tolerance) return false;
    }
  }
  return true;
}

std::vector<SolutionId> ids_of(const SolutionSet& set) {
  std::vector<SolutionId> ids;
  ids.reserve(set.size());
  for (const Solution& s : set) ids.push_back(s.id);
  return ids;
}

}  // namespace emoa
