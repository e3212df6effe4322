#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace emoa {

/// Objective values of one solution, minimization convention.
///
/// Every entry is finite; construction from non-finite data throws
/// InputError. Maximization problems are negated at evaluation time so that
/// every comparison in the library minimizes.
class ObjectiveVector {
 public:
  ObjectiveVector() = default;
  explicit ObjectiveVector(std::vector<double> values);
  ObjectiveVector(std::initializer_list<double> values);

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] const double* data() const noexcept { return values_.data(); }

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;

 private:
  std::vector<double> values_;
};

using SolutionId = std::uint64_t;

struct Solution {
  ObjectiveVector objectives;
  /// Decision vector in [0,1]^n; empty when not stored.
  std::vector<double> decision;
  std::uint32_t birth_generation = 0;
  SolutionId id = 0;
};

/// Unordered collection of solutions. Duplicated objective vectors are allowed.
using SolutionSet = std::vector<Solution>;

enum class FrameSource { EstimatedFromArchive, TrueFront };

/// Ideal and nadir points used to map objectives onto the unit box.
struct NormalizationFrame {
  ObjectiveVector ideal;
  ObjectiveVector nadir;
  FrameSource source = FrameSource::EstimatedFromArchive;
};

/// Number of objectives shared by all members; throws DimensionError on a
/// mix, returns 0 for an empty set.
std::size_t common_dimension(const SolutionSet& set);

/// Multiset equality on objective vectors with an absolute per-coordinate
/// tolerance.
bool same_objective_multiset(const SolutionSet& a, const SolutionSet& b, double tolerance = 1e-12);

std::vector<SolutionId> ids_of(const SolutionSet& set);

}  // namespace emoa
