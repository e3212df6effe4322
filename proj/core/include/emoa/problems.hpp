#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emoa/rng.hpp"
#include "emoa/types.hpp"

namespace emoa {

enum class ProblemFamily { DTLZ1, DTLZ2, DTLZ3, DTLZ4, MinusDTLZ1, MinusDTLZ2, MinusDTLZ3, MinusDTLZ4 };

/// A scalable DTLZ instance. The decision dimension is M + k - 1 with the
/// usual k (5 for DTLZ1, 10 for DTLZ2-4); the box is [0,1]^n.
class ProblemSpec {
 public:
  ProblemSpec(ProblemFamily family, std::size_t objectives);

  [[nodiscard]] ProblemFamily family() const noexcept { return family_; }
  [[nodiscard]] std::size_t objectives() const noexcept { return objectives_; }
  [[nodiscard]] std::size_t decision_dimension() const noexcept { return objectives_ + distance_variables() - 1; }
  [[nodiscard]] std::size_t distance_variables() const noexcept;
  [[nodiscard]] bool is_minus() const noexcept;
  /// The DTLZ problem whose objectives this one negates (itself if not Minus).
  [[nodiscard]] ProblemFamily base_family() const noexcept;

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;

 private:
  ProblemFamily family_;
  std::size_t objectives_;
};

inline constexpr double kDtlz4Alpha = 100.0;

/// Lower-case name used in files and on the command line ("dtlz1", "minus-dtlz3").
std::string family_name(ProblemFamily family);
/// Accepts the names produced by family_name, case-insensitively, plus the
/// forms "mdtlz2" and "minusdtlz2".
ProblemFamily parse_family(std::string_view name);

/// Objectives of `x`; Minus families return the negated DTLZ values.
/// Throws InputError if x has the wrong length or leaves the box.
ObjectiveVector evaluate(const ProblemSpec& spec, std::span<const double> x);

/// True ideal and nadir points of the Pareto front. Minus families are read
/// from the compiled-in fixture table (see load_frame_fixture); a missing
/// (family, M) row raises LookupError.
NormalizationFrame true_frame(const ProblemSpec& spec);

/// Uniform decision vector in the box, evaluated. birth_generation and id are
/// left for the caller.
Solution random_solution(const ProblemSpec& spec, Rng& rng);

/// Default generation budgets per problem and objective count (3, 5, 8); for
/// other M the nearest tabulated M is used.
std::size_t default_generations(const ProblemSpec& spec);
/// Default population size per objective count: 91, 210, 156 for 3, 5, 8.
std::size_t default_population_size(std::size_t objectives);

struct FrameFixtureRow {
  ProblemFamily family;
  std::size_t objectives;
  std::vector<double> ideal;
  std::vector<double> nadir;
};

/// Parses the fixture format: one line per (family, M) with the family name,
/// M, M ideal coordinates and M nadir coordinates separated by spaces. Lines
/// starting with '#' and blank lines are ignored. Throws FormatError.
std::vector<FrameFixtureRow> parse_frame_fixture(std::string_view text);
std::string format_frame_fixture(const std::vector<FrameFixtureRow>& rows);

/// Fixture text compiled into the library.
std::string_view builtin_frame_fixture();

/// Largest value of one DTLZ distance-function term on [0,1], together with
/// its argmax; used to place distance variables on the Minus fronts.
struct DistanceTermMaximum {
  double argmax;
  double value;
};
DistanceTermMaximum maximize_distance_term(ProblemFamily base_family);

}  // namespace emoa
