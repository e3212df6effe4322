#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "emoa/error.hpp"
#include "emoa/types.hpp"

namespace {

emoa::Solution make(std::initializer_list<double> f, emoa::SolutionId id) {
  emoa::Solution s;
  s.objectives = emoa::ObjectiveVector(f);
  s.id = id;
  return s;
}

TEST(ObjectiveVector, RejectsNonFinite) {
  EXPECT_THROW(emoa::ObjectiveVector({1.0, std::numeric_limits<double>::infinity()}), emoa::InputError);
  EXPECT_THROW(emoa::ObjectiveVector({std::nan("")}), emoa::InputError);
  EXPECT_NO_THROW(emoa::ObjectiveVector({-1.0, 0.0}));
}

TEST(CommonDimension, MixedSetThrows) {
  EXPECT_EQ(emoa::common_dimension({}), 0U);
  EXPECT_EQ(emoa::common_dimension({make({1, 2}, 0), make({3, 4}, 1)}), 2U);
  EXPECT_THROW(emoa::common_dimension({make({1, 2}, 0), make({3, 4, 5}, 1)}), emoa::DimensionError);
}

TEST(SameObjectiveMultiset, IgnoresOrderAndCountsCopies) {
  const emoa::SolutionSet a{make({0, 1}, 0), make({1, 0}, 1), make({1, 0}, 2)};
  const emoa::SolutionSet b{make({1, 0}, 7), make({0, 1}, 8), make({1, 0}, 9)};
  const emoa::SolutionSet c{make({1, 0}, 7), make({0, 1}, 8), make({0, 1}, 9)};
  EXPECT_TRUE(emoa::same_objective_multiset(a, b));
  EXPECT_FALSE(emoa::same_objective_multiset(a, c));
  EXPECT_TRUE(emoa::same_objective_multiset({make({0.5}, 0)}, {make({0.5 + 1e-13}, 0)}));
  EXPECT_FALSE(emoa::same_objective_multiset({make({0.5}, 0)}, {make({0.5 + 1e-9}, 0)}));
}

}  // namespace
