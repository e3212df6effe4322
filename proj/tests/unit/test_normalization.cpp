#include <gtest/gtest.h>

#include "emoa/error.hpp"
#include "emoa/normalization.hpp"
#include "emoa/problems.hpp"

namespace {

using emoa::ObjectiveVector;

emoa::SolutionSet points(std::vector<std::vector<double>> rows) {
  emoa::SolutionSet out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    emoa::Solution s;
    s.objectives = ObjectiveVector(rows[i]);
    s.id = i;
    out.push_back(s);
  }
  return out;
}

TEST(EstimateFrame, MinMax) {
  const auto frame = emoa::estimate_frame(points({{0, 1}, {1, 0}}));
  EXPECT_EQ(frame.ideal, (ObjectiveVector{0, 0}));
  EXPECT_EQ(frame.nadir, (ObjectiveVector{1, 1}));
  EXPECT_EQ(frame.source, emoa::FrameSource::EstimatedFromArchive);
}

TEST(EstimateFrame, DegenerateAxisRepaired) {
  const auto frame = emoa::estimate_frame(points({{0.3, 0.3}}));
  EXPECT_EQ(frame.ideal, (ObjectiveVector{0.3, 0.3}));
  EXPECT_DOUBLE_EQ(frame.nadir[0], 1.3);
  EXPECT_DOUBLE_EQ(frame.nadir[1], 1.3);
}

TEST(EstimateFrame, EmptyThrows) { EXPECT_THROW(emoa::estimate_frame({}), emoa::EmptyInputError); }

TEST(EstimateFrame, Dtlz2FrontSamples) {
  const emoa::ProblemSpec spec(emoa::ProblemFamily::DTLZ2, 3);
  emoa::Rng rng(3);
  emoa::SolutionSet set;
  std::vector<double> x(spec.decision_dimension(), 0.5);
  for (int i = 0; i < 5000; ++i) {
    x[0] = rng.uniform();
    x[1] = rng.uniform();
    emoa::Solution s;
    s.objectives = emoa::evaluate(spec, x);
    set.push_back(s);
  }
  const auto frame = emoa::estimate_frame(set);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_NEAR(frame.ideal[j], 0.0, 1e-3);
    EXPECT_NEAR(frame.nadir[j], 1.0, 1e-3);
  }
}

TEST(Normalize, Examples) {
  const emoa::NormalizationFrame unit{ObjectiveVector{0, 0}, ObjectiveVector{1, 1}};
  EXPECT_EQ(emoa::normalize(points({{0.5, 0.5}}), unit)[0].objectives, (ObjectiveVector{0.5, 0.5}));
  const emoa::NormalizationFrame wide{ObjectiveVector{0, 0}, ObjectiveVector{4, 4}};
  EXPECT_EQ(emoa::normalize(points({{2, 4}}), wide)[0].objectives, (ObjectiveVector{0.5, 1.0}));
}

TEST(Normalize, OwnFrameSpansUnitBox) {
  const auto set = points({{3, -1, 7}, {5, 2, 7.5}, {4, 0, 9}});
  const auto out = emoa::normalize(set, emoa::estimate_frame(set));
  for (std::size_t j = 0; j < 3; ++j) {
    double lo = 1e9;
    double hi = -1e9;
    for (const auto& s : out) {
      lo = std::min(lo, s.objectives[j]);
      hi = std::max(hi, s.objectives[j]);
    }
    EXPECT_EQ(lo, 0.0);
    EXPECT_EQ(hi, 1.0);
  }
  EXPECT_EQ(emoa::ids_of(out), emoa::ids_of(set));
}

TEST(Normalize, DimensionMismatchThrows) {
  const emoa::NormalizationFrame unit{ObjectiveVector{0, 0}, ObjectiveVector{1, 1}};
  EXPECT_THROW(emoa::normalize(points({{1, 2, 3}}), unit), emoa::DimensionError);
}

}  // namespace
