#include <gtest/gtest.h>

#include "emoa/archive.hpp"
#include "emoa/error.hpp"
#include "emoa/optimizer.hpp"
#include "oracles.hpp"

namespace {

using emoa::ArchiveStrategyConfig;
using emoa::ObjectiveVector;
using emoa::TruncationKind;

emoa::Solution point(std::initializer_list<double> f, emoa::SolutionId id) {
  emoa::Solution s;
  s.objectives = ObjectiveVector(f);
  s.id = id;
  return s;
}

emoa::SequenceLog nsga2_log(std::uint64_t seed, std::size_t n = 20, std::size_t g_max = 50) {
  emoa::OptimizerConfig config;
  config.population_size = n;
  config.generations = g_max;
  config.seed = seed;
  return emoa::run_and_record(emoa::ProblemSpec(emoa::ProblemFamily::DTLZ2, 3), config);
}

emoa::ArchiveState replay(const emoa::SequenceLog& log, const ArchiveStrategyConfig& config) {
  emoa::MaintenanceContext ctx;
  return emoa::replay_archive(log, config, ctx);
}

TEST(StandardUpdate, Examples) {
  emoa::MaintenanceContext ctx;
  auto state = emoa::initial_archive({point({0, 1}, 0)});
  emoa::standard_update(state, {point({1, 0}, 1)}, 5, TruncationKind::DistanceGreedyInclusion, ctx);
  EXPECT_EQ(emoa::ids_of(state.members), (std::vector<emoa::SolutionId>{0, 1}));

  state = emoa::initial_archive({point({0.5, 0.5}, 0)});
  emoa::standard_update(state, {point({0.4, 0.4}, 1)}, 5, TruncationKind::DistanceGreedyInclusion, ctx);
  ASSERT_EQ(state.members.size(), 1U);
  EXPECT_EQ(state.members[0].objectives, (ObjectiveVector{0.4, 0.4}));
  EXPECT_EQ(state.generation, 2U);
  EXPECT_EQ(state.peak_cardinality, 2U);
}

TEST(StandardUpdate, TruncatesWithConfiguredOperator) {
  emoa::MaintenanceContext ctx;
  const emoa::SolutionSet three{point({1, 0}, 0), point({0, 1}, 1), point({0.5, 0.5}, 2)};
  auto state = emoa::initial_archive({three[0]});
  emoa::standard_update(state, {three[1], three[2]}, 2, TruncationKind::DistanceGreedyInclusion, ctx);
  EXPECT_EQ(emoa::ids_of(state.members), (std::vector<emoa::SolutionId>{0, 1}));

  // Both extremes have infinite crowding distance, so the middle point goes.
  state = emoa::initial_archive({three[0]});
  emoa::standard_update(state, {three[1], three[2]}, 2, TruncationKind::CrowdingRemoval, ctx);
  ASSERT_EQ(state.members.size(), 2U);
  EXPECT_EQ(oracle::crowding_reference(three, 2), (std::vector<emoa::SolutionId>{0, 1}));
}

TEST(LazyPeriodical, MaintenanceSchedule) {
  const std::size_t g_max = 400;
  const std::size_t t = 5;
  const std::size_t n = 4;
  const std::size_t s = 6;
  emoa::Rng rng(1);
  emoa::MaintenanceContext ctx;
  auto state = emoa::initial_archive(oracle::simplex_set(rng, n, 2, 0));
  for (std::size_t g = 2; g <= g_max; ++g) {
    emoa::lazy_periodical_update(state, oracle::simplex_set(rng, n, 2, g * n), g, g_max, s, t,
                                 TruncationKind::DistanceGreedyInclusion, ctx);
    const auto& record = state.trace.back();
    EXPECT_EQ(record.generation, g);
    const bool scheduled = (g_max - g) % t == 0;
    if (!scheduled) EXPECT_EQ(record.after_maintenance, record.before_maintenance) << g;
    if (scheduled) EXPECT_LE(record.after_maintenance, s) << g;
  }
  EXPECT_EQ(state.trace[395 - 1].after_maintenance, s);
  EXPECT_EQ(state.trace[400 - 1].after_maintenance, s);
  EXPECT_GT(state.trace[394 - 1].after_maintenance, s);
  EXPECT_EQ(state.peak_cardinality, s + n * t);
}

TEST(LazyPeriodical, RemovesDominatedOnlyWhenNeeded) {
  emoa::MaintenanceContext ctx;
  auto state = emoa::initial_archive({point({0.5, 0.5}, 0)});
  emoa::lazy_periodical_update(state, {point({0.4, 0.4}, 1)}, 2, 3, 5, 1, TruncationKind::DistanceGreedyInclusion,
                               ctx);
  EXPECT_EQ(state.members.size(), 2U);
  emoa::lazy_periodical_update(state, {point({0.3, 0.6}, 2)}, 3, 3, 5, 1, TruncationKind::DistanceGreedyInclusion,
                               ctx);
  EXPECT_EQ(emoa::ids_of(state.members), (std::vector<emoa::SolutionId>{1, 2}));
  EXPECT_THROW(emoa::lazy_periodical_update(state, {}, 1, 3, 5, 1, TruncationKind::DistanceGreedyInclusion, ctx),
               emoa::InputError);
}

TEST(LazyPeriodical, UnitIntervalMatchesStandard) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto log = nsga2_log(seed);
    for (std::size_t s : {5U, 20U, 100U}) {
      for (auto kind : {TruncationKind::DistanceGreedyInclusion, TruncationKind::CrowdingRemoval}) {
        auto standard = ArchiveStrategyConfig::standard(s);
        auto lazy = ArchiveStrategyConfig::lazy(s);
        standard.truncation = lazy.truncation = kind;
        EXPECT_TRUE(emoa::same_objective_multiset(replay(log, standard).members, replay(log, lazy).members))
            << "seed " << seed << " s " << s;
      }
    }
  }
}

TEST(LastX, DefaultWindow) {
  EXPECT_EQ(ArchiveStrategyConfig::last_x(500).resolved_window(100, 400), 5U);
  EXPECT_EQ(ArchiveStrategyConfig::last_x(99).resolved_window(100, 400), 0U);
  EXPECT_EQ(ArchiveStrategyConfig::last_x(500000).resolved_window(100, 400), 400U);
  EXPECT_EQ(ArchiveStrategyConfig::last_x(500, 7).resolved_window(100, 400), 7U);
}

TEST(LastX, SingleGenerationWindowIsFinalFront) {
  const auto log = nsga2_log(4);
  const auto state = replay(log, ArchiveStrategyConfig::last_x(1000, 1));
  EXPECT_TRUE(emoa::same_objective_multiset(state.members, oracle::nondominated(log.final_population)));
  EXPECT_EQ(state.peak_cardinality, 20U);
}

TEST(LastX, FullWindowEqualsUnbounded) {
  const auto log = nsga2_log(5);
  auto full = ArchiveStrategyConfig::last_x(emoa::kUnboundedCapacity, 50);
  const auto a = replay(log, full);
  const auto b = replay(log, ArchiveStrategyConfig::unbounded());
  EXPECT_TRUE(emoa::same_objective_multiset(a.members, b.members));
}

TEST(LastX, OverfullWindowStaysWithinBound) {
  const auto log = oracle::saturated_log(2, 10, 30, 3);
  auto config = ArchiveStrategyConfig::last_x(25, 10);
  config.interval = 2;
  const auto state = replay(log, config);
  EXPECT_EQ(state.members.size(), 25U);
  EXPECT_LE(state.peak_cardinality, 25U + 10U * 2U);
}

TEST(Unbounded, FinalArchiveIsFrontOfEverything) {
  const auto log = nsga2_log(6);
  emoa::SolutionSet all;
  for (const auto& entry : log.entries) all.insert(all.end(), entry.begin(), entry.end());
  const auto state = replay(log, ArchiveStrategyConfig::unbounded());
  EXPECT_TRUE(emoa::same_objective_multiset(state.members, oracle::nondominated(all)));
  EXPECT_EQ(state.peak_cardinality, 1000U);
}

TEST(SaturatedPeaks, MatchMemoryFormulas) {
  const std::size_t n = 10;
  const auto log = oracle::saturated_log(3, n, 40, 9);
  const std::size_t s = 50;
  EXPECT_EQ(replay(log, ArchiveStrategyConfig::standard(s)).peak_cardinality, s + n);
  for (std::size_t t : {1U, 3U, 5U}) {
    EXPECT_EQ(replay(log, ArchiveStrategyConfig::lazy_periodical(s, t)).peak_cardinality, s + n * t) << t;
  }
  const auto last = replay(log, ArchiveStrategyConfig::last_x(s));
  EXPECT_EQ(last.peak_cardinality, 5 * n);
  EXPECT_EQ(last.members.size(), 5 * n);
}

TEST(Config, Validate) {
  EXPECT_THROW(ArchiveStrategyConfig::standard(0).validate(), emoa::InputError);
  EXPECT_THROW(ArchiveStrategyConfig::lazy_periodical(10, 0).validate(), emoa::InputError);
  EXPECT_THROW(ArchiveStrategyConfig::last_x(10, 0).validate(), emoa::InputError);
  EXPECT_NO_THROW(ArchiveStrategyConfig::unbounded().validate());
  EXPECT_EQ(emoa::parse_strategy("lazy"), emoa::StrategyKind::LazyPeriodical);
  EXPECT_EQ(emoa::parse_strategy(emoa::strategy_name(emoa::StrategyKind::LastX)), emoa::StrategyKind::LastX);
  EXPECT_THROW(emoa::parse_strategy("greedy"), emoa::LookupError);
}

TEST(Replay, ClocksAccumulate) {
  const auto log = nsga2_log(7);
  emoa::OperationClock removal;
  emoa::OperationClock truncation;
  emoa::MaintenanceContext ctx{&removal, &truncation, nullptr};
  (void)emoa::replay_archive(log, ArchiveStrategyConfig::standard(20), ctx);
  EXPECT_GT(removal.elapsed.count(), 0);
  EXPECT_GT(truncation.elapsed.count(), 0);
}

}  // namespace
