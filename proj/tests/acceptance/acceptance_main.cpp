// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "emoa/archive.hpp"
#include "emoa/bench.hpp"
#include "emoa/dominance.hpp"
#include "emoa/hypervolume.hpp"
#include "emoa/optimizer.hpp"
#include "emoa/selection.hpp"
#include "emoa/truncation.hpp"
#include "oracles.hpp"

namespace {

using emoa::ArchiveStrategyConfig;
using Seconds = std::chrono::duration<double>;

// Pinned tolerances and limits.
constexpr double kMultisetTolerance = 1e-12;
constexpr double kQualityStepTolerance = 0.005;
constexpr double kHumpFactor = 2.0;
constexpr double kIntervalSpeedup = 0.5;
constexpr double kMonteCarloRelative = 0.01;
constexpr std::size_t kMonteCarloSamples = 1'000'000;
constexpr double kHypervolumeTwoBox = 0.84;
constexpr double kExactAbsolute = 1e-12;
constexpr int kTimingRepeats = 3;
constexpr std::size_t kPaperSeeds = 5;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int number;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> check;
};

std::string num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

emoa::SequenceLog nsga2_log(emoa::ProblemFamily family, std::size_t n, std::size_t g_max, std::uint64_t seed) {
  emoa::OptimizerConfig config;
  config.population_size = n;
  config.generations = g_max;
  config.seed = seed;
  return emoa::run_and_record(emoa::ProblemSpec(family, 3), config);
}

emoa::SolutionSet replay_members(const emoa::SequenceLog& log, const ArchiveStrategyConfig& config) {
  emoa::MaintenanceContext ctx;
  return emoa::replay_archive(log, config, ctx).members;
}

emoa::SelectionConfig paper_selection() { return emoa::SelectionConfig::defaults(3, 0); }

const std::vector<emoa::SequenceLog>& paper_logs() {
  static const std::vector<emoa::SequenceLog> logs = [] {
    std::vector<emoa::SequenceLog> out;
    for (std::uint64_t seed = 1; seed <= kPaperSeeds; ++seed) {
      out.push_back(nsga2_log(emoa::ProblemFamily::MinusDTLZ1, 91, 400, seed));
    }
    return out;
  }();
  return logs;
}

Outcome strategy_equivalence() {
  std::size_t equal = 0;
  std::size_t total = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto log = nsga2_log(emoa::ProblemFamily::DTLZ2, 20, 50, seed);
    for (std::size_t factor : {1U, 5U, 20U}) {
      const std::size_t s = factor * 20;
      ++total;
      if (emoa::same_objective_multiset(replay_members(log, ArchiveStrategyConfig::standard(s)),
                                        replay_members(log, ArchiveStrategyConfig::lazy(s)), kMultisetTolerance)) {
        ++equal;
      }
    }
  }
  return {equal == total, std::to_string(equal) + "/" + std::to_string(total) + " Standard vs LazyPeriodical(T=1) archive pairs equal"};
}

Outcome unbounded_agreement() {
  std::size_t agree = 0;
  std::size_t total = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto log = nsga2_log(emoa::ProblemFamily::DTLZ2, 20, 50, seed);
    const std::size_t s = 20 * 50;
    const auto reference = replay_members(log, ArchiveStrategyConfig::standard(s));
    std::vector<ArchiveStrategyConfig> others;
    for (std::size_t t : {1U, 5U, 10U}) others.push_back(ArchiveStrategyConfig::lazy_periodical(s, t));
    others.push_back(ArchiveStrategyConfig::last_x(s, 50));
    for (const auto& config : others) {
      ++total;
      auto a = emoa::ids_of(reference);
      auto b = emoa::ids_of(replay_members(log, config));
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a == b && emoa::same_objective_multiset(reference, replay_members(log, config), 0.0)) ++agree;
    }
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " archives identical to Standard at s=N*g_max"};
}

Outcome quality_trend() {
  const auto& logs = paper_logs();
  const std::size_t factors[] = {1, 10, 100, 2000};
  std::vector<double> mean_selected;
  double mean_population = 0.0;
  for (std::size_t f : factors) {
    double sum = 0.0;
    for (const auto& log : logs) {
      const auto r = emoa::replay(log, ArchiveStrategyConfig::standard(f * 91), paper_selection());
      if (!r.hv_selected) return {false, "cell s=" + std::to_string(f) + "N produced no hypervolume"};
      sum += *r.hv_selected;
      if (f == 2000) mean_population += *r.hv_final_population;
    }
    mean_selected.push_back(sum / static_cast<double>(logs.size()));
  }
  mean_population /= static_cast<double>(logs.size());
  bool pass = mean_selected.back() > mean_population;
  std::string detail = "mean hv_selected";
  for (std::size_t i = 0; i < mean_selected.size(); ++i) {
    detail += " " + std::to_string(factors[i]) + "N=" + num(mean_selected[i], 6);
    if (i > 0 && mean_selected[i] < mean_selected[i - 1] * (1.0 - kQualityStepTolerance)) pass = false;
  }
  detail += ", mean hv_final_population=" + num(mean_population, 6);
  return {pass, detail};
}

// Best-of-repeats total time per cell; repeats are interleaved across cells.
std::vector<std::vector<double>> cell_times(const std::vector<ArchiveStrategyConfig>& cells) {
  const auto& logs = paper_logs();
  std::vector<std::vector<double>> best(cells.size(), std::vector<double>(logs.size(), 1e300));
  for (int rep = 0; rep < kTimingRepeats; ++rep) {
    for (std::size_t l = 0; l < logs.size(); ++l) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        emoa::ReplayOptions options;
        options.keep_sets = false;
        const auto r = emoa::replay(logs[l], cells[c], paper_selection(), options);
        best[c][l] = std::min(best[c][l], r.timing.total_seconds);
      }
    }
  }
  return best;
}

Outcome time_hump() {
  const std::size_t n = 91;
  const std::size_t g_max = 400;
  const std::vector<std::size_t> factors = {1, 50, 500, 1000, 2000};
  std::vector<ArchiveStrategyConfig> cells;
  for (std::size_t f : factors) cells.push_back(ArchiveStrategyConfig::standard(f * n));
  const auto times = cell_times(cells);
  std::vector<double> med;
  for (const auto& t : times) med.push_back(median(t));
  const double peak = med[1];
  bool pass = peak >= kHumpFactor * med[0];
  std::string detail = "median total_s";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    detail += " " + std::to_string(factors[i]) + "N=" + num(med[i]);
    if (factors[i] * n >= g_max * n && peak < kHumpFactor * med[i]) pass = false;
  }
  return {pass, detail};
}

Outcome strategy_speedups() {
  const std::size_t s = 10 * 91;
  const std::vector<ArchiveStrategyConfig> cells = {
      ArchiveStrategyConfig::last_x(s), ArchiveStrategyConfig::lazy_periodical(s, 10),
      ArchiveStrategyConfig::lazy_periodical(s, 1), ArchiveStrategyConfig::standard(s)};
  const auto times = cell_times(cells);
  const double last_x = median(times[0]);
  const double lazy10 = median(times[1]);
  const double lazy1 = median(times[2]);
  const double standard = median(times[3]);
  const bool pass = last_x < lazy10 && lazy10 < lazy1 && lazy1 <= standard && lazy10 <= kIntervalSpeedup * lazy1;
  return {pass, "median total_s at s=10N: LastX=" + num(last_x) + " LazyPeriodical(T=10)=" + num(lazy10) +
                    " LazyPeriodical(T=1)=" + num(lazy1) + " Standard=" + num(standard) +
                    " ratio T10/T1=" + num(lazy10 / lazy1, 3)};
}

std::size_t peak(const emoa::SequenceLog& log, const ArchiveStrategyConfig& config) {
  emoa::MaintenanceContext ctx;
  return emoa::replay_archive(log, config, ctx).peak_cardinality;
}

Outcome memory_formulas() {
  bool pass = true;
  std::string detail;
  {
    const std::size_t n = 20;
    const std::size_t s = 200;
    const auto log = oracle::saturated_log(3, n, 60, 7);
    if (peak(log, ArchiveStrategyConfig::standard(s)) != s + n) pass = false;
    for (std::size_t t : {1U, 2U, 5U, 10U}) {
      if (peak(log, ArchiveStrategyConfig::lazy_periodical(s, t)) != s + n * t) pass = false;
    }
    const std::size_t x = ArchiveStrategyConfig::last_x(s).resolved_window(n, 60);
    if (peak(log, ArchiveStrategyConfig::last_x(s)) != x * n) pass = false;
    detail = std::string("N=20 s=200 formulas ") + (pass ? "hold" : "violated");
  }
  const std::size_t n = 100;
  const std::size_t s = 5000;
  const auto log = oracle::saturated_log(3, n, 80, 11);
  const std::size_t standard = peak(log, ArchiveStrategyConfig::standard(s));
  const std::size_t lazy = peak(log, ArchiveStrategyConfig::lazy_periodical(s, 5));
  const std::size_t last = peak(log, ArchiveStrategyConfig::last_x(s));
  if (standard != s + n || lazy != s + 5 * n || last != 50 * n) pass = false;
  for (std::size_t p : {standard, lazy, last}) {
    if (p < 5000 || p > 5500) pass = false;
  }
  detail += "; N=100 s=5000 T=5 peaks Standard=" + std::to_string(standard) + " LazyPeriodical=" +
            std::to_string(lazy) + " LastX=" + std::to_string(last);
  return {pass, detail};
}

Outcome hypervolume_correctness() {
  emoa::Rng rng(2024);
  double worst_mc = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const auto set = oracle::random_set(rng, 50, 3);
    const auto ref = emoa::ReferencePoint::uniform(3);
    const double exact = emoa::hypervolume(set, ref);
    const double mc =
        emoa::hypervolume(set, ref, emoa::MonteCarloHypervolume{kMonteCarloSamples, static_cast<std::uint64_t>(rep + 1)});
    worst_mc = std::max(worst_mc, std::abs(mc - exact) / exact);
  }

  emoa::SolutionSet two(2);
  two[0].objectives = emoa::ObjectiveVector{0.2, 0.6};
  two[1].objectives = emoa::ObjectiveVector{0.6, 0.2};
  two[1].id = 1;
  const double two_box = emoa::hypervolume(two, emoa::ReferencePoint::uniform(2));

  std::size_t eager_equal = 0;
  std::size_t bound_held = 0;
  double worst_ratio = 1.0;
  const double bound = 1.0 - 1.0 / std::exp(1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t m = 2 + rng.below(3);
    const std::size_t n = 1 + rng.below(12);
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(n, 4));
    const auto set = oracle::random_set(rng, n, m);
    const std::vector<double> ref(m, 1.2);
    const auto config = emoa::SelectionConfig::defaults(m, k);
    const auto lazy = emoa::select_hss_lazy(set, config);
    if (emoa::ids_of(lazy) == oracle::eager_greedy_hss(set, k, ref)) ++eager_equal;
    const double best = oracle::best_subset_hypervolume(set, k, ref);
    const double got = oracle::hypervolume(lazy, ref);
    const double ratio = best > 0.0 ? got / best : 1.0;
    worst_ratio = std::min(worst_ratio, ratio);
    if (got >= bound * best) ++bound_held;
  }
  const bool pass = worst_mc <= kMonteCarloRelative && std::abs(two_box - kHypervolumeTwoBox) <= kExactAbsolute &&
                    eager_equal == 200 && bound_held == 200;
  return {pass, "worst MC relative error " + num(worst_mc, 3) + ", two-box " + num(two_box, 12) + ", lazy=eager " +
                    std::to_string(eager_equal) + "/200, worst greedy/optimal " + num(worst_ratio, 4)};
}

Outcome filter_oracle() {
  emoa::Rng rng(77);
  std::size_t equal = 0;
  std::size_t largest = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t m = std::vector<std::size_t>{3, 5, 8}[rep % 3];
    const std::size_t n = 1 + rng.below(2000);
    largest = std::max(largest, n);
    auto set = oracle::random_set(rng, n, m);
    if (rep % 4 == 0) {
      // Quantized values produce ties and duplicates.
      for (auto& s : set) {
        std::vector<double> f(s.objectives.values().begin(), s.objectives.values().end());
        for (double& v : f) v = std::floor(v * 5.0);
        s.objectives = emoa::ObjectiveVector(f);
      }
    }
    if (emoa::nondominated_indices(set, emoa::FilterAlgorithm::EfficientSort) ==
        emoa::nondominated_indices(set, emoa::FilterAlgorithm::Naive)) {
      ++equal;
    }
  }
  return {equal == 100, std::to_string(equal) + "/100 sets equal, largest n=" + std::to_string(largest)};
}

Outcome truncation_oracle() {
  emoa::Rng rng(99);
  std::size_t equal = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t m = 2 + rng.below(4);
    const std::size_t n = 2 + rng.below(59);
    const std::size_t s = 1 + rng.below(std::min<std::size_t>(n - 1, 20));
    const auto set = oracle::random_set(rng, n, m, -2.0, 3.0);
    if (emoa::ids_of(emoa::truncate_dss(set, s)) == oracle::dss_reference(set, s)) ++equal;
  }
  return {equal == 100, std::to_string(equal) + "/100 id sequences equal"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "strategy equivalence", 60, strategy_equivalence},
      {2, "unbounded agreement", 60, unbounded_agreement},
      {3, "quality trend", 600, quality_trend},
      {4, "time hump", 900, time_hump},
      {5, "strategy speedups", 900, strategy_speedups},
      {6, "memory formulas", 300, memory_formulas},
      {7, "hypervolume correctness", 300, hypervolume_correctness},
      {8, "filter oracle", 120, filter_oracle},
      {9, "truncation oracle", 60, truncation_oracle},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = emoa::Clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = Seconds(emoa::Clock::now() - start).count();
    const bool pass = outcome.pass && elapsed < c.limit_seconds;
    if (!pass) ++failures;
    std::printf("criterion %d %s %s: %s (%.1f s, limit %.0f s)\n", c.number, pass ? "PASS" : "FAIL", c.name,
                outcome.detail.c_str(), elapsed, c.limit_seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
