#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace oracle {

namespace {

using Matrix = std::vector<std::vector<double>>;

Matrix rows_of(const SolutionSet& set) {
  Matrix out;
  for (const Solution& s : set) out.emplace_back(s.objectives.values().begin(), s.objectives.values().end());
  return out;
}

// Normalization by the set's own extremes with the unit-span repair.
Matrix normalized_rows(const SolutionSet& set) {
  Matrix f = rows_of(set);
  const std::size_t m = f.front().size();
  std::vector<double> lo(m, std::numeric_limits<double>::infinity());
  std::vector<double> hi(m, -std::numeric_limits<double>::infinity());
  for (const auto& row : f) {
    for (std::size_t j = 0; j < m; ++j) {
      lo[j] = std::min(lo[j], row[j]);
      hi[j] = std::max(hi[j], row[j]);
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (hi[j] == lo[j]) hi[j] = lo[j] + 1.0;
  }
  for (auto& row : f) {
    for (std::size_t j = 0; j < m; ++j) row[j] = (row[j] - lo[j]) / (hi[j] - lo[j]);
  }
  return f;
}

std::vector<double> crowding_distances(const SolutionSet& set, const std::vector<std::size_t>& alive) {
  const std::size_t m = set.front().objectives.size();
  std::vector<double> d(set.size(), 0.0);
  for (std::size_t obj = 0; obj < m; ++obj) {
    std::vector<std::size_t> order = alive;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return set[a].objectives[obj] < set[b].objectives[obj];
    });
    const double range = set[order.back()].objectives[obj] - set[order.front()].objectives[obj];
    d[order.front()] = std::numeric_limits<double>::infinity();
    d[order.back()] = std::numeric_limits<double>::infinity();
    if (!(range > 0.0)) continue;
    for (std::size_t r = 1; r + 1 < order.size(); ++r) {
      d[order[r]] += (set[order[r + 1]].objectives[obj] - set[order[r - 1]].objectives[obj]) / range;
    }
  }
  return d;
}

}  // namespace

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  bool better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) better = true;
  }
  return better;
}

SolutionSet nondominated(const SolutionSet& set) {
  SolutionSet out;
  for (const Solution& p : set) {
    bool dominated = false;
    for (const Solution& q : set) dominated = dominated || dominates(q.objectives, p.objectives);
    if (!dominated) out.push_back(p);
  }
  return out;
}

double hypervolume(const SolutionSet& set, const std::vector<double>& ref) {
  Matrix pts;
  for (const Solution& s : set) {
    bool inside = true;
    for (std::size_t j = 0; j < ref.size(); ++j) inside = inside && s.objectives[j] < ref[j];
    if (inside) pts.emplace_back(s.objectives.values().begin(), s.objectives.values().end());
  }
  const std::size_t n = pts.size();
  const std::size_t m = ref.size();
  double total = 0.0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<double> corner(m, -std::numeric_limits<double>::infinity());
    int bits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((mask >> i) & 1U)) continue;
      ++bits;
      for (std::size_t j = 0; j < m; ++j) corner[j] = std::max(corner[j], pts[i][j]);
    }
    double volume = 1.0;
    for (std::size_t j = 0; j < m; ++j) volume *= ref[j] - corner[j];
    total += bits % 2 == 1 ? volume : -volume;
  }
  return total;
}

std::vector<emoa::SolutionId> eager_greedy_hss(const SolutionSet& set, std::size_t k, const std::vector<double>& ref,
                                               double tie) {
  SolutionSet chosen;
  std::vector<bool> used(set.size(), false);
  std::vector<emoa::SolutionId> ids;
  double current = 0.0;
  while (ids.size() < std::min(k, set.size())) {
    std::size_t best = set.size();
    double best_gain = -1.0;
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (used[i]) continue;
      SolutionSet trial = chosen;
      trial.push_back(set[i]);
      const double gain = hypervolume(trial, ref) - current;
      if (best == set.size() || gain > best_gain + tie ||
          (std::abs(gain - best_gain) <= tie && set[i].id < set[best].id)) {
        best = i;
        best_gain = gain;
      }
    }
    used[best] = true;
    chosen.push_back(set[best]);
    current = hypervolume(chosen, ref);
    ids.push_back(set[best].id);
  }
  return ids;
}

double best_subset_hypervolume(const SolutionSet& set, std::size_t k, const std::vector<double>& ref) {
  std::vector<bool> pick(set.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(std::min(k, set.size())), true);
  double best = 0.0;
  do {
    SolutionSet subset;
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (pick[i]) subset.push_back(set[i]);
    }
    best = std::max(best, hypervolume(subset, ref));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

std::vector<emoa::SolutionId> dss_reference(const SolutionSet& set, std::size_t s) {
  const Matrix x = normalized_rows(set);
  const std::size_t m = x.front().size();
  std::vector<std::size_t> chosen;
  std::size_t seed = 0;
  for (std::size_t i = 1; i < set.size(); ++i) {
    const double a = set[i].objectives[0];
    const double b = set[seed].objectives[0];
    if (a > b || (a == b && set[i].id < set[seed].id)) seed = i;
  }
  chosen.push_back(seed);
  while (chosen.size() < s) {
    std::size_t best = set.size();
    double best_d = -1.0;
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t c : chosen) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < m; ++j) d2 += (x[i][j] - x[c][j]) * (x[i][j] - x[c][j]);
        nearest = std::min(nearest, d2);
      }
      if (nearest > best_d || (nearest == best_d && set[i].id < set[best].id)) {
        best = i;
        best_d = nearest;
      }
    }
    chosen.push_back(best);
  }
  std::vector<emoa::SolutionId> ids;
  for (std::size_t i : chosen) ids.push_back(set[i].id);
  return ids;
}

std::vector<emoa::SolutionId> crowding_reference(const SolutionSet& set, std::size_t s) {
  std::vector<std::size_t> alive(set.size());
  std::iota(alive.begin(), alive.end(), std::size_t{0});
  while (alive.size() > s) {
    const std::vector<double> d = crowding_distances(set, alive);
    std::size_t victim = alive.front();
    for (std::size_t i : alive) {
      if (d[i] < d[victim] || (d[i] == d[victim] && set[i].id > set[victim].id)) victim = i;
    }
    alive.erase(std::find(alive.begin(), alive.end(), victim));
  }
  std::vector<emoa::SolutionId> ids;
  for (std::size_t i : alive) ids.push_back(set[i].id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

SolutionSet random_set(emoa::Rng& rng, std::size_t n, std::size_t m, double lo, double hi) {
  SolutionSet out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> f(m);
    for (double& v : f) v = lo + (hi - lo) * rng.uniform();
    Solution s;
    s.objectives = ObjectiveVector(std::move(f));
    s.id = i;
    out.push_back(std::move(s));
  }
  return out;
}

SolutionSet simplex_set(emoa::Rng& rng, std::size_t n, std::size_t m, emoa::SolutionId first_id) {
  SolutionSet out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> f(m);
    double sum = 0.0;
    for (double& v : f) {
      v = -std::log(1.0 - rng.uniform());
      sum += v;
    }
    for (double& v : f) v /= sum;
    Solution s;
    s.objectives = ObjectiveVector(std::move(f));
    s.id = first_id + i;
    out.push_back(std::move(s));
  }
  return out;
}

emoa::SequenceLog saturated_log(std::size_t m, std::size_t n_pop, std::size_t g_max, std::uint64_t seed) {
  emoa::Rng rng(seed);
  emoa::SequenceLog log;
  log.header.problem = emoa::ProblemSpec(emoa::ProblemFamily::DTLZ2, m);
  log.header.population_size = n_pop;
  log.header.generations = g_max;
  log.header.seed = seed;
  log.header.algorithm = "synthetic";
  log.header.rng = std::string(emoa::Rng::kAlgorithm);
  for (std::size_t g = 0; g < g_max; ++g) {
    SolutionSet entry = simplex_set(rng, n_pop, m, g * n_pop);
    for (Solution& s : entry) s.birth_generation = static_cast<std::uint32_t>(g);
    log.population_ids.push_back(emoa::ids_of(entry));
    log.entries.push_back(std::move(entry));
  }
  log.final_population = log.entries.back();
  return log;
}

}  // namespace oracle
