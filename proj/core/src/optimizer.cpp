#include "emoa/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <new>
#include <numeric>

#include "emoa/dominance.hpp"
#include "emoa/error.hpp"

namespace emoa {

void OptimizerConfig::validate() const {
  if (population_size < 4) {
    throw InputError("population size must be at least 4, got " + std::to_string(population_size));
  }
  if (generations < 1) throw InputError("g_max must be at least 1");
  if (!(variation.crossover_probability >= 0.0 && variation.crossover_probability <= 1.0)) {
    throw InputError("crossover probability must lie in [0,1]");
  }
  if (variation.mutation_probability > 1.0) throw InputError("mutation probability must not exceed 1");
  if (!(variation.crossover_distribution_index >= 0.0) || !(variation.mutation_distribution_index >= 0.0)) {
    throw InputError("distribution indices must be non-negative");
  }
}

AlgorithmRegistry AlgorithmRegistry::with_builtins() {
  AlgorithmRegistry registry;
  registry.register_algorithm("nsga2", nsga2_generation);
  return registry;
}

void AlgorithmRegistry::register_algorithm(const std::string& name, GenerationFn fn) {
  if (name.empty()) throw RegistrationError("algorithm name must not be empty");
  if (!fn) throw RegistrationError("algorithm '" + name + "' has no generation function");
  if (!algorithms_.emplace(name, std::move(fn)).second) {
    throw RegistrationError("algorithm '" + name + "' is already registered");
  }
}

bool AlgorithmRegistry::contains(const std::string& name) const { return algorithms_.count(name) != 0; }

const GenerationFn& AlgorithmRegistry::find(const std::string& name) const {
  auto it = algorithms_.find(name);
  if (it == algorithms_.end()) throw LookupError("no algorithm registered as '" + name + "'");
  return it->second;
}

std::vector<std::string> AlgorithmRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, fn] : algorithms_) out.push_back(name);
  return out;
}

std::vector<std::size_t> nondominated_ranks(const SolutionSet& set) {
  common_dimension(set);
  const std::size_t n = set.size();
  std::vector<std::vector<std::size_t>> dominated_by(n);
  std::vector<std::size_t> domination_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto a = set[i].objectives.values();
      auto b = set[j].objectives.values();
      if (dominates(a, b)) {
        dominated_by[i].push_back(j);
        ++domination_count[j];
      } else if (dominates(b, a)) {
        dominated_by[j].push_back(i);
        ++domination_count[i];
      }
    }
  }
  std::vector<std::size_t> rank(n, 0);
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (domination_count[i] == 0) current.push_back(i);
  }
  std::size_t level = 0;
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      rank[i] = level;
      for (std::size_t j : dominated_by[i]) {
        if (--domination_count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    current = std::move(next);
    ++level;
  }
  return rank;
}

std::vector<double> crowding_distances(const SolutionSet& set, const std::vector<std::size_t>& front) {
  const std::size_t k = front.size();
  std::vector<double> distance(k, 0.0);
  if (k == 0) return distance;
  const std::size_t m = set[front[0]].objectives.size();
  std::vector<std::size_t> order(k);
  for (std::size_t obj = 0; obj < m; ++obj) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return set[front[a]].objectives[obj] < set[front[b]].objectives[obj];
    });
    const double lo = set[front[order.front()]].objectives[obj];
    const double hi = set[front[order.back()]].objectives[obj];
    distance[order.front()] = std::numeric_limits<double>::infinity();
    distance[order.back()] = std::numeric_limits<double>::infinity();
    if (!(hi > lo)) continue;
    for (std::size_t r = 1; r + 1 < k; ++r) {
      const double gap = set[front[order[r + 1]]].objectives[obj] - set[front[order[r - 1]]].objectives[obj];
      distance[order[r]] += gap / (hi - lo);
    }
  }
  return distance;
}

namespace {

struct RankedPopulation {
  std::vector<std::size_t> rank;
  std::vector<double> crowding;
};

std::vector<std::vector<std::size_t>> fronts_from_ranks(const std::vector<std::size_t>& rank) {
  std::vector<std::vector<std::size_t>> fronts;
  for (std::size_t i = 0; i < rank.size(); ++i) {
    if (rank[i] >= fronts.size()) fronts.resize(rank[i] + 1);
    fronts[rank[i]].push_back(i);
  }
  return fronts;
}

RankedPopulation rank_population(const SolutionSet& set) {
  RankedPopulation out{nondominated_ranks(set), std::vector<double>(set.size(), 0.0)};
  for (const auto& front : fronts_from_ranks(out.rank)) {
    const auto d = crowding_distances(set, front);
    for (std::size_t i = 0; i < front.size(); ++i) out.crowding[front[i]] = d[i];
  }
  return out;
}

std::size_t tournament(const RankedPopulation& ranked, Rng& rng) {
  const std::size_t n = ranked.rank.size();
  const auto a = static_cast<std::size_t>(rng.below(n));
  const auto b = static_cast<std::size_t>(rng.below(n));
  if (ranked.rank[a] != ranked.rank[b]) return ranked.rank[a] < ranked.rank[b] ? a : b;
  if (ranked.crowding[a] != ranked.crowding[b]) return ranked.crowding[a] > ranked.crowding[b] ? a : b;
  return a;
}

void simulated_binary_crossover(std::vector<double>& c1, std::vector<double>& c2, const VariationParams& p,
                                Rng& rng) {
  const bool apply = rng.uniform() < p.crossover_probability;
  const double exponent = 1.0 / (p.crossover_distribution_index + 1.0);
  for (std::size_t i = 0; i < c1.size(); ++i) {
    const double mu = rng.uniform();
    const bool flip = rng.uniform() < 0.5;
    const bool keep = rng.uniform() < 0.5;
    if (!apply || keep) continue;
    double beta = mu <= 0.5 ? std::pow(2.0 * mu, exponent) : std::pow(2.0 - 2.0 * mu, -exponent);
    if (flip) beta = -beta;
    const double mean = 0.5 * (c1[i] + c2[i]);
    const double half_diff = 0.5 * (c1[i] - c2[i]);
    c1[i] = mean + beta * half_diff;
    c2[i] = mean - beta * half_diff;
  }
}

void polynomial_mutation(std::vector<double>& x, double probability, double eta, Rng& rng) {
  const double power = 1.0 / (eta + 1.0);
  for (double& v : x) {
    const bool site = rng.uniform() < probability;
    const double mu = rng.uniform();
    v = std::clamp(v, 0.0, 1.0);
    if (!site) continue;
    if (mu <= 0.5) {
      const double t = 2.0 * mu + (1.0 - 2.0 * mu) * std::pow(1.0 - v, eta + 1.0);
      v += std::pow(t, power) - 1.0;
    } else {
      const double t = 2.0 * (1.0 - mu) + 2.0 * (mu - 0.5) * std::pow(v, eta + 1.0);
      v += 1.0 - std::pow(t, power);
    }
    v = std::clamp(v, 0.0, 1.0);
  }
}

}  // namespace

std::vector<std::size_t> nsga2_survivors(const SolutionSet& pool, std::size_t count) {
  if (count > pool.size()) throw InputError("cannot select more survivors than candidates");
  std::vector<std::size_t> chosen;
  chosen.reserve(count);
  for (const auto& front : fronts_from_ranks(nondominated_ranks(pool))) {
    if (chosen.size() == count) break;
    if (chosen.size() + front.size() <= count) {
      chosen.insert(chosen.end(), front.begin(), front.end());
      continue;
    }
    const auto d = crowding_distances(pool, front);
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });
    for (std::size_t r = 0; chosen.size() < count; ++r) chosen.push_back(front[order[r]]);
  }
  return chosen;
}

GenerationResult nsga2_generation(const SolutionSet& population, GenerationContext& ctx) {
  const std::size_t n_pop = ctx.config.population_size;
  if (population.size() != n_pop) {
    throw InputError("population has " + std::to_string(population.size()) + " members, expected " +
                     std::to_string(n_pop));
  }
  const std::size_t n = ctx.problem.decision_dimension();
  for (const Solution& s : population) {
    if (s.decision.size() != n) throw InputError("population members need decision vectors for variation");
  }
  const VariationParams& vp = ctx.config.variation;
  const double p_mut = vp.mutation_probability > 0.0 ? vp.mutation_probability : 1.0 / static_cast<double>(n);

  const RankedPopulation ranked = rank_population(population);
  GenerationResult result;
  result.offspring.reserve(n_pop);
  while (result.offspring.size() < n_pop) {
    std::vector<double> c1 = population[tournament(ranked, ctx.rng)].decision;
    std::vector<double> c2 = population[tournament(ranked, ctx.rng)].decision;
    simulated_binary_crossover(c1, c2, vp, ctx.rng);
    for (std::vector<double>* child : {&c1, &c2}) {
      // An odd N drops the second child of the last pair.
      if (result.offspring.size() == n_pop) break;
      polynomial_mutation(*child, p_mut, vp.mutation_distribution_index, ctx.rng);
      Solution s;
      s.objectives = evaluate(ctx.problem, *child);
      s.decision = std::move(*child);
      s.birth_generation = ctx.generation;
      s.id = ctx.next_id++;
      result.offspring.push_back(std::move(s));
    }
  }

  SolutionSet pool = population;
  pool.insert(pool.end(), result.offspring.begin(), result.offspring.end());
  std::vector<std::size_t> survivors = nsga2_survivors(pool, n_pop);
  std::sort(survivors.begin(), survivors.end());
  result.next_population.reserve(n_pop);
  for (std::size_t i : survivors) result.next_population.push_back(pool[i]);
  return result;
}

namespace {

SolutionSet for_log(const SolutionSet& set, bool keep_decisions) {
  SolutionSet out = set;
  if (!keep_decisions) {
    for (Solution& s : out) s.decision.clear();
  }
  return out;
}

}  // namespace

SequenceLog run_and_record(const ProblemSpec& problem, const OptimizerConfig& config,
                           const AlgorithmRegistry& registry, SequenceSink* sink) {
  config.validate();
  const GenerationFn& step = registry.find(config.algorithm);
  const std::size_t n_pop = config.population_size;
  try {
    Rng rng(config.seed);
    SolutionId next_id = 0;

    SequenceLog log;
    log.header.problem = problem;
    log.header.population_size = n_pop;
    log.header.generations = config.generations;
    log.header.seed = config.seed;
    log.header.algorithm = config.algorithm;
    log.header.rng = std::string(Rng::kAlgorithm);
    log.header.has_decisions = config.store_decisions;

    SolutionSet population;
    population.reserve(n_pop);
    for (std::size_t i = 0; i < n_pop; ++i) {
      Solution s = random_solution(problem, rng);
      s.birth_generation = 0;
      s.id = next_id++;
      population.push_back(std::move(s));
    }
    if (sink) sink->begin(log.header);
    log.entries.push_back(for_log(population, config.store_decisions));
    log.population_ids.push_back(ids_of(population));
    if (sink) sink->entry(0, log.entries.back(), log.population_ids.back());

    for (std::size_t g = 1; g < config.generations; ++g) {
      const SolutionId first_new = next_id;
      GenerationContext ctx{problem, config, rng, next_id, static_cast<std::uint32_t>(g)};
      GenerationResult result = step(population, ctx);
      if (result.offspring.size() != n_pop || result.next_population.size() != n_pop) {
        throw Error("algorithm '" + config.algorithm + "' broke the population size contract");
      }
      for (const Solution& s : result.offspring) {
        if (s.id < first_new) throw Error("offspring reused an existing solution id");
      }
      log.entries.push_back(for_log(result.offspring, config.store_decisions));
      log.population_ids.push_back(ids_of(result.next_population));
      if (sink) sink->entry(g, log.entries.back(), log.population_ids.back());
      population = std::move(result.next_population);
    }
    log.final_population = for_log(population, config.store_decisions);
    if (sink) sink->finish(log.final_population);
    return log;
  } catch (const std::bad_alloc&) {
    throw Error("run failed: out of memory");
  }
}

}  // namespace emoa
