#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "emoa/problems.hpp"
#include "emoa/rng.hpp"
#include "emoa/sequence_log.hpp"
#include "emoa/types.hpp"

namespace emoa {

struct VariationParams {
  double crossover_probability = 1.0;
  double crossover_distribution_index = 20.0;
  /// Per-variable mutation probability; a non-positive value means 1/n.
  double mutation_probability = 0.0;
  double mutation_distribution_index = 20.0;
};

struct OptimizerConfig {
  std::size_t population_size = 100;
  std::size_t generations = 100;
  std::uint64_t seed = 1;
  VariationParams variation;
  std::string algorithm = "nsga2";
  /// Keep decision vectors in the recorded log (objectives are always kept).
  bool store_decisions = false;

  /// Throws InputError unless N >= 4 and g_max >= 1.
  void validate() const;
};

/// State handed to a base algorithm for one generation.
struct GenerationContext {
  const ProblemSpec& problem;
  const OptimizerConfig& config;
  Rng& rng;
  /// Next unused solution id; offspring must take ids from here in order.
  SolutionId& next_id;
  /// Index of the generation being executed (1-based); offspring carry it as
  /// their birth generation.
  std::uint32_t generation;
};

struct GenerationResult {
  SolutionSet next_population;
  SolutionSet offspring;
};

using GenerationFn = std::function<GenerationResult(const SolutionSet& population, GenerationContext& ctx)>;

/// Name -> base algorithm table consulted by run_and_record.
class AlgorithmRegistry {
 public:
  AlgorithmRegistry() = default;

  /// A registry holding the built-in "nsga2".
  static AlgorithmRegistry with_builtins();

  /// Throws RegistrationError if `name` is already taken.
  void register_algorithm(const std::string& name, GenerationFn fn);
  [[nodiscard]] bool contains(const std::string& name) const;
  /// Throws LookupError for an unknown name.
  [[nodiscard]] const GenerationFn& find(const std::string& name) const;
  [[nodiscard]] std::vector<std::string> names() const;

 private:
  std::map<std::string, GenerationFn> algorithms_;
};

/// One NSGA-II generation: binary tournament on (rank, crowding), simulated
/// binary crossover, polynomial mutation, then rank-then-crowding survival
/// over population + offspring. Throws InputError if |population| != N.
GenerationResult nsga2_generation(const SolutionSet& population, GenerationContext& ctx);

/// Front index (0 = nondominated) of every member.
std::vector<std::size_t> nondominated_ranks(const SolutionSet& set);
/// Crowding distance of the members listed in `front` (positions into set);
/// result is aligned with `front`. Extremes get +infinity.
std::vector<double> crowding_distances(const SolutionSet& set, const std::vector<std::size_t>& front);
/// Positions of the `count` survivors of rank-then-crowding selection, in
/// selection order.
std::vector<std::size_t> nsga2_survivors(const SolutionSet& pool, std::size_t count);

/// Runs config.generations generations of the named algorithm and records the
/// populations and offspring. The optional sink sees the run as it happens.
SequenceLog run_and_record(const ProblemSpec& problem, const OptimizerConfig& config,
                           const AlgorithmRegistry& registry = AlgorithmRegistry::with_builtins(),
                           SequenceSink* sink = nullptr);

}  // namespace emoa
