#include "emoa/archive.hpp"

#include <algorithm>

#include "emoa/error.hpp"

namespace emoa {

std::string strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Standard: return "standard";
    case StrategyKind::LazyPeriodical: return "lazy-periodical";
    case StrategyKind::LastX: return "last-x";
    case StrategyKind::Unbounded: return "unbounded";
  }
  return "unknown";
}

StrategyKind parse_strategy(std::string_view name) {
  if (name == "standard") return StrategyKind::Standard;
  if (name == "lazy" || name == "lazy-periodical") return StrategyKind::LazyPeriodical;
  if (name == "last-x" || name == "lastx") return StrategyKind::LastX;
  if (name == "unbounded") return StrategyKind::Unbounded;
  throw LookupError("unknown archiving strategy '" + std::string(name) + "'");
}

ArchiveStrategyConfig ArchiveStrategyConfig::standard(std::size_t s) {
  ArchiveStrategyConfig c;
  c.kind = StrategyKind::Standard;
  c.capacity = s;
  return c;
}

ArchiveStrategyConfig ArchiveStrategyConfig::lazy_periodical(std::size_t s, std::size_t t) {
  ArchiveStrategyConfig c;
  c.kind = StrategyKind::LazyPeriodical;
  c.capacity = s;
  c.interval = t;
  return c;
}

ArchiveStrategyConfig ArchiveStrategyConfig::last_x(std::size_t s, std::optional<std::size_t> x) {
  ArchiveStrategyConfig c;
  c.kind = StrategyKind::LastX;
  c.capacity = s;
  c.window = x;
  return c;
}

ArchiveStrategyConfig ArchiveStrategyConfig::unbounded() {
  ArchiveStrategyConfig c;
  c.kind = StrategyKind::Unbounded;
  c.capacity = kUnboundedCapacity;
  return c;
}

std::size_t ArchiveStrategyConfig::resolved_window(std::size_t population_size, std::size_t generations) const {
  if (window) return std::min(*window, generations);
  if (!bounded()) return generations;
  if (population_size == 0) throw InputError("population size must be positive");
  return std::min(capacity / population_size, generations);
}

void ArchiveStrategyConfig::validate() const {
  if (capacity == 0) throw InputError("archive size must be at least 1");
  if (interval == 0) throw InputError("update interval T must be at least 1");
  if (window && *window == 0) throw InputError("window X must be at least 1");
}

ArchiveState initial_archive(const SolutionSet& first_population) {
  ArchiveState state;
  state.members = first_population;
  state.generation = 1;
  state.peak_cardinality = first_population.size();
  state.trace.push_back({1, first_population.size(), first_population.size()});
  return state;
}

namespace {

void absorb(ArchiveState& state, const SolutionSet& incoming, std::size_t g) {
  state.members.insert(state.members.end(), incoming.begin(), incoming.end());
  state.generation = g;
  state.peak_cardinality = std::max(state.peak_cardinality, state.members.size());
}

void remove_step(ArchiveState& state, MaintenanceContext& ctx) {
  check_deadline(ctx.deadline);
  ScopedTimer timer(ctx.removal);
  remove_dominated(state.members, ctx.filter);
}

void truncate_step(ArchiveState& state, std::size_t s, TruncationKind kind, MaintenanceContext& ctx) {
  check_deadline(ctx.deadline);
  ScopedTimer timer(ctx.truncation);
  truncate_in_place(state.members, s, kind, ctx.deadline);
}

// Shared by the lazy-periodical and over-full last-X paths.
void periodic_maintenance(ArchiveState& state, std::size_t g, std::size_t g_max, std::size_t s, std::size_t t,
                          TruncationKind kind, MaintenanceContext& ctx) {
  if ((g_max - g) % t != 0) return;
  if (state.members.size() > s || g == g_max) remove_step(state, ctx);
  if (state.members.size() > s) truncate_step(state, s, kind, ctx);
}

}  // namespace

void standard_update(ArchiveState& state, const SolutionSet& offspring, std::size_t s, TruncationKind truncation,
                     MaintenanceContext& ctx) {
  const std::size_t g = state.generation + 1;
  absorb(state, offspring, g);
  const std::size_t before = state.members.size();
  remove_step(state, ctx);
  if (state.members.size() > s) truncate_step(state, s, truncation, ctx);
  state.trace.push_back({g, before, state.members.size()});
}

void lazy_periodical_update(ArchiveState& state, const SolutionSet& offspring, std::size_t g, std::size_t g_max,
                            std::size_t s, std::size_t t, TruncationKind truncation, MaintenanceContext& ctx) {
  if (g < 2 || g > g_max) throw InputError("lazy-periodical update needs 2 <= g <= g_max");
  if (t == 0) throw InputError("update interval T must be at least 1");
  absorb(state, offspring, g);
  const std::size_t before = state.members.size();
  periodic_maintenance(state, g, g_max, s, t, truncation, ctx);
  state.trace.push_back({g, before, state.members.size()});
}

void last_x_update(ArchiveState& state, const SolutionSet& input, std::size_t g, std::size_t g_max, std::size_t x,
                   std::size_t s, std::size_t t, TruncationKind truncation, MaintenanceContext& ctx) {
  if (g > g_max) throw InputError("generation beyond g_max");
  x = std::clamp<std::size_t>(x, 1, g_max);
  const std::size_t opens = g_max - x + 1;
  if (g < opens) {
    state.generation = g;
    state.trace.push_back({g, 0, 0});
    return;
  }
  if (g == opens) state.members.clear();
  absorb(state, input, g);
  const std::size_t before = state.members.size();
  if (g == g_max) {
    remove_step(state, ctx);
    if (state.members.size() > s) truncate_step(state, s, truncation, ctx);
  } else if (state.members.size() > s) {
    periodic_maintenance(state, g, g_max, s, t, truncation, ctx);
  }
  state.trace.push_back({g, before, state.members.size()});
}

ArchiveState replay_archive(const SequenceLog& log, const ArchiveStrategyConfig& config, MaintenanceContext& ctx) {
  config.validate();
  ctx.filter = config.filter;
  const std::size_t g_max = log.header.generations;
  if (g_max == 0 || log.entries.size() != g_max) throw FormatError("sequence log is incomplete");
  const std::size_t s = config.capacity;

  if (config.kind == StrategyKind::LastX) {
    const std::size_t x = config.resolved_window(log.header.population_size, g_max);
    ArchiveState state;
    const std::size_t opens = g_max - x + 1;
    for (std::size_t g = 1; g <= g_max; ++g) {
      if (g < opens) {
        last_x_update(state, {}, g, g_max, x, s, config.interval, config.truncation, ctx);
      } else if (g == opens) {
        last_x_update(state, log.population(g), g, g_max, x, s, config.interval, config.truncation, ctx);
      } else {
        last_x_update(state, log.entries[g - 1], g, g_max, x, s, config.interval, config.truncation, ctx);
      }
    }
    return state;
  }

  ArchiveState state = initial_archive(log.entries[0]);
  if (g_max == 1) {
    // A single generation is also the final one.
    remove_step(state, ctx);
    if (state.members.size() > s) truncate_step(state, s, config.truncation, ctx);
    state.trace.back().after_maintenance = state.members.size();
    return state;
  }
  for (std::size_t g = 2; g <= g_max; ++g) {
    const SolutionSet& offspring = log.entries[g - 1];
    switch (config.kind) {
      case StrategyKind::Standard:
        standard_update(state, offspring, s, config.truncation, ctx);
        break;
      case StrategyKind::LazyPeriodical:
        lazy_periodical_update(state, offspring, g, g_max, s, config.interval, config.truncation, ctx);
        break;
      case StrategyKind::Unbounded:
        lazy_periodical_update(state, offspring, g, g_max, kUnboundedCapacity, 1, config.truncation, ctx);
        break;
      case StrategyKind::LastX:
        break;
    }
  }
  return state;
}

}  // namespace emoa
