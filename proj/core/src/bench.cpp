#include "emoa/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "emoa/error.hpp"
#include "emoa/hypervolume.hpp"
#include "emoa/normalization.hpp"

namespace emoa {

namespace {

ReferencePoint reference_for(const SelectionConfig& selection, std::size_t m) {
  if (selection.reference.coords.size() == 0) return ReferencePoint::uniform(m);
  if (selection.reference.coords.size() != m) {
    throw DimensionError("reference point has " + std::to_string(selection.reference.coords.size()) +
                         " coordinates, problem has " + std::to_string(m));
  }
  return selection.reference;
}

void fill_key(RunReport& report, const SequenceLog& log, const ArchiveStrategyConfig& strategy,
              const std::string& sequence_id) {
  report.sequence_id = sequence_id;
  report.algorithm = log.header.algorithm;
  report.problem = log.header.problem;
  report.population_size = log.header.population_size;
  report.generations = log.header.generations;
  report.strategy = strategy;
  if (strategy.kind == StrategyKind::LastX) {
    report.window = strategy.resolved_window(log.header.population_size, log.header.generations);
  }
}

}  // namespace

RunReport replay(const SequenceLog& log, const ArchiveStrategyConfig& strategy, const SelectionConfig& selection,
                 const ReplayOptions& options) {
  if (!(options.budget.count() > 0.0)) throw InputError("time budget must be positive");
  log.validate();
  strategy.validate();

  RunReport report;
  fill_key(report, log, strategy, options.sequence_id);
  const std::size_t m = log.header.problem.objectives();
  const ReferencePoint ref = reference_for(selection, m);
  SelectionConfig config = selection;
  config.reference = ref;
  if (config.k == 0) config.k = log.header.population_size;

  OperationClock removal;
  OperationClock truncation;
  OperationClock selecting;
  const Deadline deadline(options.budget);
  MaintenanceContext ctx{&removal, &truncation, &deadline, strategy.filter};

  ArchiveState state;
  SolutionSet selected;
  SolutionSet selected_estimated;
  try {
    state = replay_archive(log, strategy, ctx);
    ScopedTimer timer(&selecting);
    const NormalizationFrame frame = estimate_frame(state.members);
    SolutionSet normalized = normalize(state.members, frame);
    for (std::size_t i : hss_lazy_indices(normalized, config.k, ref, &deadline)) {
      selected.push_back(state.members[i]);
      selected_estimated.push_back(std::move(normalized[i]));
    }
  } catch (const BudgetExceeded&) {
    report.timed_out = true;
  }

  report.timing.removal_seconds = removal.seconds();
  report.timing.truncation_seconds = truncation.seconds();
  report.timing.selection_seconds = selecting.seconds();
  report.timing.total_seconds =
      report.timing.removal_seconds + report.timing.truncation_seconds + report.timing.selection_seconds;
  if (report.timed_out) return report;

  report.final_archive_size = state.members.size();
  report.peak_cardinality = state.peak_cardinality;
  report.trace = std::move(state.trace);

  report.hv_selected_estimated_frame = hypervolume(selected_estimated, ref, config.hv_mode);
  const NormalizationFrame truth = true_frame(log.header.problem);
  report.hv_selected = hypervolume(normalize(selected, truth), ref, config.hv_mode);
  report.hv_final_population = hypervolume(normalize(log.final_population, truth), ref, config.hv_mode);
  if (options.keep_sets) {
    report.final_archive = std::move(state.members);
    report.selected = std::move(selected);
  }
  return report;
}

std::size_t SizeSpec::resolve(std::size_t population_size) const {
  return times_population ? value * population_size : value;
}

std::string SizeSpec::to_string() const {
  if (!times_population) return std::to_string(value);
  return value == 1 ? "N" : std::to_string(value) + "N";
}

SizeSpec SizeSpec::parse(std::string_view text) {
  SizeSpec spec;
  spec.times_population = !text.empty() && (text.back() == 'N' || text.back() == 'n');
  std::string_view digits = spec.times_population ? text.substr(0, text.size() - 1) : text;
  if (spec.times_population && digits.empty()) {
    spec.value = 1;
    return spec;
  }
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), spec.value);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size() || spec.value == 0) {
    throw InputError("bad archive size '" + std::string(text) + "' (expected e.g. 5000, N or 50N)");
  }
  return spec;
}

std::vector<SizeSpec> default_size_grid() {
  std::vector<SizeSpec> sizes;
  for (std::size_t f : {1, 2, 5, 10, 20, 50, 100, 200, 500, 1000, 2000}) sizes.push_back(SizeSpec{f, true});
  return sizes;
}

std::vector<std::size_t> default_interval_grid() { return {1, 2, 5, 10, 20}; }

std::vector<ArchiveStrategyConfig> expand_cells(const SweepGrid& grid, std::size_t population_size) {
  if (grid.strategies.empty() || grid.sizes.empty()) throw InputError("sweep grid is empty");
  std::vector<ArchiveStrategyConfig> cells;
  for (const SizeSpec& size : grid.sizes) {
    const std::size_t s = size.resolve(population_size);
    for (StrategyKind kind : grid.strategies) {
      switch (kind) {
        case StrategyKind::Standard: cells.push_back(ArchiveStrategyConfig::standard(s)); break;
        case StrategyKind::LazyPeriodical:
          if (grid.intervals.empty()) throw InputError("lazy-periodical needs at least one interval");
          for (std::size_t t : grid.intervals) cells.push_back(ArchiveStrategyConfig::lazy_periodical(s, t));
          break;
        case StrategyKind::LastX: cells.push_back(ArchiveStrategyConfig::last_x(s)); break;
        case StrategyKind::Unbounded: cells.push_back(ArchiveStrategyConfig::unbounded()); break;
      }
    }
  }
  for (ArchiveStrategyConfig& c : cells) c.truncation = grid.truncation;
  return cells;
}

std::vector<RunReport> sweep(const std::vector<NamedLog>& logs, const SweepGrid& grid, const SelectionConfig& selection,
                             std::chrono::duration<double> budget, std::size_t threads, bool keep_sets,
                             const CellCallback& on_cell) {
  if (logs.empty()) throw InputError("sweep needs at least one sequence");
  struct Task {
    const NamedLog* log;
    ArchiveStrategyConfig config;
  };
  std::vector<Task> tasks;
  for (const NamedLog& named : logs) {
    for (ArchiveStrategyConfig& c : expand_cells(grid, named.log->header.population_size)) {
      tasks.push_back(Task{&named, std::move(c)});
    }
  }

  std::vector<RunReport> reports(tasks.size());
  std::atomic<std::size_t> next{0};
  std::size_t done = 0;
  std::mutex progress;
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& task = tasks[i];
      try {
        reports[i] = replay(*task.log->log, task.config, selection, ReplayOptions{budget, task.log->id, keep_sets});
      } catch (const std::exception& e) {
        RunReport failed;
        failed.sequence_id = task.log->id;
        failed.strategy = task.config;
        try {
          fill_key(failed, *task.log->log, task.config, task.log->id);
        } catch (const std::exception&) {
        }
        failed.error = e.what();
        reports[i] = std::move(failed);
      }
      if (on_cell) {
        std::lock_guard<std::mutex> lock(progress);
        on_cell(reports[i], ++done, tasks.size());
      }
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, tasks.size()));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  return reports;
}

std::vector<GroupField> default_group_fields() {
  return {GroupField::Algorithm, GroupField::Problem,  GroupField::Objectives, GroupField::Strategy,
          GroupField::Size,      GroupField::Interval, GroupField::Truncation};
}

std::string cell_label(const ArchiveStrategyConfig& config) {
  std::string label = strategy_name(config.kind);
  if (config.kind == StrategyKind::LazyPeriodical) label += " T=" + std::to_string(config.interval);
  return label;
}

std::string size_label(const ArchiveStrategyConfig& config) {
  return config.bounded() ? std::to_string(config.capacity) : "inf";
}

namespace {

std::string interval_label(const ArchiveStrategyConfig& config) {
  return config.kind == StrategyKind::LazyPeriodical ? std::to_string(config.interval) : "";
}

std::string field_value(const RunReport& r, GroupField field) {
  switch (field) {
    case GroupField::Sequence: return r.sequence_id;
    case GroupField::Algorithm: return r.algorithm;
    case GroupField::Problem: return family_name(r.problem.family());
    case GroupField::Objectives: return std::to_string(r.problem.objectives());
    case GroupField::Strategy: return strategy_name(r.strategy.kind);
    case GroupField::Size: return size_label(r.strategy);
    case GroupField::Interval: return interval_label(r.strategy);
    case GroupField::Truncation: return truncation_name(r.strategy.truncation);
  }
  return {};
}

std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

std::optional<double> median_of(std::vector<double> v) {
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

template <typename F>
std::string common_value(const std::vector<const RunReport*>& group, F get) {
  const std::string first = get(*group.front());
  for (const RunReport* r : group) {
    if (get(*r) != first) return "";
  }
  return first;
}

}  // namespace

AggregateTable aggregate(const std::vector<RunReport>& reports, const std::vector<GroupField>& group_by) {
  AggregateTable table;
  if (reports.empty()) {
    table.warnings.push_back("no reports to aggregate");
    return table;
  }
  std::vector<std::vector<std::string>> keys;
  std::map<std::vector<std::string>, std::vector<const RunReport*>> groups;
  for (const RunReport& r : reports) {
    std::vector<std::string> key;
    for (GroupField f : group_by) key.push_back(field_value(r, f));
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) keys.push_back(key);
    it->second.push_back(&r);
  }

  for (const auto& key : keys) {
    const std::vector<const RunReport*>& group = groups[key];
    AggregateRow row;
    row.runs = group.size();
    row.algorithm = common_value(group, [](const RunReport& r) { return r.algorithm; });
    row.problem = common_value(group, [](const RunReport& r) { return family_name(r.problem.family()); });
    row.objectives = common_value(group, [](const RunReport& r) { return std::to_string(r.problem.objectives()); });
    row.population_size = common_value(group, [](const RunReport& r) { return std::to_string(r.population_size); });
    row.sequence_id = common_value(group, [](const RunReport& r) { return r.sequence_id; });
    row.strategy = common_value(group, [](const RunReport& r) { return strategy_name(r.strategy.kind); });
    row.size = common_value(group, [](const RunReport& r) { return size_label(r.strategy); });
    row.interval = common_value(group, [](const RunReport& r) { return interval_label(r.strategy); });
    row.window = common_value(group, [](const RunReport& r) { return r.window ? std::to_string(*r.window) : ""; });
    row.truncation = common_value(group, [](const RunReport& r) { return truncation_name(r.strategy.truncation); });

    std::vector<double> hv_sel, hv_pop, removal, trunc, sel, total, archive;
    double ratio = 0.0;
    for (const RunReport* r : group) {
      if (r->population_size > 0) {
        ratio = r->strategy.bounded() ? static_cast<double>(r->strategy.capacity) / static_cast<double>(r->population_size)
                                      : std::numeric_limits<double>::infinity();
      }
      if (r->error) {
        ++row.errors;
        continue;
      }
      if (r->timed_out) {
        ++row.timeouts;
        continue;
      }
      if (r->hv_selected) hv_sel.push_back(*r->hv_selected);
      if (r->hv_final_population) hv_pop.push_back(*r->hv_final_population);
      removal.push_back(r->timing.removal_seconds);
      trunc.push_back(r->timing.truncation_seconds);
      sel.push_back(r->timing.selection_seconds);
      total.push_back(r->timing.total_seconds);
      archive.push_back(static_cast<double>(r->final_archive_size));
      row.max_peak_cardinality = std::max(row.max_peak_cardinality, r->peak_cardinality);
    }
    if (row.errors == row.runs) {
      std::string label;
      for (const std::string& k : key) label += (label.empty() ? "" : ",") + k;
      table.warnings.push_back("group [" + label + "] has no usable report; omitted");
      continue;
    }
    row.mean_hv_selected = mean_of(hv_sel);
    row.mean_hv_final_population = mean_of(hv_pop);
    row.mean_removal_seconds = mean_of(removal);
    row.mean_truncation_seconds = mean_of(trunc);
    row.mean_selection_seconds = mean_of(sel);
    row.mean_total_seconds = mean_of(total);
    row.median_total_seconds = median_of(total);
    row.mean_final_archive_size = mean_of(archive);
    row.size_over_population = ratio;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace emoa
