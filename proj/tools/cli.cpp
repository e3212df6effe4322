#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emoa/archive.hpp"
#include "emoa/bench.hpp"
#include "emoa/error.hpp"
#include "emoa/hypervolume.hpp"
#include "emoa/normalization.hpp"
#include "emoa/optimizer.hpp"
#include "emoa/report_io.hpp"
#include "emoa/selection.hpp"
#include "emoa/sequence_log.hpp"

namespace emoa::cli {

namespace {

namespace fs = std::filesystem;

/// Bad flag value found after parsing; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename F>
auto as_usage(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError& e) {
    throw UsageError(e.what());
  } catch (const LookupError& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string cur;
  auto flush = [&] {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) items.push_back(cur.substr(b, e - b + 1));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return items;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const std::string& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

void check_output_path(const std::string& path, const std::string& flag) {
  if (path.empty()) return;
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw UsageError(flag + ": directory '" + parent.string() + "' does not exist");
  }
  if (fs::is_directory(path)) throw UsageError(flag + ": '" + path + "' is a directory");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

struct SelectionFlags {
  std::size_t k = 0;
  double reference = kDefaultReferenceCoordinate;
  std::string hv = "exact";
  std::size_t hv_samples = 1'000'000;
  std::uint64_t seed = 1;
  double budget_seconds = 3600.0;

  void add_to(CLI::App* app, bool with_k = true) {
    if (with_k) app->add_option("--k", k, "Size of the final solution set (0 = population size N)");
    app->add_option("--ref", reference, "Reference point coordinate in normalized space");
    app->add_option("--hv", hv, "Hypervolume used for reporting: exact or mc")
        ->check(CLI::IsMember({"exact", "mc"}));
    app->add_option("--hv-samples", hv_samples, "Samples for --hv mc");
    app->add_option("--seed", seed, "Seed for Monte-Carlo hypervolume");
    app->add_option("--budget-seconds", budget_seconds, "Wall-clock budget for archiving plus selection");
  }

  [[nodiscard]] HypervolumeMode mode() const {
    if (hv == "mc") return MonteCarloHypervolume{hv_samples, seed};
    return ExactHypervolume{};
  }

  void validate() const {
    if (!(budget_seconds > 0.0)) throw UsageError("--budget-seconds must be positive");
    if (!(reference > 0.0)) throw UsageError("--ref must be positive");
    if (hv == "mc" && hv_samples == 0) throw UsageError("--hv-samples must be positive");
  }

  [[nodiscard]] SelectionConfig config(std::size_t m) const {
    SelectionConfig c;
    c.k = k;
    c.reference = ReferencePoint::uniform(m, reference);
    c.hv_mode = mode();
    return c;
  }
};

FilterAlgorithm parse_filter(const std::string& name) {
  if (name == "naive") return FilterAlgorithm::Naive;
  if (name == "efficient") return FilterAlgorithm::EfficientSort;
  throw UsageError("unknown filter '" + name + "' (expected naive or efficient)");
}

std::string describe(const RunReport& r) {
  std::string s = r.sequence_id + " " + cell_label(r.strategy) + " s=" + size_label(r.strategy);
  if (r.error) return s + " error: " + *r.error;
  if (r.timed_out) return s + " timed out";
  return s + " total_s=" + std::to_string(r.timing.total_seconds) +
         " hv_selected=" + (r.hv_selected ? std::to_string(*r.hv_selected) : std::string("-"));
}

// ---------------------------------------------------------------- run

struct RunFlags {
  std::string problem = "dtlz2";
  std::size_t m = 3;
  std::size_t n_pop = 0;
  std::size_t gens = 0;
  std::uint64_t seed = 1;
  std::string algorithm = "nsga2";
  bool store_decisions = false;
  std::string out;
};

int do_run(const RunFlags& f, std::ostream& out) {
  const ProblemSpec spec = as_usage([&] { return ProblemSpec(parse_family(f.problem), f.m); });
  OptimizerConfig config;
  config.population_size = f.n_pop ? f.n_pop : default_population_size(f.m);
  config.generations = f.gens ? f.gens : default_generations(spec);
  config.seed = f.seed;
  config.algorithm = f.algorithm;
  config.store_decisions = f.store_decisions;
  as_usage([&] { config.validate(); });
  const AlgorithmRegistry registry = AlgorithmRegistry::with_builtins();
  if (!registry.contains(f.algorithm)) throw UsageError("unknown algorithm '" + f.algorithm + "'");
  check_output_path(f.out, "--out");

  SequenceFileWriter writer(f.out);
  const SequenceLog log = run_and_record(spec, config, registry, &writer);
  out << "wrote " << f.out << ": " << family_name(spec.family()) << " M=" << spec.objectives()
      << " N=" << config.population_size << " g_max=" << config.generations << " solutions=" << log.total_solutions()
      << '\n';
  return kExitSuccess;
}

// ---------------------------------------------------------------- replay

struct StrategyFlags {
  std::string strategy = "standard";
  std::string size = "N";
  std::size_t interval = 1;
  std::size_t window = 0;
  std::string truncation = "dss";
  std::string filter = "efficient";

  void add_to(CLI::App* app) {
    app->add_option("--strategy", strategy, "standard, lazy-periodical, last-x or unbounded");
    app->add_option("--s", size, "Archive size: absolute count or multiple of N (e.g. 50N)");
    app->add_option("--t", interval, "Maintenance interval T (lazy-periodical, last-x fallback)");
    app->add_option("--x", window, "Window X for last-x (0 = min(s/N, g_max))");
    app->add_option("--truncation", truncation, "Truncation operator: dss or crowding");
    app->add_option("--filter", filter, "Dominated-solution filter: efficient or naive");
  }

  [[nodiscard]] ArchiveStrategyConfig resolve(std::size_t population_size) const {
    return as_usage([&] {
      const StrategyKind kind = parse_strategy(strategy);
      const std::size_t s = SizeSpec::parse(size).resolve(population_size);
      ArchiveStrategyConfig c;
      switch (kind) {
        case StrategyKind::Standard: c = ArchiveStrategyConfig::standard(s); break;
        case StrategyKind::LazyPeriodical: c = ArchiveStrategyConfig::lazy_periodical(s, interval); break;
        case StrategyKind::LastX:
          c = ArchiveStrategyConfig::last_x(s, window ? std::optional<std::size_t>(window) : std::nullopt);
          c.interval = interval;
          break;
        case StrategyKind::Unbounded: c = ArchiveStrategyConfig::unbounded(); break;
      }
      c.truncation = parse_truncation(truncation);
      c.filter = parse_filter(filter);
      c.validate();
      return c;
    });
  }
};

struct ReplayFlags {
  std::string seq;
  StrategyFlags strategy;
  SelectionFlags selection;
  std::string out;
  std::string archive_out;
  std::string selected_out;
};

int do_replay(const ReplayFlags& f, std::ostream& out, std::ostream& err) {
  f.selection.validate();
  check_output_path(f.out, "--out");
  check_output_path(f.archive_out, "--archive-out");
  check_output_path(f.selected_out, "--selected-out");
  const SequenceLog log = read_sequence_log(fs::path(f.seq));
  const ArchiveStrategyConfig strategy = f.strategy.resolve(log.header.population_size);

  ReplayOptions options;
  options.budget = std::chrono::duration<double>(f.selection.budget_seconds);
  options.sequence_id = fs::path(f.seq).stem().string();
  const RunReport report = replay(log, strategy, f.selection.config(log.header.problem.objectives()), options);
  err << describe(report) << '\n';

  if (f.out.empty()) {
    write_reports_csv(out, {report});
  } else {
    std::ofstream file = open_output(f.out);
    write_reports_csv(file, {report});
    finish_output(file, f.out);
  }
  const std::vector<std::pair<std::string, std::string>> extra = {
      {"sequence", options.sequence_id}, {"strategy", cell_label(strategy)}, {"s", size_label(strategy)}};
  if (!f.archive_out.empty() && !report.timed_out) write_solution_dump(fs::path(f.archive_out), "final", report.final_archive, extra);
  if (!f.selected_out.empty() && !report.timed_out) write_solution_dump(fs::path(f.selected_out), "selected", report.selected, extra);
  return kExitSuccess;
}

// ---------------------------------------------------------------- sweep

struct SweepFlags {
  std::string seq_dir;
  std::vector<std::string> seq;
  std::string sizes;
  std::string strategies = "all";
  std::string intervals;
  std::string truncation = "dss";
  SelectionFlags selection;
  std::size_t threads = 1;
  std::string out;
  std::string aggregate_out;
  std::string plots_dir;
};

std::vector<fs::path> sequence_files(const SweepFlags& f) {
  std::vector<fs::path> files;
  if (!f.seq_dir.empty()) {
    for (const auto& entry : fs::directory_iterator(f.seq_dir)) {
      if (!entry.is_regular_file()) continue;
      const std::string name = entry.path().filename().string();
      if (name.empty() || name.front() == '.' || entry.path().extension() == ".partial") continue;
      files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  }
  for (const std::string& s : f.seq) files.emplace_back(s);
  if (files.empty()) throw UsageError("no sequence logs given (use --seq-dir or --seq)");
  return files;
}

SweepGrid sweep_grid(const SweepFlags& f) {
  SweepGrid grid;
  as_usage([&] {
    if (f.strategies == "all") {
      grid.strategies = {StrategyKind::Standard, StrategyKind::LazyPeriodical, StrategyKind::LastX};
    } else {
      for (const std::string& name : split_list(f.strategies)) grid.strategies.push_back(parse_strategy(name));
    }
    for (const std::string& s : split_list(f.sizes)) grid.sizes.push_back(SizeSpec::parse(s));
    grid.intervals.clear();
    for (const std::string& t : split_list(f.intervals)) {
      const std::size_t v = static_cast<std::size_t>(std::stoull(t));
      if (v == 0) throw InputError("--intervals entries must be positive");
      grid.intervals.push_back(v);
    }
    grid.truncation = parse_truncation(f.truncation);
  });
  if (grid.strategies.empty()) throw UsageError("--strategies is empty");
  if (grid.sizes.empty()) throw UsageError("--sizes is empty");
  if (grid.intervals.empty()) throw UsageError("--intervals is empty");
  return grid;
}

int do_sweep(const SweepFlags& f, std::ostream& out, std::ostream& err) {
  f.selection.validate();
  SweepGrid grid;
  try {
    grid = sweep_grid(f);
  } catch (const std::invalid_argument&) {
    throw UsageError("--intervals must be a comma-separated list of integers");
  } catch (const std::out_of_range&) {
    throw UsageError("--intervals value out of range");
  }
  if (f.threads == 0) throw UsageError("--threads must be at least 1");
  check_output_path(f.out, "--out");
  check_output_path(f.aggregate_out, "--aggregate-out");
  if (!f.plots_dir.empty() && fs::exists(f.plots_dir) && !fs::is_directory(f.plots_dir)) {
    throw UsageError("--plots-dir: '" + f.plots_dir + "' is not a directory");
  }
  const std::vector<fs::path> files = sequence_files(f);

  std::vector<SequenceLog> logs;
  logs.reserve(files.size());
  std::vector<NamedLog> named;
  for (const fs::path& p : files) logs.push_back(read_sequence_log(p));
  const std::size_t m = logs.front().header.problem.objectives();
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (logs[i].header.problem.objectives() != m) throw UsageError("sequence logs disagree in M");
    named.push_back(NamedLog{files[i].stem().string(), &logs[i]});
  }

  const std::vector<RunReport> reports =
      sweep(named, grid, f.selection.config(m), std::chrono::duration<double>(f.selection.budget_seconds), f.threads,
            false, [&](const RunReport& r, std::size_t done, std::size_t total) {
              err << '[' << done << '/' << total << "] " << describe(r) << '\n';
            });

  std::ofstream file = open_output(f.out);
  write_reports_csv(file, reports);
  finish_output(file, f.out);
  const AggregateTable table = aggregate(reports);
  for (const std::string& w : table.warnings) err << "warning: " << w << '\n';
  if (!f.aggregate_out.empty() && !table.rows.empty()) emit(table, EmitFormat::CSV, f.aggregate_out);
  if (!f.plots_dir.empty() && !table.rows.empty()) emit(table, EmitFormat::PlotSVG, f.plots_dir);
  out << "wrote " << reports.size() << " rows to " << f.out << '\n';
  return kExitSuccess;
}

// ---------------------------------------------------------------- select

struct SelectFlags {
  std::string archive;
  std::size_t k = 0;
  std::string method = "hss";
  std::string normalize_with = "estimated";
  std::string problem;
  SelectionFlags selection;
  std::string out;
};

int do_select(const SelectFlags& f, std::ostream& out) {
  f.selection.validate();
  if (f.k == 0) throw UsageError("--k must be at least 1");
  if (f.normalize_with == "true" && f.problem.empty()) throw UsageError("--normalize true needs --problem");
  check_output_path(f.out, "--out");
  const SolutionDump dump = read_solution_dump(fs::path(f.archive));
  const std::size_t m = common_dimension(dump.solutions);
  if (dump.solutions.empty()) throw InputError("archive '" + f.archive + "' is empty");

  SolutionSet candidates = dump.solutions;
  if (f.normalize_with == "estimated") {
    candidates = normalize(dump.solutions, estimate_frame(dump.solutions));
  } else if (f.normalize_with == "true") {
    const ProblemSpec spec = as_usage([&] { return ProblemSpec(parse_family(f.problem), m); });
    candidates = normalize(dump.solutions, true_frame(spec));
  }
  const ReferencePoint ref = ReferencePoint::uniform(m, f.selection.reference);
  const Deadline deadline(std::chrono::duration<double>(f.selection.budget_seconds));
  std::vector<std::size_t> picked;
  if (f.method == "hss") {
    picked = hss_lazy_indices(candidates, f.k, ref, &deadline);
  } else {
    picked = f.k >= candidates.size() ? std::vector<std::size_t>() : dss_select_indices(candidates, f.k, &deadline);
    if (f.k >= candidates.size()) {
      for (std::size_t i = 0; i < candidates.size(); ++i) picked.push_back(i);
    }
  }
  SolutionSet chosen;
  SolutionSet chosen_space;
  for (std::size_t i : picked) {
    chosen.push_back(dump.solutions[i]);
    chosen_space.push_back(candidates[i]);
  }
  const double hv = hypervolume(chosen_space, ref, f.selection.mode());
  out << "selected " << chosen.size() << " of " << dump.solutions.size() << " with " << f.method
      << "; hypervolume=" << hv << " (" << f.normalize_with << " frame)\n";
  if (!f.out.empty()) {
    write_solution_dump(fs::path(f.out), "selected", chosen, {{"method", f.method}, {"k", std::to_string(f.k)}});
  }
  return kExitSuccess;
}

// ---------------------------------------------------------------- report

struct ReportFlags {
  std::string in;
  std::string out;
  std::string svg_dir;
  std::string group_by = "algorithm,problem,M,strategy,s,T,truncation";
};

std::vector<GroupField> parse_group_by(const std::string& text) {
  std::vector<GroupField> fields;
  for (const std::string& name : split_list(text)) {
    if (name == "sequence" || name == "sequence_id") {
      fields.push_back(GroupField::Sequence);
    } else if (name == "algorithm") {
      fields.push_back(GroupField::Algorithm);
    } else if (name == "problem") {
      fields.push_back(GroupField::Problem);
    } else if (name == "M") {
      fields.push_back(GroupField::Objectives);
    } else if (name == "strategy") {
      fields.push_back(GroupField::Strategy);
    } else if (name == "s") {
      fields.push_back(GroupField::Size);
    } else if (name == "T") {
      fields.push_back(GroupField::Interval);
    } else if (name == "truncation") {
      fields.push_back(GroupField::Truncation);
    } else {
      throw UsageError("unknown --group-by field '" + name + "'");
    }
  }
  if (fields.empty()) throw UsageError("--group-by is empty");
  return fields;
}

int do_report(const ReportFlags& f, std::ostream& out, std::ostream& err) {
  const std::vector<GroupField> group_by = parse_group_by(f.group_by);
  check_output_path(f.out, "--out");
  if (!f.svg_dir.empty() && fs::exists(f.svg_dir) && !fs::is_directory(f.svg_dir)) {
    throw UsageError("--svg-dir: '" + f.svg_dir + "' is not a directory");
  }
  const std::vector<RunReport> reports = read_reports_csv(fs::path(f.in));
  const AggregateTable table = aggregate(reports, group_by);
  for (const std::string& w : table.warnings) err << "warning: " << w << '\n';
  if (table.rows.empty()) throw InputError("no rows to report");
  if (f.out.empty()) {
    write_aggregate_csv(out, table);
  } else {
    emit(table, EmitFormat::CSV, f.out);
  }
  if (!f.svg_dir.empty()) {
    for (const fs::path& p : emit(table, EmitFormat::PlotSVG, f.svg_dir)) err << "wrote " << p.string() << '\n';
  }
  return kExitSuccess;
}

// Flags from a key=value file that the command line did not already set.
std::optional<std::string> find_config(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

bool given_on_command_line(const std::vector<std::string>& args, const CLI::Option& opt) {
  for (const std::string& name : opt.get_lnames()) {
    const std::string flag = "--" + name;
    for (const std::string& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
  }
  return false;
}

std::vector<std::string> config_arguments(const CLI::App& sub, const std::string& path,
                                          const std::vector<std::string>& given) {
  if (!fs::is_regular_file(path)) throw UsageError("--config: file '" + path + "' does not exist");
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigBase().from_file(path);
  } catch (const CLI::ParseError& e) {
    throw UsageError("--config: " + std::string(e.what()));
  }
  std::vector<std::string> args;
  for (const CLI::ConfigItem& item : items) {
    if (!item.parents.empty() || item.name == "++" || item.name == "--") {
      throw UsageError("--config: sections are not supported ('" + item.fullname() + "')");
    }
    if (item.name == "config") throw UsageError("--config: a config file cannot name another one");
    const CLI::Option* opt = sub.get_option_no_throw("--" + item.name);
    if (opt == nullptr) throw UsageError("--config: unknown key '" + item.name + "' for " + sub.get_name());
    if (given_on_command_line(given, *opt)) continue;
    if (item.inputs.empty()) throw UsageError("--config: key '" + item.name + "' has no value");
    std::string value;
    for (const std::string& v : item.inputs) value += (value.empty() ? "" : ",") + v;
    args.push_back("--" + item.name + "=" + value);
  }
  return args;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"External archive strategies for evolutionary multi-objective optimization", "emoa"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::string sizes_default;
  for (const SizeSpec& s : default_size_grid()) sizes_default += (sizes_default.empty() ? "" : ",") + s.to_string();
  std::string intervals_default;
  for (std::size_t t : default_interval_grid()) {
    intervals_default += (intervals_default.empty() ? "" : ",") + std::to_string(t);
  }

  RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "Run an optimizer and record every population and offspring");
  run->add_option("--problem", run_flags.problem, "dtlz1..dtlz4 or minus-dtlz1..minus-dtlz4");
  run->add_option("--m", run_flags.m, "Number of objectives");
  run->add_option("--n-pop", run_flags.n_pop, "Population size N (0 = 91/210/156 for M = 3/5/8)");
  run->add_option("--gens", run_flags.gens, "Generations g_max (0 = problem default)");
  run->add_option("--seed", run_flags.seed, "Random seed");
  run->add_option("--algorithm", run_flags.algorithm, "Base algorithm");
  run->add_flag("--store-decisions", run_flags.store_decisions, "Keep decision vectors in the log");
  run->add_option("--out", run_flags.out, "Sequence log to write")->required();

  ReplayFlags replay_flags;
  CLI::App* rep = app.add_subcommand("replay", "Replay a sequence log through one archive strategy");
  rep->add_option("--seq", replay_flags.seq, "Sequence log")->required()->check(CLI::ExistingFile);
  replay_flags.strategy.add_to(rep);
  replay_flags.selection.add_to(rep);
  rep->add_option("--out", replay_flags.out, "Report CSV (stdout if omitted)");
  rep->add_option("--archive-out", replay_flags.archive_out, "Dump of the final archive");
  rep->add_option("--selected-out", replay_flags.selected_out, "Dump of the selected set");

  SweepFlags sweep_flags;
  sweep_flags.sizes = sizes_default;
  sweep_flags.intervals = intervals_default;
  CLI::App* swp = app.add_subcommand("sweep", "Replay many logs over a grid of strategies, sizes and intervals");
  swp->add_option("--seq-dir", sweep_flags.seq_dir, "Directory of sequence logs")->check(CLI::ExistingDirectory);
  swp->add_option("--seq", sweep_flags.seq, "Sequence log (repeatable)")->check(CLI::ExistingFile);
  swp->add_option("--sizes", sweep_flags.sizes, "Comma-separated archive sizes");
  swp->add_option("--strategies", sweep_flags.strategies,
                  "all (standard, lazy-periodical, last-x) or a comma-separated list");
  swp->add_option("--intervals", sweep_flags.intervals, "Comma-separated T values for lazy-periodical");
  swp->add_option("--truncation", sweep_flags.truncation, "Truncation operator: dss or crowding");
  sweep_flags.selection.add_to(swp);
  swp->add_option("--threads", sweep_flags.threads, "Worker threads; one cell per worker at a time");
  swp->add_option("--out", sweep_flags.out, "Per-cell report CSV")->required();
  swp->add_option("--aggregate-out", sweep_flags.aggregate_out, "Aggregated CSV");
  swp->add_option("--plots-dir", sweep_flags.plots_dir, "Directory for SVG charts");

  SelectFlags select_flags;
  CLI::App* sel = app.add_subcommand("select", "Select a final solution set from an archive dump");
  sel->add_option("--archive", select_flags.archive, "Archive dump (from replay --archive-out)")
      ->required()
      ->check(CLI::ExistingFile);
  sel->add_option("--k", select_flags.k, "Number of solutions to select")->required();
  sel->add_option("--method", select_flags.method, "hss (hypervolume) or dss (distance)")
      ->check(CLI::IsMember({"hss", "dss"}));
  sel->add_option("--normalize", select_flags.normalize_with, "estimated, true or none")
      ->check(CLI::IsMember({"estimated", "true", "none"}));
  sel->add_option("--problem", select_flags.problem, "Problem for --normalize true");
  select_flags.selection.add_to(sel, false);
  sel->add_option("--out", select_flags.out, "Dump of the selected set");

  ReportFlags report_flags;
  CLI::App* rpt = app.add_subcommand("report", "Aggregate a per-cell CSV and draw charts");
  rpt->add_option("--in", report_flags.in, "Per-cell report CSV")->required()->check(CLI::ExistingFile);
  rpt->add_option("--out", report_flags.out, "Aggregated CSV (stdout if omitted)");
  rpt->add_option("--svg-dir", report_flags.svg_dir, "Directory for SVG charts");
  rpt->add_option("--group-by", report_flags.group_by, "Grouping columns");

  std::string config_path;
  for (CLI::App* sub : {run, rep, swp, sel, rpt}) {
    sub->add_option("--config", config_path, "key=value file with flag values; command-line flags win");
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const auto sub_it = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
      return app.get_subcommand_no_throw(a) != nullptr;
    });
    const std::optional<std::string> config_file = find_config(args);
    if (config_file && sub_it != args.end()) {
      const std::vector<std::string> extras = config_arguments(*app.get_subcommand(*sub_it), *config_file, args);
      args.insert(args.end(), extras.begin(), extras.end());
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    if (run->parsed()) return do_run(run_flags, out);
    if (rep->parsed()) return do_replay(replay_flags, out, err);
    if (swp->parsed()) return do_sweep(sweep_flags, out, err);
    if (sel->parsed()) return do_select(select_flags, out);
    if (rpt->parsed()) return do_report(report_flags, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace emoa::cli
