#include "emoa/sequence_log.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>
#include <string_view>

#include "emoa/error.hpp"

namespace emoa {

namespace {

constexpr std::string_view kPopulationTag = "POP";
constexpr std::string_view kFinalSentinel = "FINAL";

void append_double(std::string& out, double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), ptr);
}

template <typename T>
T parse_number(std::string_view token, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw FormatError(std::string("bad ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

const std::string& require(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw FormatError("header lacks key '" + key + "'");
  return it->second;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return in;
}

void write_population_line(std::ostream& out, std::size_t generation, const std::vector<SolutionId>& ids) {
  std::string line(kPopulationTag);
  line += ' ' + std::to_string(generation);
  for (SolutionId id : ids) line += ' ' + std::to_string(id);
  line += '\n';
  out << line;
}

}  // namespace

std::size_t SequenceLog::total_solutions() const noexcept {
  std::size_t n = 0;
  for (const SolutionSet& e : entries) n += e.size();
  return n;
}

SolutionSet SequenceLog::population(std::size_t generation) const {
  if (generation < 1 || generation > population_ids.size()) {
    throw InputError("no population recorded for generation " + std::to_string(generation));
  }
  SolutionSet out;
  out.reserve(population_ids[generation - 1].size());
  for (SolutionId id : population_ids[generation - 1]) {
    // Entries hold strictly increasing ids, so locate the entry, then the member.
    auto entry = std::upper_bound(entries.begin(), entries.end(), id, [](SolutionId v, const SolutionSet& e) {
      return !e.empty() && v < e.front().id;
    });
    if (entry == entries.begin()) throw FormatError("population references unknown id " + std::to_string(id));
    --entry;
    auto member = std::lower_bound(entry->begin(), entry->end(), id,
                                   [](const Solution& s, SolutionId v) { return s.id < v; });
    if (member == entry->end() || member->id != id) {
      throw FormatError("population references unknown id " + std::to_string(id));
    }
    out.push_back(*member);
  }
  return out;
}

void SequenceLog::validate() const {
  const std::size_t n_pop = header.population_size;
  const std::size_t g_max = header.generations;
  if (entries.size() != g_max) {
    throw FormatError("expected " + std::to_string(g_max) + " entries, found " + std::to_string(entries.size()));
  }
  if (population_ids.size() != g_max) throw FormatError("population records do not cover every generation");
  bool first = true;
  SolutionId last = 0;
  for (std::size_t g = 0; g < entries.size(); ++g) {
    if (entries[g].size() != n_pop) throw FormatError("entry " + std::to_string(g) + " has wrong size");
    for (const Solution& s : entries[g]) {
      if (s.objectives.size() != header.problem.objectives()) throw FormatError("objective count mismatch");
      if (!first && s.id <= last) throw FormatError("solution ids are not strictly increasing");
      first = false;
      last = s.id;
    }
  }
  for (const auto& ids : population_ids) {
    if (ids.size() != n_pop) throw FormatError("population record has wrong size");
  }
  if (final_population.size() != n_pop) throw FormatError("final population has wrong size");
  if (g_max > 0 && ids_of(final_population) != population_ids.back()) {
    throw FormatError("final population does not match the last population record");
  }
}

void write_solution_line(std::ostream& out, const Solution& s, bool with_decisions) {
  std::string line = std::to_string(s.birth_generation);
  line += ' ';
  line += std::to_string(s.id);
  for (double v : s.objectives.values()) {
    line += ' ';
    append_double(line, v);
  }
  if (with_decisions) {
    for (double v : s.decision) {
      line += ' ';
      append_double(line, v);
    }
  }
  line += '\n';
  out << line;
}

Solution parse_solution_line(const std::string& line, std::size_t objectives, std::size_t decisions) {
  const auto tokens = split_ws(line);
  if (tokens.size() != 2 + objectives + decisions) {
    throw FormatError("solution line has " + std::to_string(tokens.size()) + " fields, expected " +
                      std::to_string(2 + objectives + decisions));
  }
  Solution s;
  s.birth_generation = parse_number<std::uint32_t>(tokens[0], "generation index");
  s.id = parse_number<SolutionId>(tokens[1], "solution id");
  std::vector<double> f(objectives);
  for (std::size_t i = 0; i < objectives; ++i) f[i] = parse_number<double>(tokens[2 + i], "objective");
  try {
    s.objectives = ObjectiveVector(std::move(f));
  } catch (const InputError& e) {
    throw FormatError(e.what());
  }
  s.decision.resize(decisions);
  for (std::size_t i = 0; i < decisions; ++i) {
    s.decision[i] = parse_number<double>(tokens[2 + objectives + i], "decision value");
  }
  return s;
}

std::string format_header(const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::string out;
  for (const auto& [k, v] : pairs) {
    if (!out.empty()) out += ' ';
    out += k + '=' + v;
  }
  return out;
}

std::map<std::string, std::string> parse_header(const std::string& line) {
  std::map<std::string, std::string> kv;
  for (std::string_view tok : split_ws(line)) {
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw FormatError("header token '" + std::string(tok) + "' is not key=value");
    }
    kv.emplace(std::string(tok.substr(0, eq)), std::string(tok.substr(eq + 1)));
  }
  return kv;
}

std::string format_sequence_header(const SequenceHeader& h) {
  return format_header({{"problem", family_name(h.problem.family())},
                        {"M", std::to_string(h.problem.objectives())},
                        {"n", std::to_string(h.problem.decision_dimension())},
                        {"N", std::to_string(h.population_size)},
                        {"g_max", std::to_string(h.generations)},
                        {"seed", std::to_string(h.seed)},
                        {"algorithm", h.algorithm},
                        {"rng", h.rng},
                        {"decisions", h.has_decisions ? "1" : "0"},
                        {"format-version", std::to_string(h.format_version)}});
}

SequenceHeader parse_sequence_header(const std::string& line) {
  const auto kv = parse_header(line);
  SequenceHeader h;
  try {
    const auto m = parse_number<std::size_t>(require(kv, "M"), "M");
    h.problem = ProblemSpec(parse_family(require(kv, "problem")), m);
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(e.what());
  }
  if (parse_number<std::size_t>(require(kv, "n"), "n") != h.problem.decision_dimension()) {
    throw FormatError("header n does not match the problem");
  }
  h.population_size = parse_number<std::size_t>(require(kv, "N"), "N");
  h.generations = parse_number<std::size_t>(require(kv, "g_max"), "g_max");
  h.seed = parse_number<std::uint64_t>(require(kv, "seed"), "seed");
  h.algorithm = require(kv, "algorithm");
  h.rng = kv.count("rng") ? kv.at("rng") : "";
  h.has_decisions = kv.count("decisions") && kv.at("decisions") == "1";
  h.format_version = parse_number<int>(require(kv, "format-version"), "format-version");
  if (h.format_version != kSequenceFormatVersion) {
    throw FormatError("unsupported format-version " + std::to_string(h.format_version));
  }
  return h;
}

void write_sequence_log(std::ostream& out, const SequenceLog& log) {
  out << format_sequence_header(log.header) << '\n';
  for (std::size_t g = 0; g < log.entries.size(); ++g) {
    for (const Solution& s : log.entries[g]) write_solution_line(out, s, log.header.has_decisions);
    if (g < log.population_ids.size()) write_population_line(out, g + 1, log.population_ids[g]);
  }
  out << kFinalSentinel << '\n';
  for (const Solution& s : log.final_population) write_solution_line(out, s, log.header.has_decisions);
}

void write_sequence_log(const std::filesystem::path& path, const SequenceLog& log) {
  std::ofstream out = open_for_write(path);
  write_sequence_log(out, log);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

SequenceLog read_sequence_log(std::istream& in) {
  SequenceLog log;
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty sequence log");
  log.header = parse_sequence_header(line);
  const std::size_t m = log.header.problem.objectives();
  const std::size_t n = log.header.has_decisions ? log.header.problem.decision_dimension() : 0;
  bool in_final = false;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    try {
      if (line.rfind(kFinalSentinel, 0) == 0) {
        if (in_final) throw FormatError("repeated FINAL sentinel");
        in_final = true;
        continue;
      }
      if (line.rfind(kPopulationTag, 0) == 0) {
        if (in_final) throw FormatError("population record after FINAL");
        const auto tokens = split_ws(line);
        if (tokens.size() < 2) throw FormatError("population record without generation");
        const auto g = parse_number<std::size_t>(tokens[1], "generation");
        if (g != log.population_ids.size() + 1) throw FormatError("population records out of order");
        std::vector<SolutionId> ids;
        ids.reserve(tokens.size() - 2);
        for (std::size_t i = 2; i < tokens.size(); ++i) ids.push_back(parse_number<SolutionId>(tokens[i], "id"));
        log.population_ids.push_back(std::move(ids));
        continue;
      }
      Solution s = parse_solution_line(line, m, n);
      if (in_final) {
        log.final_population.push_back(std::move(s));
        continue;
      }
      const std::size_t g = s.birth_generation;
      if (g == log.entries.size()) {
        log.entries.emplace_back();
      } else if (g + 1 != log.entries.size()) {
        throw FormatError("solution lines out of generation order");
      }
      log.entries.back().push_back(std::move(s));
    } catch (const FormatError& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!in_final) throw FormatError("sequence log lacks the FINAL section");
  log.validate();
  return log;
}

SequenceLog read_sequence_log(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  return read_sequence_log(in);
}

SequenceFileWriter::SequenceFileWriter(std::filesystem::path path)
    : path_(std::move(path)), partial_(path_.string() + ".partial") {}

SequenceFileWriter::~SequenceFileWriter() {
  if (!finished_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(partial_, ec);
  }
}

void SequenceFileWriter::begin(const SequenceHeader& header) {
  out_ = open_for_write(partial_);
  decisions_ = header.has_decisions;
  out_ << format_sequence_header(header) << '\n';
}

void SequenceFileWriter::entry(std::size_t entry_index, const SolutionSet& solutions,
                               const std::vector<SolutionId>& next_population) {
  for (const Solution& s : solutions) write_solution_line(out_, s, decisions_);
  write_population_line(out_, entry_index + 1, next_population);
  if (!out_) throw IoError("failed writing '" + partial_.string() + "'");
}

void SequenceFileWriter::finish(const SolutionSet& final_population) {
  out_ << kFinalSentinel << '\n';
  for (const Solution& s : final_population) write_solution_line(out_, s, decisions_);
  out_.close();
  if (!out_) throw IoError("failed writing '" + partial_.string() + "'");
  std::filesystem::rename(partial_, path_);
  finished_ = true;
}

void write_solution_dump(std::ostream& out, const std::string& kind, const SolutionSet& set,
                         const std::vector<std::pair<std::string, std::string>>& extra) {
  std::vector<std::pair<std::string, std::string>> pairs = {{"archive", kind},
                                                            {"M", std::to_string(common_dimension(set))},
                                                            {"count", std::to_string(set.size())}};
  pairs.insert(pairs.end(), extra.begin(), extra.end());
  out << format_header(pairs) << '\n';
  for (const Solution& s : set) write_solution_line(out, s, false);
}

void write_solution_dump(const std::filesystem::path& path, const std::string& kind, const SolutionSet& set,
                         const std::vector<std::pair<std::string, std::string>>& extra) {
  std::ofstream out = open_for_write(path);
  write_solution_dump(out, kind, set, extra);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

SolutionDump read_solution_dump(std::istream& in) {
  SolutionDump dump;
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty solution dump");
  dump.header = parse_header(line);
  require(dump.header, "archive");
  const auto m = parse_number<std::size_t>(require(dump.header, "M"), "M");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    try {
      dump.solutions.push_back(parse_solution_line(line, m, 0));
    } catch (const FormatError& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (auto it = dump.header.find("count"); it != dump.header.end()) {
    if (parse_number<std::size_t>(it->second, "count") != dump.solutions.size()) {
      throw FormatError("dump count does not match its solution lines");
    }
  }
  return dump;
}

SolutionDump read_solution_dump(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  return read_solution_dump(in);
}

}  // namespace emoa
