#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "emoa/problems.hpp"
#include "emoa/types.hpp"

namespace emoa {

inline constexpr int kSequenceFormatVersion = 1;

struct SequenceHeader {
  ProblemSpec problem{ProblemFamily::DTLZ2, 3};
  std::size_t population_size = 0;
  std::size_t generations = 0;
  std::uint64_t seed = 0;
  std::string algorithm;
  std::string rng;
  bool has_decisions = false;
  int format_version = kSequenceFormatVersion;
};

/// Everything the optimizer produced, generation by generation.
///
/// entries[0] is the initial population P_1 and entries[g] (1 <= g < g_max)
/// is the offspring O_g. population_ids[g - 1] lists the members of P_g for
/// g = 1..g_max so that strategies that start from a later population can be
/// replayed; final_population is P_{g_max}.
struct SequenceLog {
  SequenceHeader header;
  std::vector<SolutionSet> entries;
  std::vector<std::vector<SolutionId>> population_ids;
  SolutionSet final_population;

  [[nodiscard]] std::size_t total_solutions() const noexcept;

  /// Members of P_g (1-based), rebuilt from the recorded ids.
  [[nodiscard]] SolutionSet population(std::size_t generation) const;

  /// Checks the structural invariants; throws FormatError.
  void validate() const;
};

/// Writes one solution as "<generation-index> <id> f_1 .. f_M [x_1 .. x_n]".
void write_solution_line(std::ostream& out, const Solution& s, bool with_decisions);

/// Parses a solution line; `with_decisions` selects whether trailing values
/// after the M objectives are read as a decision vector of length n.
Solution parse_solution_line(const std::string& line, std::size_t objectives, std::size_t decisions);

/// Lower-level header rendering: "key=value" pairs separated by spaces.
std::string format_header(const std::vector<std::pair<std::string, std::string>>& pairs);
std::map<std::string, std::string> parse_header(const std::string& line);

std::string format_sequence_header(const SequenceHeader& header);
SequenceHeader parse_sequence_header(const std::string& line);

void write_sequence_log(std::ostream& out, const SequenceLog& log);
void write_sequence_log(const std::filesystem::path& path, const SequenceLog& log);
SequenceLog read_sequence_log(std::istream& in);
SequenceLog read_sequence_log(const std::filesystem::path& path);

/// Receives a run as it progresses; the file writer below appends to disk.
class SequenceSink {
 public:
  virtual ~SequenceSink() = default;
  virtual void begin(const SequenceHeader& header) = 0;
  /// entry_index 0 is P_1; otherwise O_g. `next_population` lists P_{entry+1}.
  virtual void entry(std::size_t entry_index, const SolutionSet& solutions,
                     const std::vector<SolutionId>& next_population) = 0;
  virtual void finish(const SolutionSet& final_population) = 0;
};

/// Appends to `<path>.partial` and renames to `path` on finish(); a writer
/// destroyed before finish() removes the partial file.
class SequenceFileWriter final : public SequenceSink {
 public:
  explicit SequenceFileWriter(std::filesystem::path path);
  ~SequenceFileWriter() override;
  SequenceFileWriter(const SequenceFileWriter&) = delete;
  SequenceFileWriter& operator=(const SequenceFileWriter&) = delete;

  void begin(const SequenceHeader& header) override;
  void entry(std::size_t entry_index, const SolutionSet& solutions,
             const std::vector<SolutionId>& next_population) override;
  void finish(const SolutionSet& final_population) override;

 private:
  std::filesystem::path path_;
  std::filesystem::path partial_;
  std::ofstream out_;
  bool decisions_ = false;
  bool finished_ = false;
};

/// Archive dumps share the solution line format. The header carries
/// archive=<kind> plus any extra pairs.
void write_solution_dump(std::ostream& out, const std::string& kind, const SolutionSet& set,
                         const std::vector<std::pair<std::string, std::string>>& extra = {});
void write_solution_dump(const std::filesystem::path& path, const std::string& kind, const SolutionSet& set,
                         const std::vector<std::pair<std::string, std::string>>& extra = {});

struct SolutionDump {
  std::map<std::string, std::string> header;
  SolutionSet solutions;
};
SolutionDump read_solution_dump(std::istream& in);
SolutionDump read_solution_dump(const std::filesystem::path& path);

}  // namespace emoa
