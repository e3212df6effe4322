#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "emoa/report_io.hpp"
#include "emoa/sequence_log.hpp"

namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "emoa");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = emoa::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("emoa_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_ / "logs");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void record(const std::string& name, int seed) {
    const auto r = cli({"run", "--problem", "dtlz2", "--m", "3", "--n-pop", "20", "--gens", "50", "--seed",
                        std::to_string(seed), "--out", path(name)});
    ASSERT_EQ(r.code, 0) << r.err;
  }

  fs::path dir_;
};

TEST_F(Cli, RunWritesValidLog) {
  record("seq.log", 1);
  const auto log = emoa::read_sequence_log(fs::path(path("seq.log")));
  EXPECT_EQ(log.entries.size(), 50U);
  EXPECT_EQ(log.header.population_size, 20U);
}

TEST_F(Cli, ReplayWritesOneRow) {
  record("seq.log", 1);
  const auto r = cli({"replay", "--seq", path("seq.log"), "--strategy", "lazy-periodical", "--s", "500", "--t", "5",
                      "--out", path("report.csv"), "--archive-out", path("archive.dump")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto reports = emoa::read_reports_csv(fs::path(path("report.csv")));
  ASSERT_EQ(reports.size(), 1U);
  EXPECT_EQ(reports[0].strategy.capacity, 500U);
  EXPECT_EQ(reports[0].strategy.interval, 5U);

  const auto sel = cli({"select", "--archive", path("archive.dump"), "--k", "5", "--out", path("sel.dump")});
  ASSERT_EQ(sel.code, 0) << sel.err;
  EXPECT_EQ(emoa::read_solution_dump(fs::path(path("sel.dump"))).solutions.size(), 5U);
  const auto dss = cli({"select", "--archive", path("archive.dump"), "--k", "3", "--method", "dss", "--normalize",
                        "true", "--problem", "dtlz2"});
  EXPECT_EQ(dss.code, 0) << dss.err;
}

TEST_F(Cli, ReplayToStdout) {
  record("seq.log", 2);
  const auto r = cli({"replay", "--seq", path("seq.log"), "--strategy", "standard", "--s", "2N"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out), 2U);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), emoa::report_csv_header());
}

TEST_F(Cli, SweepRowCount) {
  record("logs/a.log", 1);
  record("logs/b.log", 2);
  const auto r = cli({"sweep", "--seq-dir", path("logs"), "--sizes", "N,10N,50N", "--strategies", "all", "--out",
                      path("sweep.csv"), "--aggregate-out", path("agg.csv"), "--plots-dir", path("plots")});
  ASSERT_EQ(r.code, 0) << r.err;
  // Standard, five lazy-periodical intervals and last-x per size.
  EXPECT_EQ(emoa::read_reports_csv(fs::path(path("sweep.csv"))).size(), 2U * 3U * 7U);
  EXPECT_NE(r.err.find("[42/42]"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("agg.csv")));
  EXPECT_FALSE(fs::is_empty(path("plots")));

  const auto rep = cli({"report", "--in", path("sweep.csv"), "--out", path("agg2.csv")});
  ASSERT_EQ(rep.code, 0) << rep.err;
  std::ifstream a(path("agg.csv"));
  std::ifstream b(path("agg2.csv"));
  std::stringstream sa;
  std::stringstream sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(lines(sa.str()), lines(sb.str()));
}

TEST_F(Cli, HelpListsFlagsWithDefaults) {
  for (const std::string sub : {"run", "replay", "sweep", "select", "report"}) {
    const auto r = cli({sub, "--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("--config"), std::string::npos) << sub;
  }
  const auto replay = cli({"replay", "--help"});
  EXPECT_NE(replay.out.find("--budget-seconds"), std::string::npos);
  EXPECT_NE(replay.out.find("3600"), std::string::npos);
  EXPECT_NE(replay.out.find("1.2"), std::string::npos);
  const auto sweep = cli({"sweep", "--help"});
  EXPECT_NE(sweep.out.find("--threads"), std::string::npos);
  EXPECT_NE(sweep.out.find("1,2,5,10,20"), std::string::npos);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  record("seq.log", 1);
  EXPECT_EQ(cli({"replay", "--seq", path("missing.log")}).code, 2);
  EXPECT_EQ(cli({"replay", "--seq", path("seq.log"), "--bogus", "1"}).code, 2);
  EXPECT_EQ(cli({"replay", "--seq", path("seq.log"), "--s", "10Q"}).code, 2);
  EXPECT_EQ(cli({"replay", "--seq", path("seq.log"), "--strategy", "nope"}).code, 2);
  EXPECT_EQ(cli({"replay", "--seq", path("seq.log"), "--out", path("no/dir/r.csv")}).code, 2);
  EXPECT_EQ(cli({"run", "--problem", "dtlz2"}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_FALSE(fs::exists(path("no")));
}

TEST_F(Cli, RuntimeFailureExitsOne) {
  std::ofstream(path("broken.log")) << "not a log\n";
  const auto r = cli({"replay", "--seq", path("broken.log")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST_F(Cli, ConfigFileSuppliesFlagsAndFlagsWin) {
  record("seq.log", 3);
  std::ofstream(path("replay.cfg")) << "# replay settings\nstrategy=lazy-periodical\ns=3N\nt=4\nout=" << path("cfg.csv")
                                    << "\n";
  auto r = cli({"replay", "--config", path("replay.cfg"), "--seq", path("seq.log")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto reports = emoa::read_reports_csv(fs::path(path("cfg.csv")));
  ASSERT_EQ(reports.size(), 1U);
  EXPECT_EQ(reports[0].strategy.capacity, 60U);
  EXPECT_EQ(reports[0].strategy.interval, 4U);

  r = cli({"replay", "--config", path("replay.cfg"), "--seq", path("seq.log"), "--t", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  reports = emoa::read_reports_csv(fs::path(path("cfg.csv")));
  EXPECT_EQ(reports[0].strategy.interval, 2U);
}

TEST_F(Cli, MalformedConfigExitsTwo) {
  record("seq.log", 3);
  std::ofstream(path("bad.cfg")) << "no_such_flag=3\n";
  EXPECT_EQ(cli({"replay", "--config", path("bad.cfg"), "--seq", path("seq.log")}).code, 2);
  EXPECT_EQ(cli({"replay", "--config", path("absent.cfg"), "--seq", path("seq.log")}).code, 2);
}

TEST_F(Cli, InputsAreNotModified) {
  record("seq.log", 4);
  const auto before = fs::last_write_time(path("seq.log"));
  const auto size = fs::file_size(path("seq.log"));
  ASSERT_EQ(cli({"replay", "--seq", path("seq.log"), "--out", path("r.csv")}).code, 0);
  EXPECT_EQ(fs::last_write_time(path("seq.log")), before);
  EXPECT_EQ(fs::file_size(path("seq.log")), size);
}

}  // namespace
