// Generates the true ideal/nadir table for the Minus-DTLZ families.
//
// Points are sampled on the front: distance variables sit at the maximizer of
// the distance term and position variables are stratified over [0,1]^(M-1),
// including every corner of the cube.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emoa/problems.hpp"
#include "emoa/rng.hpp"

namespace {

using emoa::ProblemFamily;

emoa::FrameFixtureRow frame_row(ProblemFamily family, std::size_t m, std::size_t samples, std::uint64_t seed) {
  const emoa::ProblemSpec spec(family, m);
  const std::size_t n = spec.decision_dimension();
  const std::size_t p = m - 1;
  const double argmax = emoa::maximize_distance_term(spec.base_family()).argmax;
  emoa::Rng rng(seed);

  std::vector<double> x(n, argmax);
  std::vector<std::vector<double>> points;
  points.reserve(samples + (std::size_t{1} << p));
  for (std::uint64_t corner = 0; corner < (std::uint64_t{1} << p); ++corner) {
    for (std::size_t j = 0; j < p; ++j) x[j] = (corner >> j) & 1U ? 1.0 : 0.0;
    auto f = emoa::evaluate(spec, x);
    points.emplace_back(f.values().begin(), f.values().end());
  }
  // Stratify the first position variable, draw the rest uniformly.
  for (std::size_t s = 0; s < samples; ++s) {
    x[0] = (static_cast<double>(s) + rng.uniform()) / static_cast<double>(samples);
    for (std::size_t j = 1; j < p; ++j) x[j] = rng.uniform();
    auto f = emoa::evaluate(spec, x);
    points.emplace_back(f.values().begin(), f.values().end());
  }

  // Every sampled point lies on the front, so the extremes over the samples
  // bound the front.
  emoa::FrameFixtureRow row{family, m, points[0], points[0]};
  for (const auto& q : points) {
    for (std::size_t k = 0; k < m; ++k) {
      row.ideal[k] = std::min(row.ideal[k], q[k]);
      row.nadir[k] = std::max(row.nadir[k], q[k]);
    }
  }
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the Minus-DTLZ true-frame fixture"};
  std::size_t samples = 1'000'000;
  std::size_t min_m = 2;
  std::size_t max_m = 10;
  std::uint64_t seed = 20240101;
  std::string out_path;
  app.add_option("--samples", samples, "Stratified samples per (family, M)")->capture_default_str();
  app.add_option("--min-m", min_m, "Smallest objective count")->capture_default_str();
  app.add_option("--max-m", max_m, "Largest objective count")->capture_default_str();
  app.add_option("--seed", seed, "Sampling seed")->capture_default_str();
  app.add_option("--out", out_path, "Output file (stdout if omitted)");
  CLI11_PARSE(app, argc, argv);

  std::vector<emoa::FrameFixtureRow> rows;
  for (ProblemFamily f : {ProblemFamily::MinusDTLZ1, ProblemFamily::MinusDTLZ2, ProblemFamily::MinusDTLZ3,
                          ProblemFamily::MinusDTLZ4}) {
    for (std::size_t m = min_m; m <= max_m; ++m) {
      rows.push_back(frame_row(f, m, samples, seed + m));
      std::cerr << emoa::family_name(f) << " M=" << m << " done\n";
    }
  }
  const std::string text = "# family M ideal_1..ideal_M nadir_1..nadir_M\n" + emoa::format_frame_fixture(rows);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return 1;
    }
  }
  return 0;
}
