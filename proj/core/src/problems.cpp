#include "emoa/problems.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "emoa/error.hpp"

namespace emoa {

namespace {

constexpr std::array<ProblemFamily, 8> kFamilies = {
    ProblemFamily::DTLZ1,      ProblemFamily::DTLZ2,      ProblemFamily::DTLZ3,      ProblemFamily::DTLZ4,
    ProblemFamily::MinusDTLZ1, ProblemFamily::MinusDTLZ2, ProblemFamily::MinusDTLZ3, ProblemFamily::MinusDTLZ4};

bool uses_rastrigin_distance(ProblemFamily base) {
  return base == ProblemFamily::DTLZ1 || base == ProblemFamily::DTLZ3;
}

double distance_term(ProblemFamily base, double x) {
  const double d = x - 0.5;
  if (uses_rastrigin_distance(base)) return d * d - std::cos(20.0 * std::numbers::pi * d);
  return d * d;
}

double distance_function(ProblemFamily base, std::span<const double> distance_vars) {
  double sum = 0.0;
  for (double x : distance_vars) sum += distance_term(base, x);
  if (uses_rastrigin_distance(base)) {
    return 100.0 * (static_cast<double>(distance_vars.size()) + sum);
  }
  return sum;
}

// Linear front sum(f) = 0.5 (1 + g).
void linear_shape(std::span<const double> pos, double g, std::span<double> f) {
  const std::size_t m = f.size();
  for (std::size_t i = 0; i < m; ++i) {
    double v = 0.5 * (1.0 + g);
    for (std::size_t j = 0; j + i + 1 < m; ++j) v *= pos[j];
    if (i > 0) v *= 1.0 - pos[m - 1 - i];
    f[i] = v;
  }
}

// Spherical front ||f|| = 1 + g.
void spherical_shape(std::span<const double> pos, double g, double alpha, std::span<double> f) {
  const std::size_t m = f.size();
  const double half_pi = 0.5 * std::numbers::pi;
  for (std::size_t i = 0; i < m; ++i) {
    double v = 1.0 + g;
    for (std::size_t j = 0; j + i + 1 < m; ++j) v *= std::cos(std::pow(pos[j], alpha) * half_pi);
    if (i > 0) v *= std::sin(std::pow(pos[m - 1 - i], alpha) * half_pi);
    f[i] = v;
  }
}

std::size_t tabulated_objectives(std::size_t m) {
  if (m <= 3) return 3;
  if (m <= 6) return 5;
  return 8;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

double parse_double(std::string_view token) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw FormatError("not a number: '" + std::string(token) + "'");
  }
  return value;
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

ProblemSpec::ProblemSpec(ProblemFamily family, std::size_t objectives) : family_(family), objectives_(objectives) {
  if (objectives < 2) throw InputError("a DTLZ problem needs at least 2 objectives");
}

std::size_t ProblemSpec::distance_variables() const noexcept {
  return base_family() == ProblemFamily::DTLZ1 ? 5 : 10;
}

bool ProblemSpec::is_minus() const noexcept { return base_family() != family_; }

ProblemFamily ProblemSpec::base_family() const noexcept {
  switch (family_) {
    case ProblemFamily::MinusDTLZ1: return ProblemFamily::DTLZ1;
    case ProblemFamily::MinusDTLZ2: return ProblemFamily::DTLZ2;
    case ProblemFamily::MinusDTLZ3: return ProblemFamily::DTLZ3;
    case ProblemFamily::MinusDTLZ4: return ProblemFamily::DTLZ4;
    default: return family_;
  }
}

std::string family_name(ProblemFamily family) {
  switch (family) {
    case ProblemFamily::DTLZ1: return "dtlz1";
    case ProblemFamily::DTLZ2: return "dtlz2";
    case ProblemFamily::DTLZ3: return "dtlz3";
    case ProblemFamily::DTLZ4: return "dtlz4";
    case ProblemFamily::MinusDTLZ1: return "minus-dtlz1";
    case ProblemFamily::MinusDTLZ2: return "minus-dtlz2";
    case ProblemFamily::MinusDTLZ3: return "minus-dtlz3";
    case ProblemFamily::MinusDTLZ4: return "minus-dtlz4";
  }
  return "unknown";
}

ProblemFamily parse_family(std::string_view name) {
  std::string key = lower(name);
  if (key.rfind("minusdtlz", 0) == 0) key = "minus-" + key.substr(5);
  if (key.rfind("mdtlz", 0) == 0) key = "minus-" + key.substr(1);
  for (ProblemFamily f : kFamilies) {
    if (family_name(f) == key) return f;
  }
  throw LookupError("unknown problem '" + std::string(name) + "'");
}

ObjectiveVector evaluate(const ProblemSpec& spec, std::span<const double> x) {
  const std::size_t n = spec.decision_dimension();
  const std::size_t m = spec.objectives();
  if (x.size() != n) {
    throw InputError(family_name(spec.family()) + " expects " + std::to_string(n) + " decision variables, got " +
                     std::to_string(x.size()));
  }
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) throw InputError("decision variable outside [0,1]");
  }
  const ProblemFamily base = spec.base_family();
  std::span<const double> pos = x.first(m - 1);
  const double g = distance_function(base, x.subspan(m - 1));
  std::vector<double> f(m);
  switch (base) {
    case ProblemFamily::DTLZ1: linear_shape(pos, g, f); break;
    case ProblemFamily::DTLZ2:
    case ProblemFamily::DTLZ3: spherical_shape(pos, g, 1.0, f); break;
    case ProblemFamily::DTLZ4: spherical_shape(pos, g, kDtlz4Alpha, f); break;
    default: break;
  }
  if (spec.is_minus()) {
    for (double& v : f) v = -v;
  }
  return ObjectiveVector(std::move(f));
}

NormalizationFrame true_frame(const ProblemSpec& spec) {
  const std::size_t m = spec.objectives();
  if (!spec.is_minus()) {
    const double nadir = spec.family() == ProblemFamily::DTLZ1 ? 0.5 : 1.0;
    return NormalizationFrame{ObjectiveVector(std::vector<double>(m, 0.0)),
                              ObjectiveVector(std::vector<double>(m, nadir)), FrameSource::TrueFront};
  }
  static const std::vector<FrameFixtureRow> rows = parse_frame_fixture(builtin_frame_fixture());
  for (const FrameFixtureRow& row : rows) {
    if (row.family == spec.family() && row.objectives == m) {
      return NormalizationFrame{ObjectiveVector(row.ideal), ObjectiveVector(row.nadir), FrameSource::TrueFront};
    }
  }
  throw LookupError("no true-frame fixture for " + family_name(spec.family()) + " with M=" + std::to_string(m));
}

Solution random_solution(const ProblemSpec& spec, Rng& rng) {
  std::vector<double> x(spec.decision_dimension());
  for (double& v : x) v = rng.uniform();
  Solution s;
  s.objectives = evaluate(spec, x);
  s.decision = std::move(x);
  return s;
}

std::size_t default_generations(const ProblemSpec& spec) {
  const std::size_t col = spec.objectives() <= 3 ? 0 : (tabulated_objectives(spec.objectives()) == 5 ? 1 : 2);
  static constexpr std::array<std::array<std::size_t, 3>, 4> table = {{
      {400, 600, 750},
      {250, 350, 500},
      {1000, 1000, 1000},
      {600, 1000, 1250},
  }};
  switch (spec.base_family()) {
    case ProblemFamily::DTLZ1: return table[0][col];
    case ProblemFamily::DTLZ2: return table[1][col];
    case ProblemFamily::DTLZ3: return table[2][col];
    default: return table[3][col];
  }
}

std::size_t default_population_size(std::size_t objectives) {
  switch (tabulated_objectives(objectives)) {
    case 3: return 91;
    case 5: return 210;
    default: return 156;
  }
}

std::vector<FrameFixtureRow> parse_frame_fixture(std::string_view text) {
  std::vector<FrameFixtureRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    try {
      if (tokens.size() < 2) throw FormatError("missing M");
      FrameFixtureRow row{parse_family(tokens[0]), 0, {}, {}};
      const double m = parse_double(tokens[1]);
      row.objectives = static_cast<std::size_t>(m);
      if (m < 2 || static_cast<double>(row.objectives) != m) throw FormatError("bad M");
      if (tokens.size() != 2 + 2 * row.objectives) throw FormatError("expected 2M coordinates");
      for (std::size_t i = 0; i < row.objectives; ++i) {
        row.ideal.push_back(parse_double(tokens[2 + i]));
        row.nadir.push_back(parse_double(tokens[2 + row.objectives + i]));
      }
      rows.push_back(std::move(row));
    } catch (const Error& e) {
      throw FormatError("frame fixture line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

std::string format_frame_fixture(const std::vector<FrameFixtureRow>& rows) {
  std::string out;
  for (const FrameFixtureRow& row : rows) {
    out += family_name(row.family) + ' ' + std::to_string(row.objectives);
    for (double v : row.ideal) out += ' ' + format_double(v);
    for (double v : row.nadir) out += ' ' + format_double(v);
    out += '\n';
  }
  return out;
}

DistanceTermMaximum maximize_distance_term(ProblemFamily base_family) {
  // Grid search, then golden-section refinement inside the best grid cell.
  constexpr int kGrid = 200000;
  int best = 0;
  double best_value = distance_term(base_family, 0.0);
  for (int i = 1; i <= kGrid; ++i) {
    const double v = distance_term(base_family, static_cast<double>(i) / kGrid);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  double lo = std::max(0.0, static_cast<double>(best - 1) / kGrid);
  double hi = std::min(1.0, static_cast<double>(best + 1) / kGrid);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double a = hi - ratio * (hi - lo);
    const double b = lo + ratio * (hi - lo);
    if (distance_term(base_family, a) >= distance_term(base_family, b)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  double argmax = 0.5 * (lo + hi);
  double value = distance_term(base_family, argmax);
  // Endpoints can win (the sphere term peaks at x = 0).
  for (double edge : {0.0, 1.0}) {
    const double v = distance_term(base_family, edge);
    if (v > value) {
      value = v;
      argmax = edge;
    }
  }
  return {argmax, value};
}

}  // namespace emoa
