#include "emoa/hypervolume.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <numeric>
#include <string>

#include "emoa/error.hpp"
#include "emoa/rng.hpp"

namespace emoa {

ReferencePoint ReferencePoint::uniform(std::size_t m, double value) {
  return ReferencePoint{ObjectiveVector(std::vector<double>(m, value))};
}

namespace {

bool weakly_dominates(const double* a, const double* b, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

double box_volume(const double* p, const double* ref, std::size_t m) {
  double v = 1.0;
  for (std::size_t i = 0; i < m; ++i) v *= ref[i] - p[i];
  return v;
}

double sweep_2d(std::span<const double> pts, std::span<const double> ref) {
  const std::size_t n = pts.size() / 2;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pts[2 * a] < pts[2 * b] || (pts[2 * a] == pts[2 * b] && pts[2 * a + 1] < pts[2 * b + 1]);
  });
  double area = 0.0;
  double floor = ref[1];
  for (std::size_t i : order) {
    const double y = pts[2 * i + 1];
    if (y < floor) {
      area += (ref[0] - pts[2 * i]) * (floor - y);
      floor = y;
    }
  }
  return area;
}

// Sweep along the third objective while maintaining the dominated area of the
// (f1, f2) staircase; O(n log n).
double sweep_3d(std::span<const double> pts, std::span<const double> ref) {
  const std::size_t n = pts.size() / 3;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pts[3 * a + 2] < pts[3 * b + 2]; });

  std::map<double, double> stairs;  // f1 ascending, f2 strictly descending
  double area = 0.0;
  double volume = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const double* p = pts.data() + 3 * order[r];
    auto after = stairs.upper_bound(p[0]);
    bool covered = false;
    if (after != stairs.begin()) covered = std::prev(after)->second <= p[1];
    if (!covered) {
      auto first = stairs.lower_bound(p[0]);
      const double upper = first == stairs.begin() ? ref[1] : std::prev(first)->second;
      auto last = first;
      while (last != stairs.end() && last->second >= p[1]) ++last;
      const double right = last == stairs.end() ? ref[0] : last->first;
      double removed = 0.0;
      for (auto it = first; it != last; ++it) {
        const double next_x = std::next(it) == last ? right : std::next(it)->first;
        removed += (next_x - it->first) * (upper - it->second);
      }
      area += (right - p[0]) * (upper - p[1]) - removed;
      stairs.erase(first, last);
      stairs.emplace(p[0], p[1]);
    }
    const double next_z = r + 1 < n ? pts[3 * order[r + 1] + 2] : ref[2];
    volume += area * (next_z - p[2]);
  }
  return volume;
}

std::vector<double> filter_front(std::vector<double> pts, std::size_t m) {
  const std::size_t n = pts.size() / m;
  std::vector<bool> dead(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (dead[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || dead[j]) continue;
      if (weakly_dominates(&pts[i * m], &pts[j * m], m)) dead[j] = true;
    }
  }
  std::vector<double> out;
  out.reserve(pts.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!dead[i]) out.insert(out.end(), pts.begin() + static_cast<std::ptrdiff_t>(i * m),
                             pts.begin() + static_cast<std::ptrdiff_t>((i + 1) * m));
  }
  return out;
}

double sliced(std::span<const double> pts, std::size_t m, std::span<const double> ref) {
  const std::size_t n = pts.size() / m;
  const std::size_t last = m - 1;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Descending in the last objective: every later point's limit against the
  // current one shares its last coordinate, so the exclusive part factors
  // into a slice height times an (m-1)-dimensional exclusive volume.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pts[a * m + last] > pts[b * m + last];
  });
  std::span<const double> ref_low = ref.first(last);
  double total = 0.0;
  std::vector<double> limit;
  for (std::size_t r = 0; r < n; ++r) {
    const double* p = pts.data() + order[r] * m;
    limit.clear();
    bool covered = false;
    for (std::size_t q = r + 1; q < n && !covered; ++q) {
      const double* o = pts.data() + order[q] * m;
      if (weakly_dominates(o, p, last)) covered = true;
      for (std::size_t k = 0; k < last; ++k) limit.push_back(std::max(p[k], o[k]));
    }
    if (covered) continue;
    const double slice = ref[last] - p[last];
    const double own = box_volume(p, ref.data(), last);
    const double shadowed = limit.empty() ? 0.0 : exact_hypervolume(filter_front(limit, last), last, ref_low);
    total += slice * std::max(0.0, own - shadowed);
  }
  return total;
}

void check_reference(std::size_t m, const ReferencePoint& ref) {
  if (ref.coords.size() != m) {
    throw DimensionError("reference point has " + std::to_string(ref.coords.size()) + " coordinates, set has " +
                         std::to_string(m));
  }
}

double monte_carlo(std::span<const double> pts, std::size_t m, std::span<const double> ref,
                   const MonteCarloHypervolume& mc) {
  const std::size_t n = pts.size() / m;
  if (n == 0 || mc.samples == 0) return 0.0;
  std::vector<double> lo(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(m));
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t k = 0; k < m; ++k) lo[k] = std::min(lo[k], pts[i * m + k]);
  }
  const double box = box_volume(lo.data(), ref.data(), m);
  Rng rng(mc.seed);
  std::vector<double> sample(m);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < mc.samples; ++s) {
    for (std::size_t k = 0; k < m; ++k) sample[k] = lo[k] + rng.uniform() * (ref[k] - lo[k]);
    for (std::size_t i = 0; i < n; ++i) {
      if (weakly_dominates(&pts[i * m], sample.data(), m)) {
        ++hits;
        break;
      }
    }
  }
  return box * static_cast<double>(hits) / static_cast<double>(mc.samples);
}

}  // namespace

double exact_hypervolume(std::span<const double> points, std::size_t m, std::span<const double> ref) {
  if (points.empty()) return 0.0;
  switch (m) {
    case 1: {
      double best = points[0];
      for (double v : points) best = std::min(best, v);
      return ref[0] - best;
    }
    case 2: return sweep_2d(points, ref);
    case 3: return sweep_3d(points, ref);
    default: return sliced(points, m, ref);
  }
}

double exclusive_hypervolume(std::span<const double> point, std::span<const double> others, std::size_t m,
                             std::span<const double> ref) {
  const std::size_t n = others.size() / m;
  std::vector<double> limit;
  limit.reserve(others.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double* o = others.data() + i * m;
    if (weakly_dominates(o, point.data(), m)) return 0.0;
    for (std::size_t k = 0; k < m; ++k) limit.push_back(std::max(point[k], o[k]));
  }
  const double own = box_volume(point.data(), ref.data(), m);
  if (limit.empty()) return own;
  return std::max(0.0, own - exact_hypervolume(m > 3 ? filter_front(std::move(limit), m) : limit, m, ref));
}

HypervolumeResult hypervolume_detail(const SolutionSet& set, const ReferencePoint& ref, const HypervolumeMode& mode) {
  const std::size_t m = common_dimension(set);
  HypervolumeResult result;
  if (set.empty()) return result;
  check_reference(m, ref);
  std::vector<double> pts;
  pts.reserve(set.size() * m);
  for (const Solution& s : set) {
    bool inside = true;
    for (std::size_t k = 0; k < m; ++k) inside = inside && s.objectives[k] < ref.coords[k];
    if (!inside) {
      ++result.excluded;
      continue;
    }
    pts.insert(pts.end(), s.objectives.values().begin(), s.objectives.values().end());
  }
  if (const auto* mc = std::get_if<MonteCarloHypervolume>(&mode)) {
    result.value = monte_carlo(pts, m, ref.coords.values(), *mc);
  } else {
    result.value = exact_hypervolume(pts, m, ref.coords.values());
  }
  return result;
}

double hypervolume(const SolutionSet& set, const ReferencePoint& ref, const HypervolumeMode& mode) {
  return hypervolume_detail(set, ref, mode).value;
}

double hv_contribution(const SolutionSet& set, const Solution& member, const ReferencePoint& ref) {
  const std::size_t m = common_dimension(set);
  auto it = std::find_if(set.begin(), set.end(), [&](const Solution& s) { return s.id == member.id; });
  if (it == set.end()) throw InputError("member " + std::to_string(member.id) + " is not in the set");
  check_reference(m, ref);
  auto inside = [&](const Solution& s) {
    for (std::size_t k = 0; k < m; ++k) {
      if (!(s.objectives[k] < ref.coords[k])) return false;
    }
    return true;
  };
  if (!inside(*it)) return 0.0;
  std::vector<double> others;
  for (auto o = set.begin(); o != set.end(); ++o) {
    if (o == it || !inside(*o)) continue;
    others.insert(others.end(), o->objectives.values().begin(), o->objectives.values().end());
  }
  return exclusive_hypervolume(it->objectives.values(), others, m, ref.coords.values());
}

}  // namespace emoa
