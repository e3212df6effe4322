#include "emoa/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <utility>

#include "emoa/error.hpp"
#include "emoa/normalization.hpp"

namespace emoa {

std::string truncation_name(TruncationKind kind) {
  return kind == TruncationKind::DistanceGreedyInclusion ? "dss" : "crowding";
}

TruncationKind parse_truncation(std::string_view name) {
  if (name == "dss" || name == "distance") return TruncationKind::DistanceGreedyInclusion;
  if (name == "crowding") return TruncationKind::CrowdingRemoval;
  throw LookupError("unknown truncation operator '" + std::string(name) + "'");
}

std::vector<std::size_t> dss_select_indices(const SolutionSet& set, std::size_t count, const Deadline* deadline) {
  const std::size_t n = set.size();
  if (count == 0) throw InputError("subset size must be at least 1");
  if (count > n) throw InputError("subset size exceeds the candidate count");
  const std::size_t m = common_dimension(set);
  const std::vector<double> x = normalized_matrix(set, estimate_frame(set));

  std::size_t seed = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const double a = set[i].objectives[0];
    const double b = set[seed].objectives[0];
    if (a > b || (a == b && set[i].id < set[seed].id)) seed = i;
  }

  std::vector<std::size_t> chosen;
  chosen.reserve(count);
  chosen.push_back(seed);

  // Remaining candidates, compacted by swap-removal.
  std::vector<std::size_t> open;
  open.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i != seed) open.push_back(i);
  }
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());

  std::size_t last = seed;
  while (chosen.size() < count) {
    check_deadline(deadline);
    const double* p = x.data() + last * m;
    std::size_t best_pos = 0;
    double best = -1.0;
    for (std::size_t pos = 0; pos < open.size(); ++pos) {
      const std::size_t i = open[pos];
      const double* q = x.data() + i * m;
      double d2 = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double diff = q[k] - p[k];
        d2 += diff * diff;
      }
      double& near = nearest[i];
      if (d2 < near) near = d2;
      if (near > best || (near == best && set[i].id < set[open[best_pos]].id)) {
        best = near;
        best_pos = pos;
      }
    }
    last = open[best_pos];
    chosen.push_back(last);
    open[best_pos] = open.back();
    open.pop_back();
  }
  return chosen;
}

SolutionSet truncate_dss(const SolutionSet& set, std::size_t s, const Deadline* deadline) {
  if (s == 0) throw InputError("archive size must be at least 1");
  if (set.size() <= s) return set;
  SolutionSet out;
  out.reserve(s);
  for (std::size_t i : dss_select_indices(set, s, deadline)) out.push_back(set[i]);
  return out;
}

namespace {

// Crowding distances kept current under single removals: each objective's
// sort order is a doubly linked list, so removing a member only changes the
// distances of its neighbours. Objective ranges stay fixed as long as no
// extreme member is removed; if one is, everything is rebuilt.
class CrowdingTracker {
 public:
  CrowdingTracker(const SolutionSet& set, std::vector<std::size_t> members)
      : set_(set), m_(common_dimension(set)), alive_(set.size(), false) {
    for (std::size_t i : members) alive_[i] = true;
    rebuild();
  }

  [[nodiscard]] std::size_t size() const { return queue_.size(); }

  void remove_most_crowded() {
    const auto victim = queue_.begin()->second.second;
    const bool extreme = std::isinf(queue_.begin()->first);
    queue_.erase(queue_.begin());
    alive_[victim] = false;
    if (extreme) {
      rebuild();
      return;
    }
    std::vector<std::size_t> touched;
    for (std::size_t obj = 0; obj < m_; ++obj) {
      const std::size_t a = prev_[obj][victim];
      const std::size_t b = next_[obj][victim];
      if (a != kNone) next_[obj][a] = b;
      if (b != kNone) prev_[obj][b] = a;
      if (a != kNone) touched.push_back(a);
      if (b != kNone) touched.push_back(b);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::size_t i : touched) {
      queue_.erase(key(i));
      distance_[i] = compute(i);
      queue_.insert(key(i));
    }
  }

  [[nodiscard]] std::vector<std::size_t> survivors() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < alive_.size(); ++i) {
      if (alive_[i]) out.push_back(i);
    }
    return out;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  using Key = std::pair<double, std::pair<std::uint64_t, std::size_t>>;

  // Ordered by distance ascending, then larger id first.
  Key key(std::size_t i) const {
    return {distance_[i], {std::numeric_limits<std::uint64_t>::max() - set_[i].id, i}};
  }

  double compute(std::size_t i) const {
    double d = 0.0;
    for (std::size_t obj = 0; obj < m_; ++obj) {
      const std::size_t a = prev_[obj][i];
      const std::size_t b = next_[obj][i];
      if (a == kNone || b == kNone) return std::numeric_limits<double>::infinity();
      if (!(range_[obj] > 0.0)) continue;
      d += (set_[b].objectives[obj] - set_[a].objectives[obj]) / range_[obj];
    }
    return d;
  }

  void rebuild() {
    const std::vector<std::size_t> members = survivors();
    prev_.assign(m_, std::vector<std::size_t>(set_.size(), kNone));
    next_.assign(m_, std::vector<std::size_t>(set_.size(), kNone));
    range_.assign(m_, 0.0);
    distance_.assign(set_.size(), 0.0);
    std::vector<std::size_t> order = members;
    for (std::size_t obj = 0; obj < m_; ++obj) {
      order = members;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return set_[a].objectives[obj] < set_[b].objectives[obj];
      });
      for (std::size_t r = 0; r < order.size(); ++r) {
        if (r > 0) prev_[obj][order[r]] = order[r - 1];
        if (r + 1 < order.size()) next_[obj][order[r]] = order[r + 1];
      }
      if (!order.empty()) range_[obj] = set_[order.back()].objectives[obj] - set_[order.front()].objectives[obj];
    }
    queue_.clear();
    for (std::size_t i : members) {
      distance_[i] = compute(i);
      queue_.insert(key(i));
    }
  }

  const SolutionSet& set_;
  std::size_t m_;
  std::vector<bool> alive_;
  std::vector<std::vector<std::size_t>> prev_;
  std::vector<std::vector<std::size_t>> next_;
  std::vector<double> range_;
  std::vector<double> distance_;
  std::set<Key> queue_;
};

}  // namespace

std::vector<std::size_t> crowding_survivor_indices(const SolutionSet& set, std::size_t count,
                                                   const Deadline* deadline) {
  if (count == 0) throw InputError("subset size must be at least 1");
  if (count > set.size()) throw InputError("subset size exceeds the candidate count");
  std::vector<std::size_t> all(set.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  CrowdingTracker tracker(set, std::move(all));
  while (tracker.size() > count) {
    check_deadline(deadline);
    tracker.remove_most_crowded();
  }
  return tracker.survivors();
}

SolutionSet truncate_crowding(const SolutionSet& set, std::size_t s, const Deadline* deadline) {
  if (s == 0) throw InputError("archive size must be at least 1");
  if (set.size() <= s) return set;
  SolutionSet out;
  out.reserve(s);
  for (std::size_t i : crowding_survivor_indices(set, s, deadline)) out.push_back(set[i]);
  return out;
}

void truncate_in_place(SolutionSet& set, std::size_t s, TruncationKind kind, const Deadline* deadline) {
  if (s == 0) throw InputError("archive size must be at least 1");
  if (set.size() <= s) return;
  const std::vector<std::size_t> keep = kind == TruncationKind::DistanceGreedyInclusion
                                            ? dss_select_indices(set, s, deadline)
                                            : crowding_survivor_indices(set, s, deadline);
  SolutionSet out;
  out.reserve(keep.size());
  for (std::size_t i : keep) out.push_back(std::move(set[i]));
  set = std::move(out);
}

}  // namespace emoa
