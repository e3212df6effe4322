#pragma once

#include <chrono>
#include <optional>

#include "emoa/error.hpp"

namespace emoa {

using Clock = std::chrono::steady_clock;

/// Wall-clock limit shared by the operations of one replay.
class Deadline {
 public:
  /// A deadline that never expires.
  Deadline() = default;
  explicit Deadline(std::chrono::duration<double> budget)
      : at_(Clock::now() + std::chrono::duration_cast<Clock::duration>(budget)) {}

  [[nodiscard]] bool expired() const { return at_ && Clock::now() >= *at_; }
  void check() const {
    if (expired()) throw BudgetExceeded();
  }

 private:
  std::optional<Clock::time_point> at_;
};

inline void check_deadline(const Deadline* deadline) {
  if (deadline) deadline->check();
}

/// Accumulated wall time of one operation category.
struct OperationClock {
  Clock::duration elapsed{};
  [[nodiscard]] double seconds() const { return std::chrono::duration<double>(elapsed).count(); }
};

/// Adds the lifetime of the scope to an OperationClock (no-op on nullptr).
class ScopedTimer {
 public:
  explicit ScopedTimer(OperationClock* clock) : clock_(clock), start_(clock ? Clock::now() : Clock::time_point{}) {}
  ~ScopedTimer() {
    if (clock_) clock_->elapsed += Clock::now() - start_;
  }
  ScopedTimer(const ScopedTimer&) = delete;
  ScopedTimer& operator=(const ScopedTimer&) = delete;

 private:
  OperationClock* clock_;
  Clock::time_point start_;
};

}  // namespace emoa
