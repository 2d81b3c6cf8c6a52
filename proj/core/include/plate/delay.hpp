#pragma once

#include <deque>
#include <functional>

#include "plate/fem.hpp"

namespace plate {

/// Past velocity (x, tau), tau in (-s, 0]; drives the delayed feedback before
/// computed levels exist.
using HistoryFn = std::function<double(double x, double tau)>;

/// Ring of the last m+1 (velocity, acceleration) pairs plus the window of
/// mass-norm squares entering the delay part of the discrete energy.
class DelayBuffer {
 public:
  /// Pre-fills levels -m..-1 with interpolants of f0 (slope DOFs by centered
  /// differences, accelerations zero) and level 0 with v0. The level-0
  /// acceleration is supplied once the consistent start has been solved.
  DelayBuffer(const FemSystem& sys, int m, double dt, const HistoryFn& f0,
              const NodalField& v0);

  void set_initial_acceleration(const NodalField& a0);

  /// Velocity at level n+1-m for the advance n -> n+1. Reconstructs
  /// v^{n-m} + dt/2 (a^{n-m} + a^{n+1-m}) from stored levels; history levels
  /// (n+1-m <= 0) are returned directly.
  NodalField delayed_velocity(long n) const;

  /// Direct access for levels still in the ring (used for the t = 0 start).
  const NodalField& velocity_at_level(long level) const;

  /// Appends level newest+1 and retires the oldest; m_norm is v^T M v of v.
  void push(const NodalField& v, const NodalField& a, double m_norm);

  /// Sum of the m norm entries at levels newest-m .. newest-1.
  double running_sum() const { return running_sum_; }

  /// Fresh summation over the stored window (drift check).
  double recompute_sum() const;

  int m() const { return m_; }
  long newest_level() const { return base_ + m_; }

 private:
  struct Entry {
    NodalField v;
    NodalField a;
    double norm = 0.0;
  };

  const Entry& entry(long level) const;

  int m_ = 0;
  double dt_ = 0.0;
  long base_ = 0;  // absolute level of the oldest stored entry
  std::deque<Entry> ring_;
  double running_sum_ = 0.0;
  long push_count_ = 0;
};

}  // namespace plate
