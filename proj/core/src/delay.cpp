#include "plate/delay.hpp"

#include <stdexcept>

namespace plate {

DelayBuffer::DelayBuffer(const FemSystem& sys, int m, double dt, const HistoryFn& f0,
                         const NodalField& v0)
    : m_(m), dt_(dt), base_(-m) {
  if (m < 1) throw std::invalid_argument("DelayBuffer: m must be at least 1");
  const double fd = 1e-6 * sys.mesh().L;
  const NodalField zero(sys.n_free(), 0.0);
  for (long j = -m; j < 0; ++j) {
    const double tau = j * dt;
    NodalField v = f0 ? sys.interpolate(
                            [&](double x) { return f0(x, tau); },
                            [&](double x) {
                              return (f0(x + fd, tau) - f0(x - fd, tau)) / (2.0 * fd);
                            })
                      : zero;
    const double norm = sys.mass_norm2(v);
    ring_.push_back({std::move(v), zero, norm});
    running_sum_ += norm;
  }
  ring_.push_back({v0, zero, sys.mass_norm2(v0)});
}

void DelayBuffer::set_initial_acceleration(const NodalField& a0) {
  ring_.back().a = a0;
}

const DelayBuffer::Entry& DelayBuffer::entry(long level) const {
  const long idx = level - base_;
  if (idx < 0 || idx >= static_cast<long>(ring_.size()))
    throw std::out_of_range("DelayBuffer: level " + std::to_string(level) +
                            " outside stored window");
  return ring_[static_cast<std::size_t>(idx)];
}

NodalField DelayBuffer::delayed_velocity(long n) const {
  const long k = n + 1 - m_;
  if (k <= 0) return entry(k).v;
  const Entry& prev = entry(k - 1);
  const Entry& cur = entry(k);
  NodalField out(prev.v.size());
  const double half = 0.5 * dt_;
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = prev.v[i] + half * (prev.a[i] + cur.a[i]);
  return out;
}

const NodalField& DelayBuffer::velocity_at_level(long level) const {
  return entry(level).v;
}

void DelayBuffer::push(const NodalField& v, const NodalField& a, double m_norm) {
  if (v.size() != ring_.back().v.size())
    throw std::invalid_argument("DelayBuffer: dimension mismatch on push");
  running_sum_ += ring_.back().norm;  // previous newest enters the window
  ring_.push_back({v, a, m_norm});
  running_sum_ -= ring_.front().norm;
  ring_.pop_front();
  ++base_;
  if (++push_count_ % 1000 == 0) running_sum_ = recompute_sum();
}

double DelayBuffer::recompute_sum() const {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < ring_.size(); ++i) s += ring_[i].norm;
  return s;
}

}  // namespace plate
