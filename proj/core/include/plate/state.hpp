#pragma once

#include <string>

#include "plate/fem.hpp"

namespace plate {

/// Nodal kinematics at one time level.
struct State {
  NodalField q;    // displacement
  NodalField qd;   // velocity
  NodalField qdd;  // acceleration
  long n = 0;      // step index
  double t = 0.0;  // n * dt
};

enum class VerdictKind { Completed, BlewUp, Failed };

struct Verdict {
  VerdictKind kind = VerdictKind::Completed;
  double t = 0.0;          // blow-up/failure time when applicable
  std::string reason;      // failure detail

  bool completed() const { return kind == VerdictKind::Completed; }
};

const char* to_string(VerdictKind k);

/// Nodal displacement profile kept for output.
struct Snapshot {
  double t = 0.0;
  std::vector<double> values;  // one per mesh node, clamped ends zero
};

}  // namespace plate
