#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stiefel/matcore.hpp"

namespace stiefel {

/// Time-indexed samples of a curve on St(n,k), plus optional chart data.
struct TrajectoryRecord {
  std::string method;
  double h = 0.0;
  std::size_t steps = 0;

  std::vector<double> times;
  /// Embedded n x k matrices, one per time.
  std::vector<Matrix> points;
  /// Chart phase states (q, qdot, p_q, p_qdot); empty for chart-free methods.
  std::vector<Vector> states;
  /// Discrete jet (q, qdot, qddot, q3) per time; only filled by the RK4 reference.
  std::vector<Vector> jets;

  std::size_t size() const { return times.size(); }
};

}  // namespace stiefel
