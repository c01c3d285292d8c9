#pragma once

#include <optional>

#include <Eigen/Dense>

#include "clup/rdt.hpp"

namespace clup::interval {

struct IntervalResult {
  double xi_ub = 0.0;
  double delta_lb = 0.0;
  double delta_ub = 0.0;
  int crossings = 0;  // level-set points found on grid edges
};

struct IntervalOptions {
  int grid = 200;          // nodes per axis over [0, 1]^2
  int c1_scan = 21;        // coarse c1 points for the outer minimisation
  double c1_halfwidth = 0.03;
};

/// Inner maximum over (gamma1, nu) of xi_rd at fixed (c1, c2).
struct InnerMax {
  double value = 0.0;
  Eigen::Vector2d u;  // (log gamma1, nu * sigma) at the maximiser
};

/// Returns nullopt when the stationarity system has no interior solution
/// reachable from `u0` (the maximum is then treated as +infinity).
std::optional<InnerMax> max_over_duals(const TheoryPoint& tp, double c1, double c2,
                                       const Eigen::Vector2d& u0);

double xi_upper(const TheoryPoint& tp, const IntervalOptions& opt = {});

IntervalResult delta_interval(const TheoryPoint& tp, const IntervalOptions& opt = {});

}  // namespace clup::interval
