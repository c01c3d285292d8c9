#pragma once

#include <optional>

#include <Eigen/Dense>

#include "clup/theory.hpp"

namespace clup::theory::detail {

/// Unknowns (log gamma1, nu * sigma); c2 and c1 follow in closed form from the
/// two algebraic stationarity equations.
struct Reduced {
  Eigen::Vector2d f;  // (dxi/dnu, dxi/dgamma1) / sigma
  DualVariables dv;
  double delta2 = 0.0;
};

Reduced reduce(const TheoryPoint& tp, Model model, const Eigen::Vector2d& u);
bool admissible(const Reduced& r, Bounds bounds = Bounds::Strict);
std::optional<Eigen::Vector2d> newton(const TheoryPoint& tp, Model model, const Eigen::Vector2d& u0);
Eigen::Vector2d to_reduced(const DualVariables& dv, double sigma);
StationarySolution finish(const TheoryPoint& tp, Model model, const Reduced& r);
std::optional<Eigen::Vector2d> seed_scan(const TheoryPoint& tp, Model model, Bounds bounds);
Eigen::Vector2d track(TheoryPoint tp, Model model, Eigen::Vector2d u, double from, double to,
                      Bounds bounds);

}  // namespace clup::theory::detail
