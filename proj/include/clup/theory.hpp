#pragma once

#include <array>
#include <optional>
#include <vector>

#include "clup/rdt.hpp"

namespace clup::theory {

enum class Model { Clup, Socp };

/// Admissible region for roots. `Strict` enforces 0 <= c2 <= 1; the relaxed
/// form drops the upper cap, which the small-noise expansion crosses at
/// O(sigma^2) for some knob values.
enum class Bounds { Strict, AllowC2AboveOne };

struct StationarySolution {
  DualVariables dv;
  double xi = 0.0;
  double delta = 0.0;
  double residual = 0.0;  // max |.| of the four stationarity equations
};

/// sigma-rescaled quantities of the small-noise analysis.
struct LimitAux {
  double c1s = 0.0;   // (1 - c1) / sigma^2
  double c2s = 0.0;   // (1 - c2) / sigma^2
  double nu_s = 0.0;  // nu * sigma
  double cl1s = 0.0;  // (c_l1 sqrt(beta) - 1) / sigma
  double F = 0.0;
  double D = 0.0;
  double A_lim = 0.0;  // beta gamma1^2 + F
};

struct IdealMlTheory {
  double lambda_sp = 0.0;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double delta_over_sigma = 0.0;
};

struct LimitKnobs {
  double r_sc_opt = 0.0;
  double c_l1_opt = 0.0;
  double delta_ratio = 0.0;
};

struct TuneOptions {
  double r_sc_lo = 1.1;
  double r_sc_hi = 3.5;
  double c_hi = 8.0;
  double coarse_step = 0.05;
  double fine_step = 1e-4;
};

struct TuneResult {
  double r_sc = 0.0;
  double c_l1 = 0.0;
  StationarySolution sol;
  int grid_points = 0;
  int grid_failures = 0;
};

/// Left-hand side minus one of the weak-threshold equation.
double phase_transition_residual(double alpha_w, double beta);
double phase_transition_alpha_w(double beta);

/// sqrt(2) erfinv((1 - alpha_w)/(1 - beta)).
double plain_cl1(double alpha_w, double beta);
double plain_worst_mse(double alpha, double alpha_w, double sigma);

/// Residuals of the four stationarity equations at dv.
std::array<double, 4> stationary_residuals(const TheoryPoint& tp, const DualVariables& dv,
                                           Model model);

/// Stationary point at tp. Without `warm`, the root is tracked in sigma from
/// the small-noise seed; with `warm`, Newton starts from it directly.
StationarySolution solve_stationary(const TheoryPoint& tp, Model model = Model::Clup,
                                    const std::optional<DualVariables>& warm = std::nullopt,
                                    Bounds bounds = Bounds::Strict);

/// Tracks the stationary branch of tp.sigma to each sigma in `targets`
/// (any order); results follow the order of `targets`.
std::vector<StationarySolution> continue_in_sigma(const TheoryPoint& tp, Model model,
                                                  const StationarySolution& start,
                                                  const std::vector<double>& targets,
                                                  Bounds bounds = Bounds::Strict);

TuneResult tune_very_ultimate(double alpha, double beta, double sigma, const TuneOptions& opt = {});

LimitKnobs sigma0_limits(double alpha, double beta, double alpha_w);

LimitAux limit_aux(const TheoryPoint& tp, const DualVariables& dv);

/// lim delta/sigma as sigma -> 0 at fixed knobs, by Richardson extrapolation
/// of delta/sigma at sigma = 1e-2 and 1e-3.
double limit_mse_ratio(double alpha, double beta, double r_sc, double c_l1);

IdealMlTheory ideal_ml_theory(double alpha, double beta);

}  // namespace clup::theory
