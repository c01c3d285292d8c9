#pragma once

#include <vector>

#include <Eigen/Dense>

#include "clup/instances.hpp"
#include "clup/numerics.hpp"

namespace clup::solvers {

/// Knobs of the large-scale contraction. gamma1_hat and c2_hat are the values of a
/// StationarySolution; c_l1_theory is the scaled TheoryPoint value. At size n the
/// iteration uses c_l1_theory / sqrt(n) and gamma1_hat / sqrt(n).
struct ClupParams {
  double r_sc = 2.0;
  double c_l1_theory = 4.5;
  double gamma1_hat = 1.0;
  double c2_hat = 1.0;
  double c_q2_init = 0.0;  // 0 selects 7 sqrt(n)
  double c_q2_growth = 1.02;
  int c_q2_period = 50;
  int max_iter = 3000;
  double conv_tol = 1e-6;
  int trace_stride = 0;  // 0 disables the trace
  double alpha_w = 0.0;  // 0 selects the phase transition at k/n
  numerics::RngSeed seed;
};

struct TracePoint {
  int iteration = 0;
  double c1 = 0.0;
  double c2 = 0.0;
  double residual_norm = 0.0;
  double xi_ls = 0.0;
};

struct ClupResult {
  Eigen::VectorXd x_hat;
  int iterations = 0;
  bool converged = false;
  double last_step = 0.0;  // relative change of the final iteration
  long matvecs = 0;        // n x n products performed inside the loop
  double max_inner_excess = 0.0;  // basic engine: max over steps of ||y - A x|| - r
  std::vector<TracePoint> trace;
};

/// sigma sqrt((alpha - alpha_w) n) at the instance's dimensions.
double r_socp(const ProblemInstance& inst, double alpha_w = 0.0);

/// A^T A via a symmetric rank update.
Eigen::MatrixXd gram(const Eigen::MatrixXd& A);

/// x <- [c_q2 x - c sign(x) sqrt(c2) r + g sqrt(c2) (A^T y - A^T A x)] / (c_q2 - r)
/// with one n x n product per iteration; c_q2 grows geometrically by period.
ClupResult clup_largescale(const ProblemInstance& inst, const ClupParams& p);
ClupResult clup_largescale(const ProblemInstance& inst, const Eigen::MatrixXd& AtA, const ClupParams& p);

/// Stationarity residual of the contraction's fixed-point equation,
/// -x r + c sign(x) sqrt(c2) r - g sqrt(c2) A^T (y - A x), with the same scaling.
/// Entries with |x_i| <= zero_tol are measured against the subdifferential of |.| at 0.
double fixed_point_residual(const ProblemInstance& inst, const ClupParams& p, const Eigen::VectorXd& x,
                            double zero_tol = 0.0);

/// Outer iteration with an exact inner convex solve and normalisation.
ClupResult clup_basic(const ProblemInstance& inst, double r_sc, double c_l1_theory, int max_outer,
                      numerics::RngSeed seed = {}, double alpha_w = 0.0);

struct ProxOptions {
  double tol = 1e-10;      // relative step of the proximal iteration
  int max_iter = 200000;
  double constraint_tol = 1e-6;  // relative, on ||y - A x|| = r
};

/// argmin -a^T x + c ||x||_1 s.t. ||y - A x|| <= r by penalty continuation.
Eigen::VectorXd socp_linear(const ProblemInstance& inst, const Eigen::VectorXd& a, double c, double r,
                            const ProxOptions& opt = {});

/// argmin ||y - A x|| + c ||x||_1.
Eigen::VectorXd lasso_solve(const ProblemInstance& inst, double c, const ProxOptions& opt = {});

/// Least squares on the true support.
Eigen::VectorXd ideal_ml_estimate(const ProblemInstance& inst);

}  // namespace clup::solvers
