#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "clup/numerics.hpp"

namespace clup {

/// y = A x_sol + sigma v with A, v standard normal and x_sol k-sparse with
/// entries 1/sqrt(k) on a seeded random support.
///
/// Draw order from GaussianStream(seed): A row by row, then a Fisher-Yates
/// shuffle of 0..n-1 (support = first k entries, sorted), then v.
struct ProblemInstance {
  int n = 0;
  int m = 0;
  int k = 0;
  double sigma = 0.0;
  numerics::RngSeed seed;
  Eigen::MatrixXd A;
  Eigen::VectorXd x_sol;
  Eigen::VectorXd v;
  Eigen::VectorXd y;
  std::vector<int> support;

  double alpha() const { return static_cast<double>(m) / n; }
  double beta() const { return static_cast<double>(k) / n; }
};

struct Metrics {
  double c1 = 0.0;
  double c2 = 0.0;
  double delta = 0.0;
  double residual_norm = 0.0;
};

ProblemInstance generate(int n, double alpha, double beta, double sigma, numerics::RngSeed seed);

/// Same A, x_sol and v at another noise level.
ProblemInstance with_sigma(const ProblemInstance& inst, double sigma);

Metrics metrics(const ProblemInstance& inst, const Eigen::VectorXd& x_hat);

/// Little-endian binary layout: int64 n, m, k; f64 sigma; uint64 seed base, stream;
/// then A row-major, x_sol, v as f64. y is rebuilt on load.
void dump(const ProblemInstance& inst, std::ostream& out);
ProblemInstance load(std::istream& in);

}  // namespace clup
