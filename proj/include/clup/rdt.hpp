#pragma once

#include <cmath>

namespace clup {

/// Macroscopic problem description.
struct TheoryPoint {
  double alpha = 0.5;
  double beta = 0.1625;
  double sigma = 0.1;
  double alpha_w = 0.45;
  double r_sc = 2.0;
  double c_l1 = 4.5;

  /// Scaled radius r = r_sc * sigma * sqrt(alpha - alpha_w).
  double radius() const { return r_sc * sigma * std::sqrt(alpha - alpha_w); }
  bool valid() const;
};

struct DualVariables {
  double c1 = 0.0;
  double c2 = 0.0;
  double gamma1 = 1.0;
  double nu = -1.0;

  bool valid(double sigma) const;
};

namespace rdt {

/// E[(g h - (c - nu))^2 1{g h > c - nu}], h standard normal.
double i11(double gamma1, double nu, double cl1);
/// E[(g h - (c + nu))^2 1{g h > c + nu}].
double i12(double gamma1, double nu, double cl1);

double di11_dnu(double gamma1, double nu, double cl1);
double di12_dnu(double gamma1, double nu, double cl1);
double di11_dgamma1(double gamma1, double nu, double cl1);
double di12_dgamma1(double gamma1, double nu, double cl1);

/// Brute-force E[max(|g h - nu| - c, 0)^2] by quadrature over the normal density.
double soft_threshold_moment(double gamma1, double nu, double cl1);

double big_i(const TheoryPoint& tp, const DualVariables& dv);
double di_dnu(const TheoryPoint& tp, const DualVariables& dv);
double di_dgamma1(const TheoryPoint& tp, const DualVariables& dv);

double xi_rd(const TheoryPoint& tp, const DualVariables& dv);
double xi_rd_socp(const TheoryPoint& tp, const DualVariables& dv);

/// Objective before the gamma elimination; its maximum over gamma > 0 is xi_rd.
double xi_rd_gamma(const TheoryPoint& tp, const DualVariables& dv, double gamma);

double d_xi_dnu(const TheoryPoint& tp, const DualVariables& dv);
double d_xi_dgamma1(const TheoryPoint& tp, const DualVariables& dv);
double d_xi_dc1(const TheoryPoint& tp, const DualVariables& dv);
/// Partial in c2 of xi_rd; pass socp = true for the variant without -sqrt(c2).
double d_xi_dc2(const TheoryPoint& tp, const DualVariables& dv, bool socp = false);

}  // namespace rdt
}  // namespace clup
