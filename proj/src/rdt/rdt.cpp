#include "clup/rdt.hpp"

#include <cmath>
#include <limits>

#include "clup/numerics.hpp"

namespace clup {

bool TheoryPoint::valid() const {
  return 0.0 < beta && beta < alpha_w && alpha_w < alpha && alpha <= 1.0 && sigma > 0.0 &&
         r_sc > 0.0 && c_l1 > 0.0;
}

bool DualVariables::valid(double sigma) const {
  return c2 >= 0.0 && c2 <= 1.0 && c1 >= 0.0 && c1 <= std::sqrt(c2) && gamma1 > 0.0 && nu < 0.0 &&
         1.0 - 2.0 * c1 + c2 + sigma * sigma > 0.0;
}

namespace rdt {

using numerics::truncated_moments;

double i11(double gamma1, double nu, double cl1) {
  return gamma1 * gamma1 * truncated_moments((cl1 - nu) / gamma1).psi2;
}

double i12(double gamma1, double nu, double cl1) {
  return gamma1 * gamma1 * truncated_moments((cl1 + nu) / gamma1).psi2;
}

double di11_dnu(double gamma1, double nu, double cl1) {
  return 2.0 * gamma1 * truncated_moments((cl1 - nu) / gamma1).psi1;
}

double di12_dnu(double gamma1, double nu, double cl1) {
  return -2.0 * gamma1 * truncated_moments((cl1 + nu) / gamma1).psi1;
}

double di11_dgamma1(double gamma1, double nu, double cl1) {
  return 2.0 * gamma1 * truncated_moments((cl1 - nu) / gamma1).tail;
}

double di12_dgamma1(double gamma1, double nu, double cl1) {
  return 2.0 * gamma1 * truncated_moments((cl1 + nu) / gamma1).tail;
}

double soft_threshold_moment(double gamma1, double nu, double cl1) {
  // The integrand vanishes on [(nu - c)/g, (nu + c)/g]; integrate the two tails
  // separately (each is smooth) out to 40 standard deviations.
  auto tail_hi = [&](double h) {
    const double t = std::abs(gamma1 * h - nu) - cl1;
    return t > 0.0 ? t * t * numerics::normal_pdf(h) : 0.0;
  };
  const double lo_edge = (nu - cl1) / gamma1;
  const double hi_edge = (nu + cl1) / gamma1;
  constexpr double kFar = 40.0;
  double total = 0.0;
  if (hi_edge < kFar) total += numerics::quad_finite(tail_hi, hi_edge, std::max(kFar, hi_edge + 1.0));
  if (lo_edge > -kFar) total += numerics::quad_finite(tail_hi, std::min(-kFar, lo_edge - 1.0), lo_edge);
  return total;
}

double big_i(const TheoryPoint& tp, const DualVariables& dv) {
  const double g = dv.gamma1;
  const double c = tp.c_l1;
  return tp.beta * (i11(g, dv.nu, c) + i12(g, dv.nu, c)) +
         (1.0 - tp.beta) * (i11(g, 0.0, c) + i12(g, 0.0, c));
}

double di_dnu(const TheoryPoint& tp, const DualVariables& dv) {
  return tp.beta * (di11_dnu(dv.gamma1, dv.nu, tp.c_l1) + di12_dnu(dv.gamma1, dv.nu, tp.c_l1));
}

double di_dgamma1(const TheoryPoint& tp, const DualVariables& dv) {
  const double g = dv.gamma1;
  const double c = tp.c_l1;
  return tp.beta * (di11_dgamma1(g, dv.nu, c) + di12_dgamma1(g, dv.nu, c)) +
         (1.0 - tp.beta) * (di11_dgamma1(g, 0.0, c) + di12_dgamma1(g, 0.0, c));
}

namespace {

double residual_root(const TheoryPoint& tp, const DualVariables& dv) {
  return std::sqrt(1.0 - 2.0 * dv.c1 + dv.c2 + tp.sigma * tp.sigma);
}

}  // namespace

double xi_rd_socp(const TheoryPoint& tp, const DualVariables& dv) {
  return dv.gamma1 * std::sqrt(tp.alpha) * residual_root(tp, dv) -
         std::sqrt(dv.c2 * big_i(tp, dv)) - dv.gamma1 * tp.radius() -
         dv.nu * dv.c1 * std::sqrt(tp.beta);
}

double xi_rd(const TheoryPoint& tp, const DualVariables& dv) {
  return -std::sqrt(dv.c2) + xi_rd_socp(tp, dv);
}

double xi_rd_gamma(const TheoryPoint& tp, const DualVariables& dv, double gamma) {
  return -std::sqrt(dv.c2) + dv.gamma1 * std::sqrt(tp.alpha) * residual_root(tp, dv) -
         gamma * dv.c2 - big_i(tp, dv) / (4.0 * gamma) - dv.gamma1 * tp.radius() -
         dv.nu * dv.c1 * std::sqrt(tp.beta);
}

double d_xi_dnu(const TheoryPoint& tp, const DualVariables& dv) {
  const double I = big_i(tp, dv);
  return -std::sqrt(dv.c2) / (2.0 * std::sqrt(I)) * di_dnu(tp, dv) - dv.c1 * std::sqrt(tp.beta);
}

double d_xi_dgamma1(const TheoryPoint& tp, const DualVariables& dv) {
  const double I = big_i(tp, dv);
  return std::sqrt(tp.alpha) * residual_root(tp, dv) - tp.radius() -
         std::sqrt(dv.c2) / (2.0 * std::sqrt(I)) * di_dgamma1(tp, dv);
}

double d_xi_dc1(const TheoryPoint& tp, const DualVariables& dv) {
  return -dv.gamma1 * std::sqrt(tp.alpha) / residual_root(tp, dv) - dv.nu * std::sqrt(tp.beta);
}

double d_xi_dc2(const TheoryPoint& tp, const DualVariables& dv, bool socp) {
  const double I = big_i(tp, dv);
  const double sc2 = std::sqrt(dv.c2);
  double d = dv.gamma1 * std::sqrt(tp.alpha) / (2.0 * residual_root(tp, dv)) -
             std::sqrt(I) / (2.0 * sc2);
  if (!socp) d -= 1.0 / (2.0 * sc2);
  return d;
}

}  // namespace rdt
}  // namespace clup
