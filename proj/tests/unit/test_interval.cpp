#include <doctest.h>

#include <cmath>

#include "clup/interval.hpp"
#include "clup/rdt.hpp"
#include "clup/theory.hpp"

using namespace clup;

namespace {

TheoryPoint point(double inv_sigma) {
  TheoryPoint tp;
  tp.alpha_w = theory::phase_transition_alpha_w(tp.beta);
  tp.sigma = 1.0 / inv_sigma;
  tp.r_sc = 2.0;
  tp.c_l1 = 4.5;
  return tp;
}

}  // namespace

TEST_SUITE("interval") {

TEST_CASE("inner maximum at the stationary point") {
  const TheoryPoint tp = point(10);
  const auto s = theory::solve_stationary(tp);
  const Eigen::Vector2d u0(std::log(s.dv.gamma1 * 1.1), s.dv.nu * tp.sigma * 0.9);
  const auto m = interval::max_over_duals(tp, s.dv.c1, s.dv.c2, u0);
  REQUIRE(m.has_value());
  CHECK(m->value == doctest::Approx(s.xi).epsilon(1e-9));
  CHECK(std::exp(m->u[0]) == doctest::Approx(s.dv.gamma1).epsilon(1e-6));
  CHECK(m->u[1] / tp.sigma == doctest::Approx(s.dv.nu).epsilon(1e-6));

  // the maximiser dominates nearby dual choices
  DualVariables d = s.dv;
  d.gamma1 = std::exp(m->u[0]) * 1.05;
  CHECK(rdt::xi_rd(tp, d) <= m->value);
  d.gamma1 = std::exp(m->u[0]);
  d.nu = m->u[1] / tp.sigma * 1.05;
  CHECK(rdt::xi_rd(tp, d) <= m->value);
}

TEST_CASE("upper bound on the objective") {
  const TheoryPoint tp = point(10);
  const double xi_star = theory::solve_stationary(tp).xi;
  const double ub = interval::xi_upper(tp);
  CHECK(ub >= xi_star);
  CHECK(ub - xi_star < 5e-3);
  CHECK(interval::xi_upper(tp) == ub);
}

TEST_CASE("delta interval on a coarse grid") {
  const TheoryPoint tp = point(12);
  const double d = theory::solve_stationary(tp).delta;
  interval::IntervalOptions opt;
  opt.grid = 80;
  const auto r = interval::delta_interval(tp, opt);
  CHECK(r.crossings > 0);
  CHECK(r.delta_lb <= d);
  CHECK(d <= r.delta_ub);
  CHECK(r.delta_ub - r.delta_lb < 0.05);
  CHECK(r.xi_ub == doctest::Approx(interval::xi_upper(tp)).epsilon(1e-12));
}

}
