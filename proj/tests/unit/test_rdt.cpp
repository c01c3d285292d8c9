#include <doctest.h>

#include <cmath>
#include <random>

#include "clup/rdt.hpp"
#include "clup/theory.hpp"
#include "../properties.hpp"

using namespace clup;
using namespace clup::rdt;


TEST_SUITE("rdt") {

TEST_CASE("i11 and i12 closed forms") {
  CHECK(i11(1.0, 0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(i11(1.0, 0.0, 50.0) < 1e-300);
  const double q = oracle::gauss_expect(
      [](double h) {
        const double e = 2.0 * h - 0.5;
        return e > 0.0 ? e * e : 0.0;
      },
      {0.25});
  CHECK(std::abs(i11(2.0, 0.5, 1.0) - q) < 1e-10);
  for (double g : {0.3, 1.0, 2.7}) {
    for (double c : {0.0, 0.4, 3.0}) {
      CHECK(std::abs(i11(g, 0.0, c) - i12(g, 0.0, c)) <= 1e-14 * std::max(1.0, i11(g, 0.0, c)));
      CHECK(i11(g, 1.3, c) == doctest::Approx(i12(g, -1.3, c)).epsilon(1e-14));
    }
  }
}

TEST_CASE("soft-threshold moment") {
  CHECK(soft_threshold_moment(1.7, 0.0, 0.0) == doctest::Approx(1.7 * 1.7).epsilon(1e-12));
  CHECK(soft_threshold_moment(1.0, 0.0, 50.0) == 0.0);
  CHECK(std::abs(soft_threshold_moment(2.0, 0.5, 1.0) - (i11(2.0, 0.5, 1.0) + i12(2.0, 0.5, 1.0))) < 1e-9);
  CHECK(std::abs(soft_threshold_moment(2.0, 0.5, 1.0) - oracle::soft_threshold_moment(2.0, 0.5, 1.0)) < 1e-10);
}

TEST_CASE("I11 + I12 matches the soft-threshold oracle on 1000 random points") {
  CHECK(props::moment_mismatches(1000, 1e-8) == 0);
}

TEST_CASE("big I") {
  TheoryPoint tp;
  DualVariables dv{0.9, 0.85, 1.3, -2.0};
  const double c = tp.c_l1;
  const double expect = tp.beta * oracle::soft_threshold_moment(1.3, -2.0, c) +
                        (1.0 - tp.beta) * oracle::soft_threshold_moment(1.3, 0.0, c);
  CHECK(std::abs(big_i(tp, dv) - expect) < 1e-9);
  tp.beta = 0.0;
  CHECK(big_i(tp, dv) == doctest::Approx(i11(1.3, 0.0, c) + i12(1.3, 0.0, c)).epsilon(1e-14));
  // at nu = 0 both branches share one threshold
  tp = TheoryPoint{};
  dv.nu = 0.0;
  CHECK(di_dgamma1(tp, dv) == doctest::Approx(2.0 * 1.3 * std::erfc(c / (std::sqrt(2.0) * 1.3))).epsilon(1e-12));
}

TEST_CASE("partials match central finite differences on 100 random points") {
  std::vector<std::string> log;
  CHECK(props::partial_mismatches(100, 1e-6, &log) == 0);
  for (const auto& line : log) MESSAGE(line);
}

TEST_CASE("gamma elimination identity") {
  CHECK(props::gamma_identity_error(100) < 1e-10);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto s = props::random_point(rng);
    CHECK(xi_rd_socp(s.tp, s.dv) == doctest::Approx(xi_rd(s.tp, s.dv) + std::sqrt(s.dv.c2)).epsilon(1e-14));
  }
}

TEST_CASE("xi at printed stationary points") {
  TheoryPoint tp;
  tp.alpha_w = theory::phase_transition_alpha_w(tp.beta);
  tp.sigma = 0.1;
  tp.r_sc = 2.0;
  tp.c_l1 = 4.22;
  const auto s = theory::solve_stationary(tp);
  CHECK(xi_rd(tp, s.dv) == doctest::Approx(s.xi).epsilon(1e-12));
  CHECK(std::abs(d_xi_dnu(tp, s.dv)) < 1e-7);
  CHECK(std::abs(d_xi_dgamma1(tp, s.dv)) < 1e-7);

  tp.r_sc = 2.2777;
  tp.c_l1 = 2.6269;
  const auto t = theory::solve_stationary(tp);
  CHECK(std::abs(t.xi - 0.0636) < 2e-3);
}

}
