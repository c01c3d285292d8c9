#include <doctest.h>

#include <cmath>
#include <numeric>

#include <boost/math/special_functions/erf.hpp>

#include "clup/error.hpp"
#include "clup/numerics.hpp"
#include "../oracles.hpp"

using namespace clup;
using namespace clup::numerics;

TEST_SUITE("numerics") {

TEST_CASE("erf and erfc basics") {
  CHECK(numerics::erf(0.0) == 0.0);
  CHECK(numerics::erfc(0.0) == 1.0);
  CHECK(numerics::erf(0.6707) == doctest::Approx(oracle::erf_series(0.6707)).epsilon(1e-13));
  for (double x = -6.0; x <= 6.0; x += 0.37) {
    CHECK(numerics::erf(x) == doctest::Approx(std::erf(x)).epsilon(1e-14));
    CHECK(numerics::erfc(x) == doctest::Approx(std::erfc(x)).epsilon(1e-13));
  }
  CHECK(numerics::erfc(25.0) == doctest::Approx(std::erfc(25.0)).epsilon(1e-12));
}

TEST_CASE("erf_inv") {
  CHECK(erf_inv(0.0) == 0.0);
  CHECK(std::abs(erf_inv(0.65672) - 0.6707) < 1e-3);
  CHECK(std::abs(kSqrt2 * erf_inv((1.0 - 0.45) / (1.0 - 0.1625)) - 0.9485) < 1e-3);
  for (double p = -0.999999; p < 1.0; p += 0.0731) {
    const double x = erf_inv(p);
    CHECK(numerics::erf(x) == doctest::Approx(p).epsilon(1e-14));
    CHECK(x == doctest::Approx(boost::math::erf_inv(p)).epsilon(1e-13));
    // bisection on std::erf resolves x only to eps / erf'(x)
    CHECK(std::abs(x - oracle::erf_inv_bisect(p)) <= 1e-15 * std::exp(x * x) + 1e-13);
  }
  CHECK(erf_inv(1.0 - 1e-15) == doctest::Approx(boost::math::erf_inv(1.0 - 1e-15)).epsilon(1e-10));
  CHECK_THROWS_AS(erf_inv(1.0), Error);
  CHECK_THROWS_AS(erf_inv(-1.5), Error);
}

TEST_CASE("normal helpers and truncated moments") {
  CHECK(normal_pdf(0.0) == doctest::Approx(kInvSqrt2Pi));
  CHECK(normal_tail(0.0) == doctest::Approx(0.5));
  for (double a : {-8.0, -3.0, -0.5, 0.0, 0.7, 2.0, 5.0, 9.0}) {
    const auto t = truncated_moments(a);
    CHECK(t.tail == doctest::Approx(0.5 * std::erfc(a / kSqrt2)).epsilon(1e-13));
    CHECK(t.psi1 == doctest::Approx(oracle::gauss_expect([a](double h) { return std::max(h - a, 0.0); }, {a}))
                        .epsilon(1e-10));
    CHECK(t.psi2 == doctest::Approx(oracle::gauss_expect(
                                        [a](double h) { return std::pow(std::max(h - a, 0.0), 2); }, {a}))
                        .epsilon(1e-10));
  }
  // deep tail keeps relative precision: psi2(a) ~ 2 phi(a) / a^3 (1 - 6/a^2 + ...)
  const double a = 30.0;
  const auto t = truncated_moments(a);
  CHECK(t.psi2 > 0.0);
  CHECK(t.psi2 / (2.0 * normal_pdf(a) / (a * a * a)) == doctest::Approx(1.0 - 6.0 / (a * a)).epsilon(2e-4));
}

TEST_CASE("bracketed roots") {
  CHECK(root_bracketed([](double x) { return x * x - 2.0; }, {1.0, 2.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(root_bracketed([](double x) { return x - 0.3; }, {0.0, 1.0}) - 0.3) < 1e-12);
  CHECK_THROWS_AS(root_bracketed([](double x) { return x * x + 1.0; }, {-1.0, 2.0}), Error);
  try {
    root_bracketed([](double x) { return x * x + 1.0; }, {-1.0, 2.0});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoSignChange);
  }
  int calls = 0;
  const double x = root_bracketed(
      [&](double x) {
        ++calls;
        return x - 0.3;
      },
      {0.0, 1.0}, {1e-15, 200, 0.1});
  CHECK(std::abs(x - 0.3) <= 0.1);
  CHECK(calls <= 3);
}

TEST_CASE("Newton systems") {
  const auto affine = solve_system([](const Eigen::VectorXd& x) { return Eigen::VectorXd(x.array() - 3.0); },
                                   Eigen::VectorXd::Zero(1));
  CHECK(affine.x[0] == doctest::Approx(3.0));
  CHECK(affine.iterations <= 2);

  auto circle = [](const Eigen::VectorXd& v) {
    Eigen::VectorXd f(2);
    f << v[0] * v[0] + v[1] * v[1] - 1.0, v[0] - v[1];
    return f;
  };
  Eigen::VectorXd x0(2);
  x0 << 1.0, 0.3;
  const auto r = solve_system(circle, x0);
  CHECK(std::abs(r.x[0] - 1.0 / std::sqrt(2.0)) < 1e-9);
  CHECK(std::abs(r.x[1] - 1.0 / std::sqrt(2.0)) < 1e-9);
  NewtonOptions central;
  central.differences = Differences::Central;
  CHECK(std::abs(solve_system(circle, x0, central).x[0] - 1.0 / std::sqrt(2.0)) < 1e-9);

  auto no_root = [](const Eigen::VectorXd& v) { return Eigen::VectorXd::Constant(1, v[0] * v[0] + 1.0); };
  CHECK_THROWS_AS(solve_system(no_root, Eigen::VectorXd::Constant(1, 0.5)), Error);
}

TEST_CASE("Marchenko-Pastur moments by endpoint quadrature") {
  for (double lam : {0.1, 0.325, 0.9}) {
    const double lo = std::pow(1.0 - std::sqrt(lam), 2), hi = std::pow(1.0 + std::sqrt(lam), 2);
    const double c = 1.0 / (2.0 * kPi * lam);
    CHECK(std::abs(quad_sqrt_endpoints([c](double x) { return c / x; }, lo, hi) - 1.0) < 1e-9);
    CHECK(std::abs(quad_sqrt_endpoints([c](double) { return c; }, lo, hi) - 1.0) < 1e-9);
    CHECK(std::abs(quad_sqrt_endpoints([c](double x) { return c / (x * x); }, lo, hi) - 1.0 / (1.0 - lam)) < 1e-8);
  }
  CHECK(quad_finite([](double x) { return std::exp(x); }, 0.0, 1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
}

TEST_CASE("Gaussian stream") {
  const auto a = gaussian_stream({42, 3}, 1000);
  const auto b = gaussian_stream({42, 3}, 1000);
  const auto c = gaussian_stream({42, 4}, 1000);
  CHECK(a == b);
  CHECK(a != c);

  const std::size_t N = 1000000;
  const auto big = gaussian_stream({7, 0}, N);
  const double mean = std::accumulate(big.begin(), big.end(), 0.0) / N;
  double var = 0.0;
  for (double x : big) var += (x - mean) * (x - mean);
  var /= N - 1;
  CHECK(std::abs(mean) < 0.004);
  CHECK(std::abs(var - 1.0) < 0.006);

  GaussianStream g({1, 1});
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) ++hist[g.uniform_index(7)];
  for (int h : hist) CHECK(std::abs(h - 10000) < 500);
  CHECK(g.uniform_index(1) == 0);
}

}
