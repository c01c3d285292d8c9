#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "clup/error.hpp"
#include "clup/instances.hpp"

using namespace clup;

TEST_SUITE("instances") {

TEST_CASE("dimensions and signal") {
  const auto p = generate(2000, 0.5, 0.1625, 0.1, {1, 0});
  CHECK(p.m == 1000);
  CHECK(p.k == 325);
  CHECK(p.A.rows() == 1000);
  CHECK(p.A.cols() == 2000);
  CHECK(std::abs(p.x_sol.norm() - 1.0) < 1e-12);
  CHECK(p.support.size() == 325u);
  CHECK(std::is_sorted(p.support.begin(), p.support.end()));
  int nnz = 0;
  for (int j = 0; j < p.n; ++j) nnz += p.x_sol[j] != 0.0;
  CHECK(nnz == 325);
  for (int j : p.support) CHECK(p.x_sol[j] == doctest::Approx(1.0 / std::sqrt(325.0)));
  CHECK((p.y - (p.A * p.x_sol + 0.1 * p.v)).norm() == 0.0);
  CHECK(p.alpha() == 0.5);
  CHECK(p.beta() == 0.1625);
}

TEST_CASE("rounding of m and k") {
  const auto p = generate(101, 0.5, 0.1625, 0.1, {1, 0});
  CHECK(p.m == 51);
  CHECK(p.k == 16);
}

TEST_CASE("determinism and seed separation") {
  const auto a = generate(200, 0.5, 0.1625, 0.1, {9, 2});
  const auto b = generate(200, 0.5, 0.1625, 0.1, {9, 2});
  const auto c = generate(200, 0.5, 0.1625, 0.1, {9, 3});
  CHECK(a.A == b.A);
  CHECK(a.x_sol == b.x_sol);
  CHECK(a.v == b.v);
  CHECK(a.support == b.support);
  CHECK(a.A != c.A);
}

TEST_CASE("draw order") {
  const auto p = generate(20, 0.5, 0.25, 0.0, {4, 4});
  numerics::GaussianStream g({4, 4});
  for (int i = 0; i < p.m; ++i) {
    for (int j = 0; j < p.n; ++j) REQUIRE(p.A(i, j) == g.next());
  }
}

TEST_CASE("noise level changes keep the draw") {
  const auto a = generate(200, 0.5, 0.1625, 0.1, {9, 2});
  const auto b = with_sigma(a, 0.05);
  CHECK(b.A == a.A);
  CHECK(b.v == a.v);
  CHECK(b.sigma == 0.05);
  CHECK((b.y - (b.A * b.x_sol + 0.05 * b.v)).norm() == 0.0);
  CHECK_THROWS_AS(with_sigma(a, -1.0), Error);
}

TEST_CASE("metrics") {
  const auto p = generate(200, 0.5, 0.1625, 0.1, {2, 0});
  auto m = metrics(p, p.x_sol);
  CHECK(m.c1 == doctest::Approx(1.0));
  CHECK(m.c2 == doctest::Approx(1.0));
  CHECK(m.delta == 0.0);
  m = metrics(p, Eigen::VectorXd::Zero(p.n));
  CHECK(m.c1 == 0.0);
  CHECK(m.c2 == 0.0);
  CHECK(m.delta == doctest::Approx(1.0));
  CHECK(m.residual_norm == doctest::Approx(p.y.norm()));
  const Eigen::VectorXd x = Eigen::VectorXd::Random(p.n) * 0.1 + p.x_sol;
  m = metrics(p, x);
  CHECK(std::abs(m.delta * m.delta - (1.0 - 2.0 * m.c1 + m.c2)) < 1e-10);
  CHECK_THROWS_AS(metrics(p, Eigen::VectorXd::Zero(3)), Error);
}

TEST_CASE("binary round trip") {
  const auto p = generate(60, 0.5, 0.2, 0.07, {123, 456});
  std::stringstream ss;
  dump(p, ss);
  const auto q = load(ss);
  CHECK(q.n == p.n);
  CHECK(q.m == p.m);
  CHECK(q.k == p.k);
  CHECK(q.sigma == p.sigma);
  CHECK(q.seed.base == 123u);
  CHECK(q.seed.stream == 456u);
  CHECK(q.A == p.A);
  CHECK(q.x_sol == p.x_sol);
  CHECK(q.y == p.y);
  CHECK(q.support == p.support);
  std::stringstream truncated(ss.str().substr(0, 40));
  std::stringstream full;
  dump(p, full);
  std::stringstream cut(full.str().substr(0, full.str().size() / 2));
  CHECK_THROWS_AS(load(cut), Error);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(generate(5, 0.5, 0.1625, 0.1, {}), Error);
  CHECK_THROWS_AS(generate(100, 0.5, 0.6, 0.1, {}), Error);
  CHECK_THROWS_AS(generate(100, 0.5, 0.1, -0.1, {}), Error);
  try {
    generate(10, 0.5, 0.01, 0.1, {});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Dimension);
  }
}

}
