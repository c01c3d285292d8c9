#include "clup/instances.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>

#include "clup/error.hpp"

namespace clup {

namespace {

template <class T>
void put(std::ostream& out, T v) {
  static_assert(sizeof(T) == 8);
  std::uint64_t u;
  std::memcpy(&u, &v, 8);
  if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap64(u);
  char b[8];
  std::memcpy(b, &u, 8);
  out.write(b, 8);
}

template <class T>
T get(std::istream& in) {
  char b[8];
  if (!in.read(b, 8)) throw Error(ErrorKind::Io, "truncated instance file");
  std::uint64_t u;
  std::memcpy(&u, b, 8);
  if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap64(u);
  T v;
  std::memcpy(&v, &u, 8);
  return v;
}

void finish(ProblemInstance& p) {
  p.support.clear();
  for (int i = 0; i < p.n; ++i) {
    if (p.x_sol[i] != 0.0) p.support.push_back(i);
  }
  p.y = p.A * p.x_sol + p.sigma * p.v;
}

}  // namespace

ProblemInstance generate(int n, double alpha, double beta, double sigma, numerics::RngSeed seed) {
  if (n < 10) throw Error(ErrorKind::Dimension, "n must be at least 10");
  if (!(0.0 < beta && beta < alpha && alpha <= 1.0)) {
    throw Error(ErrorKind::Domain, "requires 0 < beta < alpha <= 1");
  }
  if (!(sigma >= 0.0)) throw Error(ErrorKind::Domain, "sigma must be non-negative");
  ProblemInstance p;
  p.n = n;
  p.m = static_cast<int>(std::lround(alpha * n));
  p.k = static_cast<int>(std::lround(beta * n));
  if (p.k == 0) throw Error(ErrorKind::Dimension, "round(beta n) = 0");
  p.sigma = sigma;
  p.seed = seed;

  numerics::GaussianStream g(seed);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> a(p.m, n);
  g.fill({a.data(), static_cast<std::size_t>(a.size())});
  p.A = a;

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[g.uniform_index(static_cast<std::uint64_t>(i) + 1)]);
  }
  p.x_sol = Eigen::VectorXd::Zero(n);
  const double val = 1.0 / std::sqrt(static_cast<double>(p.k));
  for (int i = 0; i < p.k; ++i) p.x_sol[perm[i]] = val;

  p.v.resize(p.m);
  g.fill({p.v.data(), static_cast<std::size_t>(p.m)});
  finish(p);
  return p;
}

ProblemInstance with_sigma(const ProblemInstance& inst, double sigma) {
  if (!(sigma >= 0.0)) throw Error(ErrorKind::Domain, "sigma must be non-negative");
  ProblemInstance p = inst;
  p.sigma = sigma;
  p.y = p.A * p.x_sol + sigma * p.v;
  return p;
}

Metrics metrics(const ProblemInstance& inst, const Eigen::VectorXd& x_hat) {
  if (x_hat.size() != inst.n) throw Error(ErrorKind::Dimension, "x_hat has wrong length");
  Metrics r;
  r.c1 = inst.x_sol.dot(x_hat);
  r.c2 = x_hat.squaredNorm();
  r.delta = (x_hat - inst.x_sol).norm();
  r.residual_norm = (inst.y - inst.A * x_hat).norm();
  return r;
}

void dump(const ProblemInstance& p, std::ostream& out) {
  put<std::int64_t>(out, p.n);
  put<std::int64_t>(out, p.m);
  put<std::int64_t>(out, p.k);
  put<double>(out, p.sigma);
  put<std::uint64_t>(out, p.seed.base);
  put<std::uint64_t>(out, p.seed.stream);
  for (int i = 0; i < p.m; ++i) {
    for (int j = 0; j < p.n; ++j) put<double>(out, p.A(i, j));
  }
  for (int j = 0; j < p.n; ++j) put<double>(out, p.x_sol[j]);
  for (int i = 0; i < p.m; ++i) put<double>(out, p.v[i]);
  if (!out) throw Error(ErrorKind::Io, "instance write failed");
}

ProblemInstance load(std::istream& in) {
  ProblemInstance p;
  const auto n = get<std::int64_t>(in);
  const auto m = get<std::int64_t>(in);
  const auto k = get<std::int64_t>(in);
  if (n < 1 || m < 1 || k < 1 || k > n || n > (1 << 20) || m > (1 << 20)) {
    throw Error(ErrorKind::Io, "corrupt instance header");
  }
  p.n = static_cast<int>(n);
  p.m = static_cast<int>(m);
  p.k = static_cast<int>(k);
  p.sigma = get<double>(in);
  p.seed.base = get<std::uint64_t>(in);
  p.seed.stream = get<std::uint64_t>(in);
  p.A.resize(p.m, p.n);
  for (int i = 0; i < p.m; ++i) {
    for (int j = 0; j < p.n; ++j) p.A(i, j) = get<double>(in);
  }
  p.x_sol.resize(p.n);
  for (int j = 0; j < p.n; ++j) p.x_sol[j] = get<double>(in);
  p.v.resize(p.m);
  for (int i = 0; i < p.m; ++i) p.v[i] = get<double>(in);
  finish(p);
  return p;
}

}  // namespace clup
