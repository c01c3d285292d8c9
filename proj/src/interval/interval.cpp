#include "clup/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "clup/error.hpp"
#include "clup/numerics.hpp"
#include "clup/theory.hpp"

namespace clup::interval {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kBrentBits = 40;

DualVariables duals(const TheoryPoint& tp, double c1, double c2, const Eigen::Vector2d& u) {
  return {c1, c2, std::exp(u[0]), u[1] / tp.sigma};
}

struct Center {
  double c1;
  double c2;
  Eigen::Vector2d u;
  double xi;
};

Center stationary_center(const TheoryPoint& tp) {
  const auto sol = theory::solve_stationary(tp, theory::Model::Clup);
  return {sol.dv.c1, sol.dv.c2, {std::log(sol.dv.gamma1), sol.dv.nu * tp.sigma}, sol.xi};
}

/// g(c1, c2) with a warm start that follows successful evaluations.
class LevelFunction {
 public:
  LevelFunction(const TheoryPoint& tp, Eigen::Vector2d u0) : tp_(tp), u_(std::move(u0)) {}

  double operator()(double c1, double c2) {
    if (c1 < 0.0 || c2 < 0.0 || c2 > 1.0 || c1 > std::sqrt(c2)) return kInf;
    const auto m = max_over_duals(tp_, c1, c2, u_);
    if (!m) return kInf;
    u_ = m->u;
    return m->value;
  }

  const Eigen::Vector2d& warm() const { return u_; }
  void set_warm(const Eigen::Vector2d& u) { u_ = u; }

 private:
  TheoryPoint tp_;
  Eigen::Vector2d u_;
};

struct Outer {
  double xi = kInf;
  double c2f = 0.0;
};

/// For fixed c1: c2f = argmin_c2 (g + sqrt(c2)); returns xi at (c1, c2f).
Outer outer_at(LevelFunction& g, double c1, double c2_center) {
  const double lo = std::max(c1 * c1, c2_center - 0.15);
  const double hi = std::min(1.0, c2_center + 0.15);
  if (!(lo < hi)) return {};
  const Eigen::Vector2d start = g.warm();
  auto h = [&](double c2) {
    const double v = g(c1, c2);
    return std::isfinite(v) ? v + std::sqrt(c2) : 1e6;
  };
  std::uintmax_t it = 200;
  const auto r = boost::math::tools::brent_find_minima(h, lo, hi, kBrentBits, it);
  if (r.second >= 1e6) {
    g.set_warm(start);
    return {};
  }
  return {r.second - std::sqrt(r.first), r.first};
}

double xi_upper_from(const TheoryPoint& tp, const Center& ctr, const IntervalOptions& opt) {
  LevelFunction g(tp, ctr.u);
  const int n = std::max(3, opt.c1_scan);
  std::vector<double> c1s(n), vals(n);
  int best = -1;
  for (int i = 0; i < n; ++i) {
    c1s[i] = ctr.c1 - opt.c1_halfwidth + 2.0 * opt.c1_halfwidth * i / (n - 1);
    g.set_warm(ctr.u);
    vals[i] = outer_at(g, c1s[i], ctr.c2).xi;
    if (std::isfinite(vals[i]) && (best < 0 || vals[i] < vals[best])) best = i;
  }
  if (best < 0) throw Error(ErrorKind::InnerInfeasible, "outer problem has no finite value");
  const double lo = c1s[std::max(0, best - 1)];
  const double hi = c1s[std::min(n - 1, best + 1)];
  auto f = [&](double c1) {
    g.set_warm(ctr.u);
    const double v = outer_at(g, c1, ctr.c2).xi;
    return std::isfinite(v) ? v : 1e6;
  };
  std::uintmax_t it = 200;
  const auto r = boost::math::tools::brent_find_minima(f, lo, hi, kBrentBits, it);
  return std::min(r.second, vals[best]);
}

struct Crossing {
  double c1;
  double c2;
  double delta;
};

double delta_of(double c1, double c2) { return std::sqrt(std::max(0.0, 1.0 - 2.0 * c1 + c2)); }

/// Point on the level set along the ray from the center at angle theta.
std::optional<Crossing> radial_crossing(LevelFunction& g, const Center& ctr, double xi_ub,
                                        double theta, double rho_guess) {
  const double ct = std::cos(theta), st = std::sin(theta);
  auto f = [&](double rho) {
    const double v = g(ctr.c1 + rho * ct, ctr.c2 + rho * st);
    return std::isfinite(v) ? v - xi_ub : 1.0;
  };
  g.set_warm(ctr.u);
  double hi = rho_guess;
  for (int k = 0; k < 40 && f(hi) < 0.0; ++k) hi *= 1.5;
  double lo = 0.0;
  try {
    const double rho = numerics::root_bracketed(f, {lo, hi}, {1e-12, 200});
    const double c1 = ctr.c1 + rho * ct, c2 = ctr.c2 + rho * st;
    return Crossing{c1, c2, delta_of(c1, c2)};
  } catch (const Error&) {
    return std::nullopt;
  }
}

struct Window {
  double c1_lo, c1_hi, c2_lo, c2_hi;
};

struct Scan {
  std::vector<Crossing> cross;
  std::vector<Eigen::Vector2d> below;  // nodes with g < xi_ub
};

/// Level-set crossings of g = xi_ub on the edges of an n x n grid over `w`.
Scan scan_window(const TheoryPoint& tp, const Center& ctr, double xi_ub, const Window& w, int n) {
  n = std::max(3, n);
  const double h1 = (w.c1_hi - w.c1_lo) / (n - 1);
  const double h2 = (w.c2_hi - w.c2_lo) / (n - 1);
  std::vector<double> gv(static_cast<std::size_t>(n) * n, kInf);
  std::vector<Eigen::Vector2d> uv(static_cast<std::size_t>(n) * n, ctr.u);
  auto at = [n](int i, int j) { return static_cast<std::size_t>(i) * n + j; };
  auto c1_of = [&](int i) { return w.c1_lo + i * h1; };
  auto c2_of = [&](int j) { return w.c2_lo + j * h2; };

  Scan out;
  // Warm starts continue along each row; every row restarts from the stationary duals.
  LevelFunction g(tp, ctr.u);
  for (int i = 0; i < n; ++i) {
    bool any = false;
    for (int j = 0; j < n; ++j) {
      if (c1_of(i) > std::sqrt(c2_of(j))) continue;
      if (!any) g.set_warm(ctr.u);
      const double v = g(c1_of(i), c2_of(j));
      gv[at(i, j)] = v;
      any = std::isfinite(v);
      if (!any) continue;
      uv[at(i, j)] = g.warm();
      if (v < xi_ub) out.below.emplace_back(c1_of(i), c2_of(j));
    }
  }

  auto polish = [&](double a1, double a2, double b1, double b2, const Eigen::Vector2d& u) {
    LevelFunction lg(tp, u);
    auto f = [&](double t) {
      lg.set_warm(u);
      const double v = lg(a1 + t * (b1 - a1), a2 + t * (b2 - a2));
      return std::isfinite(v) ? v - xi_ub : 1.0;
    };
    try {
      const double t = numerics::root_bracketed(f, {0.0, 1.0}, {1e-12, 200});
      const double c1 = a1 + t * (b1 - a1), c2 = a2 + t * (b2 - a2);
      out.cross.push_back({c1, c2, delta_of(c1, c2)});
    } catch (const Error&) {
    }
  };
  auto sign_change = [&](double a, double b) {
    return std::isfinite(a) && std::isfinite(b) && (a - xi_ub) * (b - xi_ub) < 0.0;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = gv[at(i, j)];
      if (j + 1 < n && sign_change(v, gv[at(i, j + 1)])) {
        polish(c1_of(i), c2_of(j), c1_of(i), c2_of(j + 1), uv[at(i, j)]);
      }
      if (i + 1 < n && sign_change(v, gv[at(i + 1, j)])) {
        polish(c1_of(i), c2_of(j), c1_of(i + 1), c2_of(j), uv[at(i, j)]);
      }
    }
  }
  return out;
}

}  // namespace

std::optional<InnerMax> max_over_duals(const TheoryPoint& tp, double c1, double c2,
                                       const Eigen::Vector2d& u0) {
  const double s = tp.sigma;
  auto F = [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
    if (!(u[1] < 0.0) || !std::isfinite(u[0]) || std::abs(u[0]) > 50.0) {
      return Eigen::VectorXd::Constant(2, kInf);
    }
    const DualVariables dv = duals(tp, c1, c2, Eigen::Vector2d(u[0], u[1]));
    Eigen::VectorXd r(2);
    r << rdt::d_xi_dnu(tp, dv) / s, rdt::d_xi_dgamma1(tp, dv) / s;
    return r;
  };
  numerics::NewtonOptions opt;
  opt.tol = 1e-10;
  opt.max_iter = 60;
  for (auto scheme : {numerics::Differences::Forward, numerics::Differences::Central}) {
    opt.differences = scheme;
    opt.fd_rel_step = scheme == numerics::Differences::Forward ? 1e-7 : 1e-5;
    try {
      const auto res = numerics::solve_system(F, Eigen::VectorXd(u0), opt);
      const Eigen::Vector2d u(res.x[0], res.x[1]);
      return InnerMax{rdt::xi_rd(tp, duals(tp, c1, c2, u)), u};
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

double xi_upper(const TheoryPoint& tp, const IntervalOptions& opt) {
  return xi_upper_from(tp, stationary_center(tp), opt);
}

IntervalResult delta_interval(const TheoryPoint& tp, const IntervalOptions& opt) {
  const Center ctr = stationary_center(tp);
  IntervalResult out;
  out.xi_ub = xi_upper_from(tp, ctr, opt);
  const double xi_ub = out.xi_ub;

  const Window full{0.0, 1.0, 0.0, 1.0};
  Scan scan = scan_window(tp, ctr, xi_ub, full, opt.grid);
  // The sublevel set shrinks with sigma; the second pass resolves it on a
  // window fitted around the nodes below xi_ub.
  const double h = (full.c1_hi - full.c1_lo) / (std::max(3, opt.grid) - 1);
  Window zoom{ctr.c1 - 2.0 * h, ctr.c1 + 2.0 * h, ctr.c2 - 2.0 * h, ctr.c2 + 2.0 * h};
  for (const auto& p : scan.below) {
    zoom.c1_lo = std::min(zoom.c1_lo, p[0] - 2.0 * h);
    zoom.c1_hi = std::max(zoom.c1_hi, p[0] + 2.0 * h);
    zoom.c2_lo = std::min(zoom.c2_lo, p[1] - 2.0 * h);
    zoom.c2_hi = std::max(zoom.c2_hi, p[1] + 2.0 * h);
  }
  zoom.c1_lo = std::max(0.0, zoom.c1_lo);
  zoom.c2_lo = std::max(0.0, zoom.c2_lo);
  zoom.c1_hi = std::min(1.0, zoom.c1_hi);
  zoom.c2_hi = std::min(1.0, zoom.c2_hi);
  Scan fine = scan_window(tp, ctr, xi_ub, zoom, opt.grid);
  std::vector<Crossing> cross = std::move(scan.cross);
  cross.insert(cross.end(), fine.cross.begin(), fine.cross.end());
  const double hz = std::max(zoom.c1_hi - zoom.c1_lo, zoom.c2_hi - zoom.c2_lo) / (std::max(3, opt.grid) - 1);

  out.crossings = static_cast<int>(cross.size());
  if (cross.empty()) throw Error(ErrorKind::EmptyLevelSet, "no level-set crossing on the grid");

  auto lo_it = std::min_element(cross.begin(), cross.end(),
                                [](const Crossing& a, const Crossing& b) { return a.delta < b.delta; });
  auto hi_it = std::max_element(cross.begin(), cross.end(),
                                [](const Crossing& a, const Crossing& b) { return a.delta < b.delta; });
  out.delta_lb = lo_it->delta;
  out.delta_ub = hi_it->delta;

  // Between grid lines the extremes of delta on the curve are refined along
  // the angular parametrisation about the stationary point.
  auto refine = [&](const Crossing& c0, double sign) {
    const double dx = c0.c1 - ctr.c1, dy = c0.c2 - ctr.c2;
    const double rho0 = std::hypot(dx, dy);
    if (rho0 <= 0.0) return c0.delta;
    const double th0 = std::atan2(dy, dx);
    const double dth = std::min(0.5, 3.0 * hz / rho0);
    LevelFunction lg(tp, ctr.u);
    auto f = [&](double th) {
      const auto c = radial_crossing(lg, ctr, xi_ub, th, rho0);
      return c ? sign * c->delta : 1e6;
    };
    std::uintmax_t it = 100;
    const auto r = boost::math::tools::brent_find_minima(f, th0 - dth, th0 + dth, kBrentBits, it);
    return r.second < 1e5 ? sign * r.second : c0.delta;
  };
  out.delta_lb = std::min(out.delta_lb, refine(*lo_it, 1.0));
  out.delta_ub = std::max(out.delta_ub, refine(*hi_it, -1.0));
  return out;
}

}  // namespace clup::interval
